//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cordiality::makerbreaker::{maker_breaker_value, MakerSemantics};
use cordiality::solver::{solve, SolveOptions, Symmetry};
use cordiality::strategies::{
    balance_impish_strategy, find_branch, for_each_playout, path_bound, path_split_bound, path_strategy,
    shapes_matching, tree_bound, tree_strategy, worst_case_vs_optimal, BranchShape,
};
use cordiality::{
    brute_force_value, enumerate_trees, game_number, standard_corpus, CorpusEntry, GameNumber, Graph, Objective,
    Variant,
};

mod common;

type Outcome = Result<String, String>;

const NUMBERS: [GameNumber; 4] = [GameNumber::Cg, GameNumber::CgPrime, GameNumber::CgStar, GameNumber::Bg];
const CORDIALITY_NUMBERS: [GameNumber; 3] = [GameNumber::Cg, GameNumber::CgPrime, GameNumber::CgStar];

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn value(g: &Graph, which: GameNumber) -> i32 {
    let opts = SolveOptions::default().auto_symmetry(g);
    solve(g, which.variant(), which.objective(), &opts).expect("within cap").value
}

fn small_path_values() -> Outcome {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for (n, want) in [(3, 0), (4, 1), (6, 1)] {
        let g = Graph::path(n).unwrap();
        for which in CORDIALITY_NUMBERS {
            let got = game_number(&g, which).unwrap();
            if got != want {
                wrong.push(format!("{}(P{n}) = {got}, expected {want}", which.name()));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        wrong.push(format!("took {elapsed:?}"));
    }
    if wrong.is_empty() {
        return Ok(format!("P3 0, P4 1, P6 1 under every variant in {elapsed:?}"));
    }
    let p3 = Graph::path(3).unwrap();
    let early = solve(&p3, Variant::IMPISH_START_EARLY_PASS, Objective::Cordiality, &SolveOptions::default())
        .unwrap()
        .value;
    Err(format!(
        "{}; when the pass may not be spent on the last vertex the P3 value is {early}",
        wrong.join("; ")
    ))
}

fn p5_values() -> Outcome {
    // Fixture pinned by the oracle.
    const P5: i32 = 2;
    let g = Graph::path(5).unwrap();
    for which in CORDIALITY_NUMBERS {
        let s = game_number(&g, which).unwrap();
        let b = brute_force_value(&g, which.variant(), which.objective()).unwrap();
        check(s <= 2, format!("{}(P5) = {s} > 2", which.name()))?;
        check(s == b && b == P5, format!("{}(P5): solver {s}, oracle {b}, fixture {P5}", which.name()))?;
    }
    Ok(format!("P5 = {P5} under every variant, solver and oracle agree"))
}

fn p6_bad_sets() -> Outcome {
    let start = Instant::now();
    let found = common::p6_bad_sets();
    let listed = common::p6_listed_bad_sets();
    check(found == listed, format!("found {found:?}, listed {listed:?}"))?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("{} bad sets regenerated in {elapsed:?}", found.len()))
}

fn path_bounds_by_solver() -> Outcome {
    let mut row = Vec::new();
    for n in 3..=16 {
        let g = Graph::path(n).unwrap();
        let c = value(&g, GameNumber::Cg);
        check(
            c <= path_bound(n) && c <= path_split_bound(n),
            format!("c_g(P{n}) = {c}, bounds {} / {}", path_bound(n), path_split_bound(n)),
        )?;
        row.push(c.to_string());
    }
    Ok(format!("c_g(P3..P16) = {}", row.join(" ")))
}

fn path_bounds_by_strategy() -> Outcome {
    let mut row = Vec::new();
    for n in 3..=15 {
        let g = Graph::path(n).unwrap();
        let wc = worst_case_vs_optimal(&g, &path_strategy(n), Variant::ADMIRABLE_START, Objective::Cordiality)
            .map_err(|e| e.to_string())?;
        check(
            wc.value <= path_bound(n) && wc.value <= path_split_bound(n),
            format!("P{n}: worst case {} via {:?}", wc.value, wc.line),
        )?;
        row.push(wc.value.to_string());
    }
    Ok(format!("worst cases P3..P15 = {}", row.join(" ")))
}

fn tree_bound_check() -> Outcome {
    let mut count = 0;
    for n in 2..=10 {
        for t in enumerate_trees(n).unwrap() {
            let bound = tree_bound(n);
            let c = value(&t, GameNumber::Cg);
            check(c <= bound, format!("c_g = {c} > {bound} on {t:?}"))?;
            let s = tree_strategy(&t).map_err(|e| e.to_string())?;
            let wc = worst_case_vs_optimal(&t, &s, Variant::ADMIRABLE_START, Objective::Cordiality)
                .map_err(|e| e.to_string())?;
            check(wc.value <= bound, format!("strategy worst case {} > {bound} on {t:?}", wc.value))?;
            count += 1;
        }
    }
    Ok(format!("{count} trees, solver and strategy within n/2"))
}

fn branch_coverage() -> Outcome {
    let mut per_shape = [0usize; BranchShape::ALL.len()];
    for n in 4..=11 {
        for t in enumerate_trees(n).unwrap() {
            if t.max_degree() < 3 {
                check(find_branch(&t).is_err(), format!("path accepted: {t:?}"))?;
                continue;
            }
            let d = find_branch(&t).map_err(|e| format!("{e} on {t:?}"))?;
            let shapes = shapes_matching(&t, d.branch_vertices, d.attach);
            check(shapes == [d.shape], format!("{t:?}: shapes {shapes:?} for {:?}", d.shape))?;
            check(d.branch_vertices.len() % 2 == 0, "odd branch")?;
            check(d.remainder.is_tree() && d.remainder.n() + d.branch_vertices.len() == n, "bad remainder")?;
            let i = BranchShape::ALL.iter().position(|&s| s == d.shape).unwrap();
            per_shape[i] += 1;
        }
    }
    let (split, joint) = common::two_arm_winning_sets();
    let (split_listed, joint_listed) = common::two_arm_listed_sets();
    check(split == split_listed, format!("split sets {split:?}"))?;
    check(joint == joint_listed, format!("joint sets {joint:?}"))?;
    let counts: Vec<String> = BranchShape::ALL
        .iter()
        .zip(per_shape)
        .map(|(s, c)| format!("{}={c}", s.name()))
        .collect();
    Ok(format!("{}; two-arm sets 8 + 4 regenerated", counts.join(" ")))
}

fn balance_on_paths() -> Outcome {
    let mut playouts = 0u64;
    for n in 2..=14 {
        let g = Graph::path(n).unwrap();
        let b = value(&g, GameNumber::Bg);
        check(b >= 0, format!("b_g(P{n}) = {b}"))?;
        let s = balance_impish_strategy(n);
        let wc = worst_case_vs_optimal(&g, &s, Variant::ADMIRABLE_START, Objective::Balance)
            .map_err(|e| e.to_string())?;
        check(wc.value >= 0, format!("P{n}: strategy worst case {} via {:?}", wc.value, wc.line))?;
        let mut uncut = None;
        playouts += for_each_playout(&g, &s, Variant::ADMIRABLE_START, &mut |st, line, _| {
            let z = st.zero_set();
            if uncut.is_none() && z.contains(n - 2) == z.contains(n - 1) {
                uncut = Some(line.to_vec());
            }
        })
        .map_err(|e| e.to_string())?;
        check(uncut.is_none(), format!("P{n}: last edge labelled 0 after {uncut:?}"))?;
    }
    Ok(format!("b_g >= 0 and strategy >= 0 for P2..P14, last edge cut in {playouts} playouts"))
}

fn corpus_chain(corpus: &[CorpusEntry], low: GameNumber, high: GameNumber) -> Outcome {
    for e in corpus {
        let (a, b) = (value(&e.graph, low), value(&e.graph, high));
        check(a <= b, format!("{}: {} = {a} > {} = {b}", e.name, low.name(), high.name()))?;
    }
    Ok(format!("{} <= {} on {} graphs", low.name(), high.name(), corpus.len()))
}

fn maker_breaker() -> Outcome {
    let mut graphs: Vec<Graph> = (1..=12).map(|n| Graph::path(n).unwrap()).collect();
    for n in 1..=8 {
        graphs.extend(enumerate_trees(n).unwrap());
    }
    for g in &graphs {
        for which in NUMBERS {
            let want = game_number(g, which).unwrap();
            let got = maker_breaker_value(g, which.variant(), which.objective(), MakerSemantics::Exact)
                .map_err(|e| e.to_string())?;
            check(got == want, format!("{}: maker-breaker {got}, game {want} on {g:?}", which.name()))?;
        }
    }
    Ok(format!("{} graphs, all four game numbers", graphs.len()))
}

fn option_grid(g: &Graph) -> Vec<SolveOptions> {
    let mut out = Vec::new();
    for use_alpha_beta in [false, true] {
        for parallel_root in [false, true] {
            for table_capacity in [0, 1 << 20] {
                for symmetry in [Symmetry::None, Symmetry::PathReversal] {
                    if symmetry == Symmetry::PathReversal && !g.is_indexed_path() {
                        continue;
                    }
                    out.push(SolveOptions {
                        use_alpha_beta,
                        parallel_root,
                        table_capacity,
                        symmetry,
                        ..SolveOptions::default()
                    });
                }
            }
        }
    }
    out
}

fn oracle_equivalence(corpus: &[CorpusEntry]) -> Outcome {
    let mut checks = 0;
    for e in corpus.iter().filter(|e| e.graph.n() <= 8) {
        for v in Variant::ALL {
            for o in [Objective::Cordiality, Objective::Balance] {
                let want = brute_force_value(&e.graph, v, o).unwrap();
                for opts in option_grid(&e.graph) {
                    let got = solve(&e.graph, v, o, &opts).unwrap().value;
                    check(got == want, format!("{} {v} {o:?}: solver {got}, oracle {want}, {opts:?}", e.name))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} solver runs match the oracle"))
}

fn parity(corpus: &[CorpusEntry]) -> Outcome {
    for e in corpus {
        let m = e.graph.edge_count() as i32;
        for which in NUMBERS {
            let v = value(&e.graph, which);
            check(v.rem_euclid(2) == m % 2, format!("{}: {} = {v}, |E| = {m}", e.name, which.name()))?;
        }
    }
    Ok(format!("{} graphs, four numbers each", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = standard_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("small path values P3 P4 P6", Box::new(small_path_values)),
        ("P5 value at most 2, pinned", Box::new(p5_values)),
        ("P6 bad sets", Box::new(p6_bad_sets)),
        ("path bound, solver, n <= 16", Box::new(path_bounds_by_solver)),
        ("path bound, strategy, n <= 15", Box::new(path_bounds_by_strategy)),
        ("tree bound n/2, n <= 10", Box::new(tree_bound_check)),
        ("branch shapes and two-arm sets", Box::new(branch_coverage)),
        ("balance game on paths", Box::new(balance_on_paths)),
        ("b_g <= c_g on corpus", Box::new(|| corpus_chain(&corpus, GameNumber::Bg, GameNumber::Cg))),
        ("c'_g <= c*_g on corpus", Box::new(|| corpus_chain(&corpus, GameNumber::CgPrime, GameNumber::CgStar))),
        ("maker-breaker equivalence", Box::new(maker_breaker)),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("parity", Box::new(|| parity(&corpus))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({t:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({t:.2}s): {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
