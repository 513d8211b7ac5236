//! Fixture sets for the `verify` subcommand.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use cordiality::makerbreaker::{maker_breaker_value, MakerSemantics};
use cordiality::solver::game_number_with;
use cordiality::strategies::{
    balance_impish_strategy, small_path_strategy, path_bound, path_split_bound, path_strategy, tree_bound,
    tree_strategy, verify_bound, VerificationReport,
};
use cordiality::{emit_graph6, enumerate_trees, GameNumber, Graph, Objective, SolveOptions, Variant};

use crate::output::Row;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Exact values and scripted strategies on P3 to P6.
    SmallPaths,
    /// The path strategy against both path bounds.
    PathSplit,
    /// The tree strategy against n/2 on every tree.
    Trees,
    /// The Impish balance strategy keeps e1 - e0 >= 0 on paths.
    Balance,
    /// Maker-Breaker values against the four game numbers.
    MakerBreaker,
}

impl Fixture {
    pub fn default_max_n(self) -> usize {
        match self {
            Fixture::SmallPaths => 6,
            Fixture::PathSplit => 15,
            Fixture::Trees => 10,
            Fixture::Balance => 14,
            Fixture::MakerBreaker => 8,
        }
    }
}

/// A value computed one way compared against an expected value.
#[derive(Debug, Clone, Serialize)]
pub struct ValueCheck {
    pub graph: String,
    pub number: GameNumber,
    pub method: &'static str,
    pub expected: i32,
    pub value: i32,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Check {
    Strategy(VerificationReport),
    Value(ValueCheck),
}

impl Check {
    pub fn pass(&self) -> bool {
        match self {
            Check::Strategy(r) => r.pass,
            Check::Value(v) => v.pass,
        }
    }
}

impl Row for Check {
    fn header() -> &'static [&'static str] {
        &["graph", "check", "claimed", "observed", "pass"]
    }

    fn cells(&self) -> Vec<String> {
        match self {
            Check::Strategy(r) => vec![
                r.graph.clone(),
                r.strategy.clone(),
                r.claimed_bound.to_string(),
                r.worst_case.to_string(),
                r.pass.to_string(),
            ],
            Check::Value(v) => vec![
                v.graph.clone(),
                format!("{}:{}", v.method, v.number.name()),
                v.expected.to_string(),
                v.value.to_string(),
                v.pass.to_string(),
            ],
        }
    }
}

type Job = Box<dyn Fn() -> Result<Check, CliError> + Send + Sync>;

fn strategy_job(
    g: Graph,
    variant: Variant,
    obj: Objective,
    bound: i32,
    make: impl Fn(&Graph) -> Result<cordiality::strategies::Strategy, CliError> + Send + Sync + 'static,
) -> Job {
    Box::new(move || {
        let s = make(&g)?;
        let r = verify_bound(&g, &s, variant, obj, bound).map_err(|e| CliError::Refused(e.to_string()))?;
        Ok(Check::Strategy(r))
    })
}

fn value_check(g: &Graph, which: GameNumber, method: &'static str, expected: i32, value: i32) -> Check {
    Check::Value(ValueCheck {
        graph: emit_graph6(g),
        number: which,
        method,
        expected,
        value,
        pass: expected == value,
    })
}

fn solver_job(g: Graph, which: GameNumber, expected: i32, opts: SolveOptions) -> Job {
    Box::new(move || {
        let value = game_number_with(&g, which, &opts.clone().auto_symmetry(&g)).map_err(refused)?;
        Ok(value_check(&g, which, "solver", expected, value))
    })
}

fn maker_breaker_job(g: Graph, which: GameNumber, opts: SolveOptions) -> Job {
    Box::new(move || {
        let game = game_number_with(&g, which, &opts.clone().auto_symmetry(&g)).map_err(refused)?;
        let mb = maker_breaker_value(&g, which.variant(), which.objective(), MakerSemantics::Exact).map_err(refused)?;
        Ok(value_check(&g, which, "maker-breaker", game, mb))
    })
}

fn refused(e: impl std::fmt::Display) -> CliError {
    CliError::Refused(e.to_string())
}

fn path(n: usize) -> Graph {
    Graph::path(n).expect("small path")
}

fn trees(n: usize) -> Result<Vec<Graph>, CliError> {
    enumerate_trees(n).map_err(refused)
}

fn jobs(fixture: Fixture, max_n: usize, opts: &SolveOptions) -> Result<Vec<Job>, CliError> {
    let mut out: Vec<Job> = Vec::new();
    match fixture {
        Fixture::SmallPaths => {
            for (n, want) in [(3, 0), (4, 1), (5, 2), (6, 1)].into_iter().filter(|&(n, _)| n <= max_n) {
                for which in [GameNumber::Cg, GameNumber::CgPrime, GameNumber::CgStar] {
                    out.push(solver_job(path(n), which, want, opts.clone()));
                    out.push(strategy_job(path(n), which.variant(), Objective::Cordiality, want, move |g| {
                        small_path_strategy(g.n(), which.variant()).map_err(|e| CliError::Input(e.to_string()))
                    }));
                }
            }
        }
        Fixture::PathSplit => {
            for n in 3..=max_n {
                let bound = path_bound(n).min(path_split_bound(n));
                out.push(strategy_job(path(n), Variant::ADMIRABLE_START, Objective::Cordiality, bound, |g| {
                    Ok(path_strategy(g.n()))
                }));
            }
        }
        Fixture::Trees => {
            for n in 2..=max_n {
                for t in trees(n)? {
                    out.push(strategy_job(t, Variant::ADMIRABLE_START, Objective::Cordiality, tree_bound(n), |g| {
                        tree_strategy(g).map_err(|e| CliError::Input(e.to_string()))
                    }));
                }
            }
        }
        Fixture::Balance => {
            for n in 2..=max_n {
                out.push(strategy_job(path(n), Variant::ADMIRABLE_START, Objective::Balance, 0, |g| {
                    Ok(balance_impish_strategy(g.n()))
                }));
            }
        }
        Fixture::MakerBreaker => {
            let mut graphs: Vec<Graph> = (1..=max_n).map(path).collect();
            for n in 1..=max_n {
                graphs.extend(trees(n)?.into_iter().filter(|t| t.path_order().is_none()));
            }
            for g in graphs {
                for which in [GameNumber::Cg, GameNumber::CgPrime, GameNumber::CgStar, GameNumber::Bg] {
                    out.push(maker_breaker_job(g.clone(), which, opts.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Runs every check of the fixture, in order.
pub fn run(fixture: Fixture, max_n: usize, opts: &SolveOptions) -> Result<Vec<Check>, CliError> {
    jobs(fixture, max_n, opts)?.par_iter().map(|job| job()).collect()
}
