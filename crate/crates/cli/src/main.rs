//! `cordiality`: solve instances, tabulate path values, run verification
//! fixtures and probe the balance game from the command line.

mod input;
mod output;
mod verify;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use cordiality::corpus::random_connected_graph;
use cordiality::makerbreaker::{export_hypergraph, maker_breaker_value, winning_family, MakerSemantics};
use cordiality::solver::{game_number_with, SolveError, SolveRecord, ABSOLUTE_MAX_N, DEFAULT_MAX_N};
use cordiality::strategies::path_bound;
use cordiality::trees::{enumerate_trees, enumerate_trees_prufer};
use cordiality::{emit_graph6, solve, GameNumber, Graph, Objective, SolveOptions, Variant};

use output::{write_rows, Format, Row};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input. Exit code 2.
    Input(String),
    /// Over a size cap. Exit code 3.
    Refused(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Refused(m) => f.write_str(m),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn from_solve(e: SolveError) -> CliError {
    match e {
        SolveError::TooLarge { .. } => CliError::Refused(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

#[derive(Parser)]
#[command(name = "cordiality", version, about = "Exact values of the cordiality and balance games on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for batch commands.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest graph to solve.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Allow --max-n above the default cap.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Args, Clone)]
struct Input {
    /// Generator spec such as path:9, star:5, cycle:6, complete:4,
    /// spider:1,1,3, trees:8 or prufer:3,3,4.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    graph: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Cordiality,
    Balance,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Cordiality => Objective::Cordiality,
            ObjectiveArg::Balance => Objective::Balance,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Exact,
    Containment,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeMethod {
    /// Leaf attachment with canonical-code dedup.
    Growth,
    /// All Prüfer sequences, deduplicated.
    Prufer,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Subcommand)]
enum Command {
    /// Solve each input graph exactly.
    Solve {
        #[command(flatten)]
        input: Input,
        /// A, I, I+pass or I+early-pass.
        #[arg(long, default_value = "A", value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Cordiality)]
        objective: ObjectiveArg,
        /// Include a principal line.
        #[arg(long)]
        line: bool,
    },
    /// The four game numbers of P_n over a range of n.
    Table {
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, default_value_t = 16)]
        to: usize,
    },
    /// Run a fixture set; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        fixture: verify::Fixture,
    },
    /// Sample random connected graphs and report the balance value.
    ProbeBalance {
        /// Vertices per graph.
        #[arg(long, default_value_t = 9)]
        n: usize,
        /// Probability of each edge beyond a random spanning tree.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Maker-Breaker view: the game value, or with --k the winning family
    /// as hypergraph text.
    Mb {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "A", value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Cordiality)]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Exact)]
        semantics: SemanticsArg,
        /// Print the winning family for this bound instead of solving.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i32>,
    },
    /// Print every tree on n vertices as graph6, one per line.
    Trees {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TreeMethod::Growth)]
        method: TreeMethod,
    },
}

fn solve_options(common: &Common) -> Result<SolveOptions, CliError> {
    let mut opts = SolveOptions::from_env();
    if let Some(n) = common.max_n {
        if n > DEFAULT_MAX_N && !common.force {
            return Err(CliError::Input(format!("--max-n {n} is above {DEFAULT_MAX_N}; add --force")));
        }
        opts.max_n = n;
    } else if common.force {
        opts.max_n = ABSOLUTE_MAX_N;
    }
    Ok(opts)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(e.to_string()))
}

impl Row for SolveRecord {
    fn header() -> &'static [&'static str] {
        &["graph", "variant", "objective", "value", "nodes"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.graph.clone(),
            self.variant.to_string(),
            self.objective.name().to_string(),
            self.value.to_string(),
            self.nodes.to_string(),
        ]
    }
}

/// One path order in the `table` report.
#[derive(Serialize)]
struct PathRow {
    n: usize,
    c_g: Option<i32>,
    #[serde(rename = "c'_g")]
    c_prime: Option<i32>,
    #[serde(rename = "c*_g")]
    c_star: Option<i32>,
    b_g: Option<i32>,
    path_bound: i32,
    bound_ok: Option<bool>,
    parity_ok: Option<bool>,
}

impl Row for PathRow {
    fn header() -> &'static [&'static str] {
        &["n", "c_g", "c'_g", "c*_g", "b_g", "path_bound", "bound_ok", "parity_ok"]
    }

    fn cells(&self) -> Vec<String> {
        fn cell<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map_or_else(|| "skipped".to_string(), T::to_string)
        }
        vec![
            self.n.to_string(),
            cell(&self.c_g),
            cell(&self.c_prime),
            cell(&self.c_star),
            cell(&self.b_g),
            self.path_bound.to_string(),
            cell(&self.bound_ok),
            cell(&self.parity_ok),
        ]
    }
}

fn path_row(n: usize, opts: &SolveOptions) -> Result<PathRow, CliError> {
    let g = Graph::path(n).map_err(|e| CliError::Refused(e.to_string()))?;
    let opts = opts.clone().auto_symmetry(&g);
    let numbers = [GameNumber::Cg, GameNumber::CgPrime, GameNumber::CgStar, GameNumber::Bg];
    let values: Result<Vec<i32>, SolveError> = numbers.iter().map(|&w| game_number_with(&g, w, &opts)).collect();
    let bound = path_bound(n);
    Ok(match values {
        Ok(v) => {
            let m = g.edge_count() as i32 % 2;
            PathRow {
                n,
                c_g: Some(v[0]),
                c_prime: Some(v[1]),
                c_star: Some(v[2]),
                b_g: Some(v[3]),
                path_bound: bound,
                bound_ok: Some(v[0] <= bound),
                parity_ok: Some(v.iter().all(|x| x.rem_euclid(2) == m)),
            }
        }
        Err(SolveError::TooLarge { .. }) => PathRow {
            n,
            c_g: None,
            c_prime: None,
            c_star: None,
            b_g: None,
            path_bound: bound,
            bound_ok: None,
            parity_ok: None,
        },
        Err(e) => return Err(from_solve(e)),
    })
}

#[derive(Serialize)]
struct ProbeRow {
    graph: String,
    b_g: i32,
    negative: bool,
}

impl Row for ProbeRow {
    fn header() -> &'static [&'static str] {
        &["graph", "b_g", "negative"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.graph.clone(), self.b_g.to_string(), self.negative.to_string()]
    }
}

#[derive(Serialize)]
struct MbRow {
    graph: String,
    variant: Variant,
    objective: Objective,
    semantics: &'static str,
    value: i32,
}

impl Row for MbRow {
    fn header() -> &'static [&'static str] {
        &["graph", "variant", "objective", "semantics", "value"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.graph.clone(),
            self.variant.to_string(),
            self.objective.name().to_string(),
            self.semantics.to_string(),
            self.value.to_string(),
        ]
    }
}

/// Runs the command and returns whether every check passed.
fn run(cli: Cli) -> Result<bool, CliError> {
    let common = &cli.common;
    let opts = solve_options(common)?;
    let pool = pool(common.jobs)?;
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Solve {
            input,
            variant,
            objective,
            line,
        } => {
            let graphs = input::load(input.graph.as_deref(), input.file.as_deref())?;
            let obj = objective.into();
            let records: Result<Vec<SolveRecord>, CliError> = pool.install(|| {
                graphs
                    .par_iter()
                    .map(|g| {
                        let o = SolveOptions {
                            principal_line: line,
                            ..opts.clone().auto_symmetry(g)
                        };
                        let r = solve(g, variant, obj, &o).map_err(from_solve)?;
                        Ok(SolveRecord::new(g, variant, obj, &r))
                    })
                    .collect()
            });
            write_rows(&records?, common.format, &mut out)?;
            Ok(true)
        }
        Command::Table { from, to } => {
            let rows: Result<Vec<PathRow>, CliError> =
                pool.install(|| (from..=to).into_par_iter().map(|n| path_row(n, &opts)).collect());
            let rows = rows?;
            write_rows(&rows, common.format, &mut out)?;
            Ok(rows.iter().all(|r| r.bound_ok != Some(false) && r.parity_ok != Some(false)))
        }
        Command::Verify { fixture } => {
            let max_n = common.max_n.unwrap_or(fixture.default_max_n());
            let checks = pool.install(|| verify::run(fixture, max_n, &opts))?;
            write_rows(&checks, common.format, &mut out)?;
            let failed = checks.iter().filter(|c| !c.pass()).count();
            eprintln!("{} checks, {failed} failed", checks.len());
            Ok(failed == 0)
        }
        Command::ProbeBalance { n, p, count, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Input(format!("--p {p} is not a probability")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let graphs: Vec<Graph> = (0..count)
                .map(|_| random_connected_graph(n, p, &mut rng).map_err(|e| CliError::Refused(e.to_string())))
                .collect::<Result<_, _>>()?;
            let rows: Result<Vec<ProbeRow>, CliError> = pool.install(|| {
                graphs
                    .par_iter()
                    .map(|g| {
                        let b = game_number_with(g, GameNumber::Bg, &opts).map_err(from_solve)?;
                        Ok(ProbeRow {
                            graph: emit_graph6(g),
                            b_g: b,
                            negative: b < 0,
                        })
                    })
                    .collect()
            });
            let rows = rows?;
            write_rows(&rows, common.format, &mut out)?;
            let negative = rows.iter().filter(|r| r.negative).count();
            eprintln!("{} graphs sampled, {negative} with negative b_g", rows.len());
            Ok(true)
        }
        Command::Mb {
            input,
            variant,
            objective,
            semantics,
            k,
        } => {
            let graphs = input::load(input.graph.as_deref(), input.file.as_deref())?;
            let obj = objective.into();
            let refused = |e: cordiality::makerbreaker::MakerBreakerError| CliError::Refused(e.to_string());
            if let Some(k) = k {
                for g in &graphs {
                    let fam = winning_family(g, k, obj).map_err(refused)?;
                    out.write_all(export_hypergraph(&fam).as_bytes())?;
                }
                return Ok(true);
            }
            let (sem, name) = match semantics {
                SemanticsArg::Exact => (MakerSemantics::Exact, "exact"),
                SemanticsArg::Containment => (MakerSemantics::Containment, "containment"),
            };
            let rows: Result<Vec<MbRow>, CliError> = pool.install(|| {
                graphs
                    .par_iter()
                    .map(|g| {
                        Ok(MbRow {
                            graph: emit_graph6(g),
                            variant,
                            objective: obj,
                            semantics: name,
                            value: maker_breaker_value(g, variant, obj, sem).map_err(refused)?,
                        })
                    })
                    .collect()
            });
            write_rows(&rows?, common.format, &mut out)?;
            Ok(true)
        }
        Command::Trees { n, method } => {
            let trees = match method {
                TreeMethod::Growth => enumerate_trees(n),
                TreeMethod::Prufer => enumerate_trees_prufer(n),
            }
            .map_err(|e| CliError::Refused(e.to_string()))?;
            for t in trees {
                writeln!(out, "{}", emit_graph6(&t))?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Refused(_) => 3,
            })
        }
    }
}
