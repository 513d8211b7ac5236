//! Named graph families, seeded random graphs and the standard test corpus.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::trees::{enumerate_trees, prufer_decode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("unknown generator `{0}` (expected path, star, cycle, complete, spider, trees or prufer)")]
    UnknownKind(String),
    #[error("generator spec `{0}` is missing `:`")]
    MissingArgument(String),
    #[error("bad number `{0}` in generator spec")]
    BadNumber(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A built-in graph generator such as `path:9` or `spider:1,1,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Star(usize),
    Cycle(usize),
    Complete(usize),
    /// Leg lengths.
    Spider(Vec<usize>),
    /// Every tree of this order up to isomorphism.
    Trees(usize),
    /// The tree with this Prüfer sequence, on `len + 2` vertices.
    Prufer(Vec<usize>),
}

fn numbers(s: &str) -> Result<Vec<usize>, SpecError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| SpecError::BadNumber(x.to_string())))
        .collect()
}

fn one(s: &str) -> Result<usize, SpecError> {
    s.trim().parse().map_err(|_| SpecError::BadNumber(s.to_string()))
}

impl FromStr for GraphSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| SpecError::MissingArgument(s.to_string()))?;
        Ok(match kind.trim() {
            "path" => GraphSpec::Path(one(arg)?),
            "star" => GraphSpec::Star(one(arg)?),
            "cycle" => GraphSpec::Cycle(one(arg)?),
            "complete" => GraphSpec::Complete(one(arg)?),
            "spider" => GraphSpec::Spider(numbers(arg)?),
            "trees" => GraphSpec::Trees(one(arg)?),
            "prufer" => GraphSpec::Prufer(numbers(arg)?),
            other => return Err(SpecError::UnknownKind(other.to_string())),
        })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self {
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Star(n) => write!(f, "star:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Spider(legs) => write!(f, "spider:{}", list(legs)),
            GraphSpec::Trees(n) => write!(f, "trees:{n}"),
            GraphSpec::Prufer(seq) => write!(f, "prufer:{}", list(seq)),
        }
    }
}

impl GraphSpec {
    /// The graphs this spec names. Only `trees:N` yields more than one.
    pub fn graphs(&self) -> Result<Vec<Graph>, SpecError> {
        Ok(match self {
            GraphSpec::Path(n) => vec![Graph::path(*n)?],
            GraphSpec::Star(n) => vec![Graph::star(*n)?],
            GraphSpec::Cycle(n) => vec![Graph::cycle(*n)?],
            GraphSpec::Complete(n) => vec![Graph::complete(*n)?],
            GraphSpec::Spider(legs) => vec![Graph::spider(legs)?],
            GraphSpec::Trees(n) => enumerate_trees(*n)?,
            GraphSpec::Prufer(seq) => vec![prufer_decode(seq, seq.len() + 2)?],
        })
    }
}

/// A random connected graph: a uniform random labelled tree plus each other
/// pair as an edge with probability `p`.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GraphError> {
    if n <= 2 {
        return Graph::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let tree = prufer_decode(&seq, n)?;
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Seed of the random part of the standard corpus.
pub const CORPUS_SEED: u64 = 0x636f_7264;

/// One named graph of the corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

/// Paths up to `max_path`, every tree up to `max_tree`, and `random` random
/// connected graphs on 3 to `max_random` vertices, drawn from `seed`.
pub fn corpus(max_path: usize, max_tree: usize, random: usize, max_random: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=max_path {
        out.push(CorpusEntry {
            name: format!("path:{n}"),
            graph: Graph::path(n).expect("small path"),
        });
    }
    for n in 1..=max_tree {
        for (i, t) in enumerate_trees(n).expect("order in range").into_iter().enumerate() {
            out.push(CorpusEntry {
                name: format!("trees:{n}#{i}"),
                graph: t,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let n = rng.gen_range(3..=max_random);
        let p = rng.gen_range(0.1..0.6);
        out.push(CorpusEntry {
            name: format!("random:{i}"),
            graph: random_connected_graph(n, p, &mut rng).expect("small graph"),
        });
    }
    out
}

/// Paths n <= 14, trees n <= 9 and 200 random connected graphs n <= 9.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    corpus(14, 9, 200, 9, CORPUS_SEED)
}
