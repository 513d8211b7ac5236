//! Simple undirected graphs over at most 64 vertices, backed by bitsets.
//!
//! Vertices are `0..n`. The cut arithmetic here is what every game value in
//! the crate is ultimately computed from: for a vertex set `S`, `cut` counts
//! the edges with exactly one endpoint in `S` and the signed discrepancy is
//! `2 * cut - |E|`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a path")]
    NotAPath,
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("invalid Prüfer sequence: {0}")]
    Prufer(String),
    #[error("tree enumeration supports 1 <= n <= {max}, got {n}")]
    EnumerationRange { n: usize, max: usize },
}

/// A subset of `0..64` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1u64 << v) != 0
    }

    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `0..n`.
    pub const fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    /// Smallest member, if any.
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    /// Renders 1-based names, `{v1,v3,v5}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "v{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Edge counts of the bipartition `(S, V \ S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutStats {
    /// Edges crossing the cut.
    pub cut: usize,
    /// `2 * cut - |E|`, equivalently `e1 - e0`.
    pub signed: i32,
    /// Edges with both ends on the same side (label 0).
    pub e0: usize,
    /// Edges crossing (label 1).
    pub e1: usize,
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            edges: Vec::new(),
        })
    }

    /// Builds a graph from unordered pairs. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        g.rebuild_edges();
        Ok(g)
    }

    fn rebuild_edges(&mut self) {
        self.edges.clear();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                self.edges.push((u, v));
            }
        }
    }

    /// `v0 v1 .. v(n-1)`; `path_graph(0)` is the empty graph.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star `K_{1,n-1}` centred at vertex 0.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (0, i)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            pairs.push((n - 1, 0));
        }
        Graph::from_edges(n, pairs)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Spider with centre 0 and one pendant path per entry of `legs`.
    pub fn spider(legs: &[usize]) -> Result<Self, GraphError> {
        let n = 1 + legs.iter().sum::<usize>();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut pairs = Vec::with_capacity(n);
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                pairs.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::from_edges(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Whether every member of `s` is a vertex of this graph.
    pub fn owns(&self, s: VertexSet) -> bool {
        s.is_subset(self.vertices())
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reachable(&self, start: usize, blocked: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.difference(seen).difference(blocked);
            seen = seen.union(frontier);
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reachable(0, VertexSet::EMPTY) == self.vertices()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// If this graph is a path, its vertices in order starting from the
    /// lower-indexed end. A single vertex is a path.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_tree() || self.max_degree() > 2 {
            return None;
        }
        if self.n == 1 {
            return Some(vec![0]);
        }
        let start = (0..self.n).find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < self.n {
            let next = self.adj[cur].iter().find(|&w| w != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Whether the graph is exactly the path `0-1-..-(n-1)` in index order.
    pub fn is_indexed_path(&self) -> bool {
        self.edge_count() + 1 == self.n.max(1)
            && self.edges.iter().all(|&(u, v)| v == u + 1)
    }

    /// Induced subgraph on `keep`, relabelled to `0..|keep|` in ascending
    /// order. Returns the graph and the old index of each new vertex.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.intersection(self.vertices()).to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_of[u], new_of[v]));
        let g = Graph::from_edges(old.len(), pairs).expect("induced subgraph of a valid graph");
        (g, old)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Number of edges with exactly one endpoint in `s`.
    pub fn cut(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| self.adj[v].difference(s).len())
            .sum()
    }

    pub fn cut_stats(&self, s: VertexSet) -> CutStats {
        let cut = self.cut(s);
        let m = self.edge_count();
        CutStats {
            cut,
            signed: 2 * cut as i32 - m as i32,
            e0: m - cut,
            e1: cut,
        }
    }

    /// `| |S| - |V \ S| | <= 1`.
    pub fn is_balanced_bipartition(&self, s: VertexSet) -> bool {
        let k = s.intersection(self.vertices()).len() as i64;
        (2 * k - self.n as i64).abs() <= 1
    }

    /// Whether labelling `s` with 0 and the rest with 1 is a cordial labelling.
    pub fn is_cordial_labeling(&self, s: VertexSet) -> bool {
        self.is_balanced_bipartition(s) && self.cut_stats(s).signed.abs() <= 1
    }
}
