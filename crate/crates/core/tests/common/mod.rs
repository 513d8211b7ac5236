//! Set enumerations shared by the strategy tests and the acceptance run.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cordiality::{Graph, VertexSet};

pub type Triple = [usize; 3];

fn triples(list: &[Triple]) -> BTreeSet<Triple> {
    // one-based names to roles
    list.iter().map(|t| [t[0] - 1, t[1] - 1, t[2] - 1]).collect()
}

fn three_sets(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Admirable's three-sets on the two-arm branch whose discrepancy stays at
/// most two for either label of the attachment, split by whether exactly one
/// of v1, v4 (the neighbours of the attachment) is taken. Roles 0..6 are
/// v1..v6.
pub fn two_arm_winning_sets() -> (BTreeSet<Triple>, BTreeSet<Triple>) {
    // vertex 6 is the attachment
    let b = Graph::from_edges(7, [(6, 0), (0, 1), (1, 2), (6, 3), (3, 4), (4, 5)]).unwrap();
    let worst = |s: VertexSet| {
        let with_attach = s.union(VertexSet::from_iter([6]));
        [s, with_attach].map(|z| (2 * b.cut(z) as i32 - 6).abs()).into_iter().max().unwrap()
    };
    let (split, joint) = three_sets(6)
        .filter(|&t| worst(VertexSet::from_iter(t)) <= 2)
        .partition(|t| t.contains(&0) != t.contains(&3));
    (split, joint)
}

/// The two lists of winning three-sets as written for the two-arm branch.
pub fn two_arm_listed_sets() -> (BTreeSet<Triple>, BTreeSet<Triple>) {
    let split = triples(&[
        [1, 2, 5],
        [1, 2, 6],
        [1, 3, 6],
        [1, 5, 6],
        [2, 3, 4],
        [2, 4, 5],
        [3, 4, 5],
        [3, 4, 6],
    ]);
    let joint = triples(&[[1, 2, 4], [1, 4, 5], [2, 3, 6], [3, 5, 6]]);
    (split, joint)
}

/// Three-sets of P6 whose balanced cut has discrepancy at least 3.
pub fn p6_bad_sets() -> BTreeSet<Triple> {
    let g = Graph::path(6).unwrap();
    three_sets(6)
        .filter(|&t| (2 * g.cut(VertexSet::from_iter(t)) as i32 - 5).abs() >= 3)
        .collect()
}

/// The eight bad P6 labelings as listed for the small-path values.
pub fn p6_listed_bad_sets() -> BTreeSet<Triple> {
    triples(&[
        [1, 3, 5],
        [2, 4, 6],
        [1, 2, 3],
        [4, 5, 6],
        [2, 3, 5],
        [2, 4, 5],
        [1, 4, 6],
        [1, 3, 6],
    ])
}
