//! Splitting a tree into a small even branch and the remaining subtree.
//!
//! A branch is a subtree `B` sharing exactly one vertex `v` (the attachment)
//! with the remainder `T'`, with `B ∪ T' = T`. The strategy plays the
//! non-attachment vertices of `B` as a separate sub-game, so only branches
//! with 2, 4 or 6 such vertices are used.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("input is not a tree")]
    NotATree,
    #[error("input is a path; paths are split by the path strategy")]
    IsAPath,
    #[error("no branch shape applies (internal error)")]
    NoShape,
}

/// The seven branch shapes. Role names `v1, v2, ...` refer to the
/// non-attachment vertices of the branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchShape {
    /// `v - v1 - v2 - v3 - v4`, a pendant path of four vertices.
    PendantPath4,
    /// `v1` and `v2` both leaves on `v`.
    TwoLeaves,
    /// `v1 - v2 - v - v3 - v4`: two pendant paths of two vertices.
    TwoPaths2,
    /// `v - v1`, with `v1 - v2 - v3` and `v1 - v4`.
    Fork,
    /// `v - v1` a leaf, and `v - v2 - v3 - v4`.
    LeafAndPath3,
    /// `v3 - v2 - v1 - v - v4 - v5 - v6`: two pendant paths of three vertices.
    TwoPaths3,
    /// `v - v1`, with `v1 - v2 - v3` and `v1 - v4 - v5 - v6`.
    LongFork,
}

impl BranchShape {
    pub const ALL: [BranchShape; 7] = [
        BranchShape::PendantPath4,
        BranchShape::TwoLeaves,
        BranchShape::TwoPaths2,
        BranchShape::Fork,
        BranchShape::LeafAndPath3,
        BranchShape::TwoPaths3,
        BranchShape::LongFork,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BranchShape::PendantPath4 => "pendant-path4",
            BranchShape::TwoLeaves => "two-leaves",
            BranchShape::TwoPaths2 => "two-paths2",
            BranchShape::Fork => "fork",
            BranchShape::LeafAndPath3 => "leaf-and-path3",
            BranchShape::TwoPaths3 => "two-paths3",
            BranchShape::LongFork => "long-fork",
        }
    }

    /// Number of non-attachment vertices, edges among them (role pairs), and
    /// the roles adjacent to the attachment.
    pub fn template(self) -> (usize, &'static [(usize, usize)], &'static [usize]) {
        match self {
            BranchShape::PendantPath4 => (4, &[(0, 1), (1, 2), (2, 3)], &[0]),
            BranchShape::TwoLeaves => (2, &[], &[0, 1]),
            BranchShape::TwoPaths2 => (4, &[(0, 1), (2, 3)], &[1, 2]),
            BranchShape::Fork => (4, &[(0, 1), (1, 2), (0, 3)], &[0]),
            BranchShape::LeafAndPath3 => (4, &[(1, 2), (2, 3)], &[0, 1]),
            BranchShape::TwoPaths3 => (6, &[(0, 1), (1, 2), (3, 4), (4, 5)], &[0, 3]),
            BranchShape::LongFork => (6, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 5)], &[0]),
        }
    }
}

impl fmt::Display for BranchShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Components of `T - u` that are paths hanging from `u` by an endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathComponents {
    pub u: usize,
    /// Each path listed from the neighbour of `u` outwards.
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    pub shape: BranchShape,
    /// `v1, v2, ...` as vertices of the input tree.
    pub roles: Vec<usize>,
    pub attach: usize,
    /// The branch without its attachment vertex.
    pub branch_vertices: VertexSet,
    /// `T'`, relabelled to `0..n'`.
    pub remainder: Graph,
    /// `remainder_map[i]` is the input vertex for remainder vertex `i`.
    pub remainder_map: Vec<usize>,
}

/// Follows a path from `start` away from `from` while degrees stay at most 2.
fn walk(t: &Graph, from: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = t.neighbors(cur).iter().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] if t.degree(cur) <= 2 => {
                out.push(*w);
                prev = cur;
                cur = *w;
            }
            _ => return out,
        }
    }
}

/// The vertex `u` and its pendant paths used to locate a branch.
///
/// `u` is the lowest-index vertex of degree at least 3 with at most one
/// neighbouring component that contains another vertex of degree at least 3.
pub fn path_components(t: &Graph) -> Result<PathComponents, BranchError> {
    if !t.is_tree() {
        return Err(BranchError::NotATree);
    }
    let big: VertexSet = t.vertices().iter().filter(|&v| t.degree(v) >= 3).collect();
    if big.is_empty() {
        return Err(BranchError::IsAPath);
    }
    for u in big.iter() {
        let mut components = Vec::new();
        let mut heavy = 0;
        for w in t.neighbors(u).iter() {
            let comp = t.reachable(w, VertexSet::singleton(u));
            if comp.is_disjoint(big) {
                components.push(walk(t, u, w));
            } else {
                heavy += 1;
            }
        }
        if heavy <= 1 {
            return Ok(PathComponents { u, components });
        }
    }
    unreachable!("a finite tree has a leaf among its high-degree vertices")
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Finds one branch of the seven shapes, trying them in a fixed order.
pub fn find_branch(t: &Graph) -> Result<BranchDecomposition, BranchError> {
    let pc = path_components(t)?;
    let u = pc.u;
    let by_len = |len: usize| -> Vec<&Vec<usize>> {
        let mut v: Vec<&Vec<usize>> = pc.components.iter().filter(|c| c.len() == len).collect();
        v.sort_by_key(|c| sorted(c));
        v
    };

    // Pendant path of four or more: take the last four and the vertex before.
    let long: Vec<&Vec<usize>> = pc.components.iter().filter(|c| c.len() >= 4).collect();
    if !long.is_empty() {
        let best = long
            .iter()
            .map(|c| {
                let m = c.len();
                let attach = if m == 4 { u } else { c[m - 5] };
                (sorted(&c[m - 4..]), attach, c[m - 4..].to_vec())
            })
            .min()
            .expect("non-empty");
        return build(t, BranchShape::PendantPath4, best.2, best.1);
    }

    let (ones, twos, threes) = (by_len(1), by_len(2), by_len(3));
    let pair_min = |list: &[&Vec<usize>]| -> (Vec<usize>, Vec<usize>) {
        let mut best: Option<(Vec<usize>, Vec<usize>, Vec<usize>)> = None;
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let mut key: Vec<usize> = list[i].iter().chain(list[j].iter()).copied().collect();
                key.sort_unstable();
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, list[i].clone(), list[j].clone()));
                }
            }
        }
        let b = best.expect("at least two components");
        (b.1, b.2)
    };

    if ones.len() >= 2 {
        let (a, b) = pair_min(&ones);
        return build(t, BranchShape::TwoLeaves, vec![a[0], b[0]], u);
    }
    if twos.len() >= 2 {
        let (a, b) = pair_min(&twos);
        return build(t, BranchShape::TwoPaths2, vec![a[1], a[0], b[0], b[1]], u);
    }
    if threes.len() >= 2 {
        let (a, b) = pair_min(&threes);
        return build(t, BranchShape::TwoPaths3, vec![a[0], a[1], a[2], b[0], b[1], b[2]], u);
    }
    if !ones.is_empty() && !threes.is_empty() {
        let (l, p) = (ones[0], threes[0]);
        return build(t, BranchShape::LeafAndPath3, vec![l[0], p[0], p[1], p[2]], u);
    }
    // Exactly one pendant path of two vertices plus one of one or three,
    // and a single further neighbour of u.
    let others: Vec<usize> = t
        .neighbors(u)
        .iter()
        .filter(|&w| !pc.components.iter().any(|c| c[0] == w))
        .collect();
    if twos.len() == 1 && others.len() == 1 {
        let p = twos[0];
        if ones.len() == 1 && threes.is_empty() {
            return build(t, BranchShape::Fork, vec![u, p[0], p[1], ones[0][0]], others[0]);
        }
        if threes.len() == 1 && ones.is_empty() {
            let q = threes[0];
            return build(t, BranchShape::LongFork, vec![u, p[0], p[1], q[0], q[1], q[2]], others[0]);
        }
    }
    Err(BranchError::NoShape)
}

fn build(t: &Graph, shape: BranchShape, roles: Vec<usize>, attach: usize) -> Result<BranchDecomposition, BranchError> {
    let branch_vertices: VertexSet = roles.iter().copied().collect();
    let (remainder, remainder_map) = t.induced(t.vertices().difference(branch_vertices));
    let d = BranchDecomposition {
        shape,
        roles,
        attach,
        branch_vertices,
        remainder,
        remainder_map,
    };
    debug_assert!(matches_shape(t, &d.roles, d.attach, shape));
    Ok(d)
}

/// Whether `roles` and `attach` form exactly the given shape inside `t`:
/// the listed edges and no others among the roles, the listed roles and no
/// others adjacent to the attachment, and no role adjacent to anything else.
pub fn matches_shape(t: &Graph, roles: &[usize], attach: usize, shape: BranchShape) -> bool {
    let (k, edges, attached) = shape.template();
    if roles.len() != k {
        return false;
    }
    let set: VertexSet = roles.iter().copied().collect();
    if set.len() != k || set.contains(attach) {
        return false;
    }
    for i in 0..k {
        let expected_attach = attached.contains(&i);
        if t.has_edge(roles[i], attach) != expected_attach {
            return false;
        }
        let outside = t.neighbors(roles[i]).difference(set).without(attach);
        if !outside.is_empty() {
            return false;
        }
        for j in i + 1..k {
            let expected = edges.contains(&(i, j)) || edges.contains(&(j, i));
            if t.has_edge(roles[i], roles[j]) != expected {
                return false;
            }
        }
    }
    true
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every shape that the branch vertices and attachment form under some
/// assignment of roles.
pub fn shapes_matching(t: &Graph, branch: VertexSet, attach: usize) -> Vec<BranchShape> {
    let members = branch.to_vec();
    BranchShape::ALL
        .into_iter()
        .filter(|&s| {
            s.template().0 == members.len()
                && permutations(&members).iter().any(|p| matches_shape(t, p, attach, s))
        })
        .collect()
}
