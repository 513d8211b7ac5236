//! Free-tree utilities: Prüfer decoding, AHU canonical codes and
//! enumeration of one representative per isomorphism class.

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Graph, GraphError};

/// Largest order accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_ORDER: usize = 12;
/// Largest order accepted by [`enumerate_trees_prufer`] (n^(n-2) decodes).
pub const MAX_PRUFER_ENUMERATION_ORDER: usize = 9;

/// Canonical string of a free tree; equal iff the trees are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeCode(String);

impl TreeCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Decodes a Prüfer sequence of length `n - 2` into a labelled tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::Prufer(format!("n must be at least 2, got {n}")));
    }
    if seq.len() != n - 2 {
        return Err(GraphError::Prufer(format!(
            "length {} does not match n - 2 = {}",
            seq.len(),
            n - 2
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(GraphError::Prufer(format!("entry {bad} out of range 0..{n}")));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut pairs = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        pairs.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    pairs.push((u, v));
    Graph::from_edges(n, pairs)
}

fn rooted_code(g: &Graph, v: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&w| Some(w) != parent)
        .map(|w| rooted_code(g, w, Some(v)))
        .collect();
    children.sort_unstable();
    let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
    s.push('(');
    for c in children {
        s.push_str(&c);
    }
    s.push(')');
    s
}

/// Vertices minimising the largest component left after their removal.
pub fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let weight = |v: usize| {
        g.neighbors(v)
            .iter()
            .map(|w| g.reachable(w, crate::graph::VertexSet::singleton(v)).len())
            .max()
            .unwrap_or(0)
    };
    let weights: Vec<usize> = (0..n).map(weight).collect();
    let best = weights.iter().copied().min().unwrap_or(0);
    (0..n).filter(|&v| weights[v] == best).collect()
}

/// AHU code rooted at the centroid; with two centroids the smaller code wins.
pub fn tree_canonical_code(g: &Graph) -> Result<TreeCode, GraphError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let code = centroids(g)
        .into_iter()
        .map(|c| rooted_code(g, c, None))
        .min()
        .expect("a tree has a centroid");
    Ok(TreeCode(code))
}

fn check_range(n: usize, max: usize) -> Result<(), GraphError> {
    if n == 0 || n > max {
        Err(GraphError::EnumerationRange { n, max })
    } else {
        Ok(())
    }
}

/// One tree per isomorphism class on `n` vertices, sorted by canonical code.
///
/// Classes on `n` vertices are obtained by hanging a new leaf on every vertex
/// of every class on `n - 1` vertices; every tree has a leaf, so this reaches
/// all of them.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, GraphError> {
    check_range(n, MAX_ENUMERATION_ORDER)?;
    let mut layer: BTreeMap<TreeCode, Graph> = BTreeMap::new();
    let single = Graph::path(1)?;
    layer.insert(tree_canonical_code(&single)?, single);
    for order in 2..=n {
        let mut next = BTreeMap::new();
        for t in layer.values() {
            for v in 0..order - 1 {
                let mut pairs = t.edges().to_vec();
                pairs.push((v, order - 1));
                let grown = Graph::from_edges(order, pairs)?;
                next.entry(tree_canonical_code(&grown)?).or_insert(grown);
            }
        }
        layer = next;
    }
    Ok(layer.into_values().collect())
}

/// Same classes as [`enumerate_trees`], found by decoding every Prüfer
/// sequence and deduplicating. Only practical for small `n`.
pub fn enumerate_trees_prufer(n: usize) -> Result<Vec<Graph>, GraphError> {
    check_range(n, MAX_PRUFER_ENUMERATION_ORDER)?;
    if n == 1 {
        return Ok(vec![Graph::path(1)?]);
    }
    let mut classes: BTreeMap<TreeCode, Graph> = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let t = prufer_decode(&seq, n)?;
        classes.entry(tree_canonical_code(&t)?).or_insert(t);
        // odometer increment
        let mut i = 0;
        loop {
            if i == seq.len() {
                return Ok(classes.into_values().collect());
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_examples() {
        assert_eq!(prufer_decode(&[], 2).unwrap(), Graph::path(2).unwrap());
        let star = prufer_decode(&[1, 1], 4).unwrap();
        assert_eq!(star.degree(1), 3);
        assert_eq!(prufer_decode(&[1, 2], 4).unwrap(), Graph::path(4).unwrap());
        assert!(prufer_decode(&[1], 4).is_err());
        assert!(prufer_decode(&[4, 0], 4).is_err());
        assert!(prufer_decode(&[], 1).is_err());
    }

    #[test]
    fn canonical_code_invariance() {
        let p4 = Graph::path(4).unwrap();
        // 2-0-3-1
        let relabelled = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(tree_canonical_code(&p4).unwrap(), tree_canonical_code(&relabelled).unwrap());
        assert_ne!(
            tree_canonical_code(&p4).unwrap(),
            tree_canonical_code(&Graph::star(4).unwrap()).unwrap()
        );
        assert_eq!(tree_canonical_code(&Graph::path(1).unwrap()).unwrap().as_str(), "()");
        assert_eq!(
            tree_canonical_code(&Graph::cycle(4).unwrap()),
            Err(GraphError::NotATree)
        );
    }

    #[test]
    fn class_counts() {
        // Unlabelled free trees, OEIS A000055.
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &count) in expected.iter().enumerate() {
            let trees = enumerate_trees(i + 1).unwrap();
            assert_eq!(trees.len(), count, "n = {}", i + 1);
            assert!(trees.iter().all(|t| t.is_tree() && t.n() == i + 1));
        }
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(13).is_err());
    }

    #[test]
    fn prufer_route_agrees() {
        for n in 1..=8 {
            let a: Vec<_> = enumerate_trees(n).unwrap().iter().map(|t| tree_canonical_code(t).unwrap()).collect();
            let b: Vec<_> = enumerate_trees_prufer(n).unwrap().iter().map(|t| tree_canonical_code(t).unwrap()).collect();
            assert_eq!(a, b, "n = {n}");
        }
    }
}
