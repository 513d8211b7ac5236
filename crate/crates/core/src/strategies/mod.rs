//! Constructive strategies for paths and trees, and a harness that measures
//! a fixed strategy against an exhaustive adversary.
//!
//! A strategy is a tree of nodes over disjoint vertex sets. Leaves are small
//! components played by a script (see [`scripts`]). An inner node splits its
//! vertices into a remainder and a branch; the Admirable version follows
//! Impish between the two, and the Impish version (balance game) answers
//! Admirable inside a two-vertex suffix.

mod branch;
mod harness;
pub mod scripts;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::game::{GameState, Move, Objective, Player, Variant};
use crate::graph::{Graph, VertexSet};

pub use branch::{
    find_branch, matches_shape, path_components, shapes_matching, BranchDecomposition, BranchError, BranchShape,
    PathComponents,
};
pub use harness::{
    for_each_playout, verify_bound, worst_case_vs_optimal, HarnessError, VerificationReport, WorstCase,
    HARNESS_MAX_N,
};
use scripts::{Component, Script};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no small-path script for {0} vertices (supported: 3 to 6)")]
    UnsupportedOrder(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error(transparent)]
    Branch(#[from] BranchError),
}

/// Where a strategy comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum Provenance {
    /// Hand rules for a path on 3 to 6 vertices.
    SmallPath(u8),
    /// Paths split into a prefix and a six-vertex suffix.
    PathSplit,
    /// Trees split into a remainder and a small branch.
    TreeBranch,
    /// Impish in the balance game on paths, pairing the last two vertices.
    BalancePair,
    /// Exact search on the whole graph.
    ExactFallback,
}

impl Provenance {
    pub fn tag(self) -> String {
        match self {
            Provenance::SmallPath(n) => format!("small-path-p{n}"),
            Provenance::PathSplit => "path-split".into(),
            Provenance::TreeBranch => "tree-branch".into(),
            Provenance::BalancePair => "balance-pair".into(),
            Provenance::ExactFallback => "exact-fallback".into(),
        }
    }
}

impl From<Provenance> for String {
    fn from(p: Provenance) -> String {
        p.tag()
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Rest,
    Branch,
}

/// Decomposition recorded at an inner node, in input-graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRecord {
    pub shape: BranchShape,
    pub roles: Vec<usize>,
    pub attach: usize,
}

#[derive(Debug, Clone)]
enum Node {
    Leaf(Component),
    Follow(Box<Follow>),
    Pair(Box<Pair>),
}

/// Admirable: open on the remainder, then follow Impish between the parts.
#[derive(Debug, Clone)]
struct Follow {
    rest: Node,
    branch: Component,
    rest_set: VertexSet,
    last: Option<(Player, Side)>,
    record: Option<BranchRecord>,
}

/// Impish: answer Admirable inside the final pair, otherwise recurse.
#[derive(Debug, Clone)]
struct Pair {
    rest: Node,
    rest_set: VertexSet,
    pair: [usize; 2],
    last: Option<(Player, Side)>,
}

impl Node {
    fn vertices(&self) -> VertexSet {
        match self {
            Node::Leaf(c) => c.vertices(),
            Node::Follow(f) => f.rest_set.union(f.branch.vertices()),
            Node::Pair(p) => p.rest_set.with(p.pair[0]).with(p.pair[1]),
        }
    }

    fn observe(&mut self, player: Player, v: usize) {
        match self {
            Node::Leaf(c) => c.observe(player, v),
            Node::Follow(f) => {
                if f.rest_set.contains(v) {
                    f.last = Some((player, Side::Rest));
                    f.rest.observe(player, v);
                } else {
                    f.last = Some((player, Side::Branch));
                    f.branch.observe(player, v);
                }
            }
            Node::Pair(p) => {
                if p.rest_set.contains(v) {
                    p.last = Some((player, Side::Rest));
                    p.rest.observe(player, v);
                } else {
                    p.last = Some((player, Side::Branch));
                }
            }
        }
    }

    fn choose(&mut self, g: &Graph, free: VertexSet) -> Move {
        match self {
            Node::Leaf(c) => c.choose(g, free),
            Node::Follow(f) => {
                let rest_free = !f.rest_set.is_disjoint(free);
                let branch_free = !f.branch.vertices().is_disjoint(free);
                let side = match f.last {
                    None => {
                        if rest_free {
                            Side::Rest
                        } else {
                            Side::Branch
                        }
                    }
                    Some((Player::Impish, s)) => {
                        let open = match s {
                            Side::Rest => rest_free,
                            Side::Branch => branch_free,
                        };
                        match (s, open) {
                            (s, true) => s,
                            (Side::Rest, false) => Side::Branch,
                            (Side::Branch, false) => Side::Rest,
                        }
                    }
                    // Impish did not answer here: a skipped turn.
                    Some((Player::Admirable, _)) => {
                        if f.branch.is_started() && branch_free || !rest_free {
                            Side::Branch
                        } else {
                            Side::Rest
                        }
                    }
                };
                match side {
                    Side::Rest => f.rest.choose(g, free),
                    Side::Branch => f.branch.choose(g, free),
                }
            }
            Node::Pair(p) => {
                let rest_free = !p.rest_set.is_disjoint(free);
                let pair_free: Vec<usize> = p.pair.iter().copied().filter(|&v| free.contains(v)).collect();
                match p.last {
                    Some((Player::Admirable, Side::Branch)) if !pair_free.is_empty() => Move::Label(pair_free[0]),
                    _ if rest_free => p.rest.choose(g, free),
                    _ => Move::Label(*pair_free.last().expect("some vertex is free")),
                }
            }
        }
    }

    fn encode(&self, out: &mut Vec<u8>) {
        let tag = |last: Option<(Player, Side)>| match last {
            None => 0,
            Some((Player::Admirable, Side::Rest)) => 1,
            Some((Player::Admirable, Side::Branch)) => 2,
            Some((Player::Impish, Side::Rest)) => 3,
            Some((Player::Impish, Side::Branch)) => 4,
        };
        match self {
            Node::Leaf(c) => c.encode(out),
            Node::Follow(f) => {
                out.push(tag(f.last));
                f.rest.encode(out);
                f.branch.encode(out);
            }
            Node::Pair(p) => {
                out.push(tag(p.last));
                p.rest.encode(out);
            }
        }
    }

    fn records(&self, out: &mut Vec<BranchRecord>) {
        if let Node::Follow(f) = self {
            if let Some(r) = &f.record {
                out.push(r.clone());
            }
            f.rest.records(out);
        }
        if let Node::Pair(p) = self {
            p.rest.records(out);
        }
    }

    fn used_fallback(&self) -> bool {
        match self {
            Node::Leaf(c) => c.used_fallback(),
            Node::Follow(f) => f.branch.used_fallback() || f.rest.used_fallback(),
            Node::Pair(p) => p.rest.used_fallback(),
        }
    }
}

/// A deterministic, stateful strategy for one player.
///
/// Feed every move of the game to [`Strategy::observe`] (including the
/// strategy's own) and ask for moves with [`Strategy::choose`]. Cloning is
/// cheap and yields an independent copy.
#[derive(Debug, Clone)]
pub struct Strategy {
    side: Player,
    provenance: Provenance,
    n: usize,
    root: Node,
}

impl Strategy {
    pub fn side(&self) -> Player {
        self.side
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The next move. `state` must be a non-terminal position with this
    /// strategy's side to move. Never passes.
    pub fn choose(&mut self, g: &Graph, state: &GameState) -> Move {
        assert_eq!(state.to_move(), self.side, "not this strategy's turn");
        assert!(!state.is_terminal(), "game is over");
        self.root.choose(g, state.unlabeled())
    }

    pub fn observe(&mut self, player: Player, mv: Move) {
        if let Move::Label(v) = mv {
            self.root.observe(player, v);
        }
    }

    /// Bytes identifying the internal state; equal bytes mean equal future
    /// behaviour from equal positions.
    pub fn encode_state(&self, out: &mut Vec<u8>) {
        self.root.encode(out);
    }

    /// Every branch split used, outermost first.
    pub fn branches(&self) -> Vec<BranchRecord> {
        let mut out = Vec::new();
        self.root.records(&mut out);
        out
    }

    /// Whether a scripted component has run out of script and asked the
    /// exact search for a move. Unscripted components do not count.
    pub fn used_fallback(&self) -> bool {
        self.root.used_fallback()
    }
}

fn admirable_leaf(roles: Vec<usize>, attach: Option<usize>, script: Script) -> Node {
    Node::Leaf(Component::new(roles, attach, script, Player::Admirable, Objective::Cordiality))
}

fn mask(roles: &[u8]) -> u32 {
    roles.iter().fold(0, |m, &r| m | 1 << r)
}

fn small_path_script(n: usize) -> Script {
    match n {
        3 => Script::TwoSet {
            x: mask(&[0, 2]),
            y: mask(&[1]),
        },
        4 => Script::TwoSet {
            x: mask(&[0, 2]),
            y: mask(&[1, 3]),
        },
        5 => Script::TwoSet {
            x: mask(&[0, 2, 4]),
            y: mask(&[1, 3]),
        },
        6 => Script::Path6,
        _ => Script::Exact,
    }
}

fn path_node(order: &[usize]) -> Node {
    let n = order.len();
    if n <= 6 {
        return admirable_leaf(order.to_vec(), None, small_path_script(n));
    }
    let rest = path_node(&order[..n - 6]);
    Node::Follow(Box::new(Follow {
        rest_set: rest.vertices(),
        rest,
        branch: Component::new(
            order[n - 6..].to_vec(),
            Some(order[n - 7]),
            Script::Path6,
            Player::Admirable,
            Objective::Cordiality,
        ),
        last: None,
        record: None,
    }))
}

/// Script order of the branch vertices for each shape.
fn branch_component(d_roles: &[usize], shape: BranchShape, attach: usize) -> Component {
    let r = d_roles;
    let (roles, script) = match shape {
        BranchShape::PendantPath4 => (r.to_vec(), small_path_script(4)),
        BranchShape::TwoLeaves => (
            r.to_vec(),
            Script::TwoSet {
                x: mask(&[0]),
                y: mask(&[1]),
            },
        ),
        BranchShape::TwoPaths2 => (
            r.to_vec(),
            Script::TwoSet {
                x: mask(&[1, 2]),
                y: mask(&[0, 3]),
            },
        ),
        // v4 - v1 - v2 - v3 is a path on four vertices.
        BranchShape::Fork => (vec![r[3], r[0], r[1], r[2]], small_path_script(4)),
        BranchShape::LeafAndPath3 => (
            r.to_vec(),
            Script::TwoSet {
                x: mask(&[0, 1]),
                y: mask(&[2, 3]),
            },
        ),
        BranchShape::TwoPaths3 => (r.to_vec(), Script::TwoArms),
        // v3 - v2 - v1 - v4 - v5 - v6 is a path on six vertices.
        BranchShape::LongFork => (vec![r[2], r[1], r[0], r[3], r[4], r[5]], Script::Path6),
    };
    Component::new(roles, Some(attach), script, Player::Admirable, Objective::Cordiality)
}

fn tree_node(t: &Graph, map: &[usize]) -> Result<Node, StrategyError> {
    if let Some(order) = t.path_order() {
        let global: Vec<usize> = order.iter().map(|&v| map[v]).collect();
        return Ok(path_node(&global));
    }
    let d = find_branch(t)?;
    let sub_map: Vec<usize> = d.remainder_map.iter().map(|&v| map[v]).collect();
    let rest = tree_node(&d.remainder, &sub_map)?;
    let roles: Vec<usize> = d.roles.iter().map(|&v| map[v]).collect();
    let attach = map[d.attach];
    Ok(Node::Follow(Box::new(Follow {
        rest_set: rest.vertices(),
        rest,
        branch: branch_component(&roles, d.shape, attach),
        last: None,
        record: Some(BranchRecord {
            shape: d.shape,
            roles,
            attach,
        }),
    })))
}

/// Admirable's hand strategy on a path of 3 to 6 vertices (indices in path
/// order). The rules read the starting player off the moves, so one
/// strategy serves every variant.
pub fn small_path_strategy(n: usize, variant: Variant) -> Result<Strategy, StrategyError> {
    if !(3..=6).contains(&n) {
        return Err(StrategyError::UnsupportedOrder(n));
    }
    let leaf = Component::new((0..n).collect(), None, small_path_script(n), Player::Admirable, Objective::Cordiality)
        .with_skips(variant.impish_pass_budget > 0);
    Ok(Strategy {
        side: Player::Admirable,
        provenance: Provenance::SmallPath(n as u8),
        n,
        root: Node::Leaf(leaf),
    })
}

/// Admirable on the index-ordered path `P_n`: the first `n - 6` vertices are
/// played recursively, the last six by the six-vertex rules, following
/// Impish between the two.
pub fn path_strategy(n: usize) -> Strategy {
    let order: Vec<usize> = (0..n).collect();
    Strategy {
        side: Player::Admirable,
        provenance: Provenance::PathSplit,
        n,
        root: path_node(&order),
    }
}

/// Admirable on any tree: repeatedly split off a small branch, paths use the
/// path strategy.
pub fn tree_strategy(t: &Graph) -> Result<Strategy, StrategyError> {
    if !t.is_tree() {
        return Err(StrategyError::NotATree);
    }
    let map: Vec<usize> = (0..t.n()).collect();
    Ok(Strategy {
        side: Player::Admirable,
        provenance: Provenance::TreeBranch,
        n: t.n(),
        root: tree_node(t, &map)?,
    })
}

/// Exact search over the whole graph, for either side. Only practical on
/// small graphs: every move re-searches the remaining game.
pub fn exact_strategy(g: &Graph, side: Player, objective: Objective, variant: Variant) -> Strategy {
    let leaf = Component::new((0..g.n()).collect(), None, Script::Exact, side, objective)
        .with_skips(variant.impish_pass_budget > 0);
    Strategy {
        side,
        provenance: Provenance::ExactFallback,
        n: g.n(),
        root: Node::Leaf(leaf),
    }
}

fn balance_node(order: &[usize]) -> Node {
    let n = order.len();
    if n <= 1 {
        return Node::Leaf(Component::new(
            order.to_vec(),
            None,
            Script::Exact,
            Player::Impish,
            Objective::Balance,
        ));
    }
    let rest = balance_node(&order[..n - 2]);
    Node::Pair(Box::new(Pair {
        rest_set: rest.vertices(),
        rest,
        pair: [order[n - 2], order[n - 1]],
        last: None,
    }))
}

/// Impish in the Admirable-start balance game on the index-ordered path
/// `P_n`: whenever Admirable labels one of the last two vertices Impish
/// takes the other, so their edge always crosses.
pub fn balance_impish_strategy(n: usize) -> Strategy {
    let order: Vec<usize> = (0..n).collect();
    Strategy {
        side: Player::Impish,
        provenance: Provenance::BalancePair,
        n,
        root: balance_node(&order),
    }
}

/// Upper bound on `c_g(P_n)` by `n mod 3`, for `n >= 3`.
pub fn path_bound(n: usize) -> i32 {
    let n = n as i32;
    match n % 3 {
        0 => (n - 3) / 3,
        1 => (n - 1) / 3,
        _ => (n + 1) / 3,
    }
}

/// The finer bound by `n mod 6` that the path split achieves, for `n >= 3`.
pub fn path_split_bound(n: usize) -> i32 {
    let q = 2 * (n / 6) as i32;
    match n % 6 {
        0 => q - 1,
        1 | 3 => q,
        2 | 4 => q + 1,
        _ => q + 2,
    }
}

/// Upper bound on `c_g(T)` for a tree on `n` vertices.
pub fn tree_bound(n: usize) -> i32 {
    (n / 2) as i32
}
