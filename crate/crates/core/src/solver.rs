//! Exact game values by memoised minimax with alpha-beta pruning.
//!
//! Admirable minimises and Impish maximises the terminal score. The memo key
//! is the pair of labelled sets plus the pass count; the side to move is
//! implied. The absolute value of the cordiality objective is applied only at
//! terminals, so interior nodes are ordinary minimax.

use std::env;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameError, GameState, Move, Objective, Player, Variant};
use crate::graph::{Graph, VertexSet};
use crate::io::emit_graph6;

/// Default refusal threshold on the vertex count.
pub const DEFAULT_MAX_N: usize = 22;
/// Hard ceiling imposed by the packed 64-bit memo key.
pub const ABSOLUTE_MAX_N: usize = 31;
pub const DEFAULT_TABLE_CAPACITY: usize = 1 << 25;

pub const TABLE_CAP_ENV: &str = "CORDIALITY_TABLE_CAP";
pub const MAX_N_ENV: &str = "CORDIALITY_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {n} vertices, above the solver cap of {cap} (raise it with --force or {MAX_N_ENV})")]
    TooLarge { n: usize, cap: usize },
    #[error("path-reversal symmetry requires the path 0-1-..-(n-1)")]
    SymmetryNotApplicable,
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    #[default]
    None,
    /// Identify a position with its mirror image on an index-ordered path.
    PathReversal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub use_alpha_beta: bool,
    /// Maximum number of memo entries; 0 disables the table.
    pub table_capacity: usize,
    pub parallel_root: bool,
    pub symmetry: Symmetry,
    pub max_n: usize,
    /// Also compute the principal line.
    pub principal_line: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            use_alpha_beta: true,
            table_capacity: DEFAULT_TABLE_CAPACITY,
            parallel_root: false,
            symmetry: Symmetry::None,
            max_n: DEFAULT_MAX_N,
            principal_line: false,
        }
    }
}

impl SolveOptions {
    /// Defaults overridden by `CORDIALITY_TABLE_CAP` and `CORDIALITY_MAX_N`.
    pub fn from_env() -> Self {
        let mut opts = SolveOptions::default();
        if let Some(cap) = env::var(TABLE_CAP_ENV).ok().and_then(|s| s.parse().ok()) {
            opts.table_capacity = cap;
        }
        if let Some(max_n) = env::var(MAX_N_ENV).ok().and_then(|s| s.parse().ok()) {
            opts.max_n = max_n;
        }
        opts
    }

    /// Symmetry reduction when the graph allows it, none otherwise.
    pub fn auto_symmetry(mut self, g: &Graph) -> Self {
        self.symmetry = if g.n() > 1 && g.is_indexed_path() {
            Symmetry::PathReversal
        } else {
            Symmetry::None
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: i32,
    pub best_move: Option<Move>,
    /// Expanded (non-terminal, non-memoised) states.
    pub nodes: u64,
    pub principal_line: Option<Vec<Move>>,
}

/// The four game numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameNumber {
    #[serde(rename = "c_g")]
    Cg,
    #[serde(rename = "c'_g")]
    CgPrime,
    #[serde(rename = "c*_g")]
    CgStar,
    #[serde(rename = "b_g")]
    Bg,
}

impl GameNumber {
    pub const ALL: [GameNumber; 4] = [GameNumber::Cg, GameNumber::CgPrime, GameNumber::CgStar, GameNumber::Bg];

    pub fn variant(self) -> Variant {
        match self {
            GameNumber::Cg | GameNumber::Bg => Variant::ADMIRABLE_START,
            GameNumber::CgPrime => Variant::IMPISH_START,
            GameNumber::CgStar => Variant::IMPISH_START_PASS,
        }
    }

    pub fn objective(self) -> Objective {
        match self {
            GameNumber::Bg => Objective::Balance,
            _ => Objective::Cordiality,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameNumber::Cg => "c_g",
            GameNumber::CgPrime => "c'_g",
            GameNumber::CgStar => "c*_g",
            GameNumber::Bg => "b_g",
        }
    }
}

impl fmt::Display for GameNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameNumber {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GameNumber::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown game number {s:?}"))
    }
}

const INF: i32 = i32::MAX / 4;

#[derive(Clone, Copy)]
enum Bound {
    Exact,
    Lower,
    Upper,
}

#[derive(Clone, Copy)]
struct Entry {
    value: i32,
    bound: Bound,
}

/// One search with its own transposition table.
struct Searcher<'g> {
    g: &'g Graph,
    n: usize,
    all: u64,
    obj: Objective,
    budget: u8,
    pass_on_last: bool,
    starter: Player,
    order: Vec<usize>,
    table: FxHashMap<u64, Entry>,
    capacity: usize,
    warned: bool,
    nodes: u64,
    alpha_beta: bool,
    reversal: bool,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g Graph, variant: Variant, obj: Objective, opts: &SolveOptions) -> Self {
        let n = g.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Searcher {
            g,
            n,
            all: VertexSet::full(n).bits(),
            obj,
            budget: variant.impish_pass_budget,
            pass_on_last: variant.pass_on_last_vertex,
            starter: variant.starter,
            order,
            table: FxHashMap::default(),
            capacity: opts.table_capacity,
            warned: false,
            nodes: 0,
            alpha_beta: opts.use_alpha_beta,
            reversal: opts.symmetry == Symmetry::PathReversal,
        }
    }

    fn reverse(&self, x: u64) -> u64 {
        x.reverse_bits() >> (64 - self.n)
    }

    fn key(&self, zero: u64, one: u64, passes: u8) -> u64 {
        let pack = |z: u64, o: u64| z | (o << 31) | ((passes as u64) << 62);
        let k = pack(zero, one);
        if self.reversal {
            k.min(pack(self.reverse(zero), self.reverse(one)))
        } else {
            k
        }
    }

    fn mover(&self, zero: u64, one: u64, passes: u8) -> Player {
        let turns = zero.count_ones() + one.count_ones() + passes as u32;
        if turns % 2 == 0 {
            self.starter
        } else {
            self.starter.other()
        }
    }

    fn score(&self, zero: u64) -> i32 {
        self.obj.score(self.g.cut_stats(VertexSet::from_bits(zero)).signed)
    }

    fn store(&mut self, key: u64, entry: Entry) {
        if self.table.len() < self.capacity || self.table.contains_key(&key) {
            self.table.insert(key, entry);
        } else if !self.warned {
            self.warned = true;
            log::warn!(
                "transposition table full at {} entries; continuing without caching new positions",
                self.capacity
            );
        }
    }

    /// Fail-soft alpha-beta. Without pruning the window is ignored and every
    /// returned value is exact.
    fn search(&mut self, zero: u64, one: u64, passes: u8, mut alpha: i32, mut beta: i32) -> i32 {
        let free = self.all & !(zero | one);
        if free == 0 {
            return self.score(zero);
        }
        let key = self.key(zero, one, passes);
        if let Some(e) = self.table.get(&key).copied() {
            match e.bound {
                Bound::Exact => return e.value,
                Bound::Lower if self.alpha_beta => {
                    if e.value >= beta {
                        return e.value;
                    }
                    alpha = alpha.max(e.value);
                }
                Bound::Upper if self.alpha_beta => {
                    if e.value <= alpha {
                        return e.value;
                    }
                    beta = beta.min(e.value);
                }
                _ => {}
            }
        }
        self.nodes += 1;
        let (alpha0, beta0) = (alpha, beta);
        let best = match self.mover(zero, one, passes) {
            Player::Admirable => {
                let mut best = INF;
                for i in 0..self.order.len() {
                    let v = self.order[i];
                    if free & (1 << v) == 0 {
                        continue;
                    }
                    let val = self.search(zero | (1 << v), one, passes, alpha, beta);
                    best = best.min(val);
                    beta = beta.min(val);
                    if self.alpha_beta && alpha >= beta {
                        break;
                    }
                }
                best
            }
            Player::Impish => {
                let mut best = -INF;
                let mut cut = false;
                for i in 0..self.order.len() {
                    let v = self.order[i];
                    if free & (1 << v) == 0 {
                        continue;
                    }
                    let val = self.search(zero, one | (1 << v), passes, alpha, beta);
                    best = best.max(val);
                    alpha = alpha.max(val);
                    if self.alpha_beta && alpha >= beta {
                        cut = true;
                        break;
                    }
                }
                if !cut && passes < self.budget && (self.pass_on_last || free.count_ones() >= 2) {
                    best = best.max(self.search(zero, one, passes + 1, alpha, beta));
                }
                best
            }
        };
        let bound = if !self.alpha_beta {
            Bound::Exact
        } else if best <= alpha0 {
            Bound::Upper
        } else if best >= beta0 {
            Bound::Lower
        } else {
            Bound::Exact
        };
        self.store(key, Entry { value: best, bound });
        best
    }

    fn exact(&mut self, s: &GameState) -> i32 {
        self.search(s.zero_set().bits(), s.one_set().bits(), s.passes_used(), -INF, INF)
    }

    /// Whether the position after `mv` has value exactly `target`.
    fn child_has_value(&mut self, s: &GameState, mv: Move, target: i32) -> bool {
        let c = s.apply_unchecked(mv);
        let (z, o, p) = (c.zero_set().bits(), c.one_set().bits(), c.passes_used());
        let v = if self.alpha_beta {
            self.search(z, o, p, target - 1, target + 1)
        } else {
            self.search(z, o, p, -INF, INF)
        };
        v == target
    }

    /// Lowest-index optimal label, or `Pass` if only passing is optimal.
    fn best_move(&mut self, s: &GameState, value: i32) -> Option<Move> {
        s.legal_moves().into_iter().find(|&mv| self.child_has_value(s, mv, value))
    }

    fn principal_line(&mut self, s: &GameState, value: i32) -> Vec<Move> {
        let mut line = Vec::new();
        let mut cur = *s;
        while !cur.is_terminal() {
            let mv = self
                .best_move(&cur, value)
                .expect("some child of a solved position attains its value");
            line.push(mv);
            cur = cur.apply_unchecked(mv);
        }
        line
    }
}

fn check(g: &Graph, opts: &SolveOptions) -> Result<(), SolveError> {
    let cap = opts.max_n.min(ABSOLUTE_MAX_N);
    if g.n() > cap {
        return Err(SolveError::TooLarge { n: g.n(), cap });
    }
    if opts.symmetry == Symmetry::PathReversal && !g.is_indexed_path() {
        return Err(SolveError::SymmetryNotApplicable);
    }
    Ok(())
}

/// Value of `state` under optimal play from there on.
pub fn solve_from(
    g: &Graph,
    state: &GameState,
    obj: Objective,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    check(g, opts)?;
    if state.n() != g.n() {
        return Err(GameError::GraphMismatch {
            state: state.n(),
            graph: g.n(),
        }
        .into());
    }
    if state.is_terminal() {
        return Ok(SolveResult {
            value: state.terminal_value(g, obj)?,
            best_move: None,
            nodes: 0,
            principal_line: opts.principal_line.then(Vec::new),
        });
    }
    let variant = state.variant();
    if opts.parallel_root {
        let moves = state.legal_moves();
        let children: Vec<(Move, i32, u64)> = moves
            .par_iter()
            .map(|&mv| {
                let mut s = Searcher::new(g, variant, obj, opts);
                let v = s.exact(&state.apply_unchecked(mv));
                (mv, v, s.nodes)
            })
            .collect();
        let pick = |a: i32, b: i32| match state.to_move() {
            Player::Admirable => a.min(b),
            Player::Impish => a.max(b),
        };
        let value = children.iter().map(|c| c.1).reduce(pick).expect("non-terminal");
        let best_move = children.iter().find(|c| c.1 == value).map(|c| c.0);
        let nodes = 1 + children.iter().map(|c| c.2).sum::<u64>();
        let principal_line = if opts.principal_line {
            let mut s = Searcher::new(g, variant, obj, opts);
            Some(s.principal_line(state, value))
        } else {
            None
        };
        return Ok(SolveResult {
            value,
            best_move,
            nodes,
            principal_line,
        });
    }
    let mut s = Searcher::new(g, variant, obj, opts);
    let value = s.exact(state);
    let nodes = s.nodes;
    let best_move = s.best_move(state, value);
    let principal_line = opts.principal_line.then(|| s.principal_line(state, value));
    Ok(SolveResult {
        value,
        best_move,
        nodes,
        principal_line,
    })
}

/// Value of the game on `g` under optimal play.
pub fn solve(g: &Graph, variant: Variant, obj: Objective, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    solve_from(g, &GameState::new(g.n(), variant), obj, opts)
}

/// `c_g`, `c'_g`, `c*_g` or `b_g` of `g` with default options (symmetry on
/// when `g` is an index-ordered path).
pub fn game_number(g: &Graph, which: GameNumber) -> Result<i32, SolveError> {
    let opts = SolveOptions::from_env().auto_symmetry(g);
    game_number_with(g, which, &opts)
}

pub fn game_number_with(g: &Graph, which: GameNumber, opts: &SolveOptions) -> Result<i32, SolveError> {
    Ok(solve(g, which.variant(), which.objective(), opts)?.value)
}

/// A principal variation; replaying it reaches a terminal with the game value.
pub fn best_line(g: &Graph, variant: Variant, obj: Objective) -> Result<Vec<Move>, SolveError> {
    let opts = SolveOptions {
        principal_line: true,
        ..SolveOptions::from_env()
    };
    Ok(solve(g, variant, obj, &opts)?.principal_line.unwrap_or_default())
}

/// JSON record for one solved instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub graph: String,
    pub variant: Variant,
    pub objective: Objective,
    pub value: i32,
    pub nodes: u64,
    pub principal_line: Vec<crate::game::TranscriptMove>,
}

impl SolveRecord {
    pub fn new(g: &Graph, variant: Variant, objective: Objective, result: &SolveResult) -> SolveRecord {
        let mut state = GameState::new(g.n(), variant);
        let mut line = Vec::new();
        for &mv in result.principal_line.as_deref().unwrap_or(&[]) {
            line.push(crate::game::TranscriptMove {
                player: state.to_move(),
                mv,
            });
            state = state.apply_unchecked(mv);
        }
        SolveRecord {
            graph: emit_graph6(g),
            variant,
            objective,
            value: result.value,
            nodes: result.nodes,
            principal_line: line,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Graph {
        Graph::path(n).unwrap()
    }

    fn value(g: &Graph, v: Variant, o: Objective) -> i32 {
        solve(g, v, o, &SolveOptions::default()).unwrap().value
    }

    #[test]
    fn small_path_values() {
        assert_eq!(value(&p(3), Variant::ADMIRABLE_START, Objective::Cordiality), 0);
        for v in Variant::ALL {
            assert_eq!(value(&p(4), v, Objective::Cordiality), 1);
            assert_eq!(value(&p(6), v, Objective::Cordiality), 1);
        }
        assert_eq!(value(&p(2), Variant::ADMIRABLE_START, Objective::Balance), 1);
        assert_eq!(value(&p(0), Variant::ADMIRABLE_START, Objective::Balance), 0);
    }

    #[test]
    fn refuses_over_cap() {
        let g = p(23);
        assert_eq!(
            solve(&g, Variant::ADMIRABLE_START, Objective::Cordiality, &SolveOptions::default()),
            Err(SolveError::TooLarge { n: 23, cap: 22 })
        );
        let opts = SolveOptions {
            symmetry: Symmetry::PathReversal,
            ..SolveOptions::default()
        };
        assert_eq!(
            solve(&Graph::star(4).unwrap(), Variant::ADMIRABLE_START, Objective::Cordiality, &opts),
            Err(SolveError::SymmetryNotApplicable)
        );
    }

    #[test]
    fn p3_best_move_is_centre() {
        let r = solve(
            &p(3),
            Variant::ADMIRABLE_START,
            Objective::Cordiality,
            &SolveOptions {
                principal_line: true,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        // v1 loses (Impish answers v2), v2 is the lowest optimal opening.
        assert_eq!(r.best_move, Some(Move::Label(1)));
        assert_eq!(r.principal_line.unwrap()[0], Move::Label(1));
    }

    #[test]
    fn tiny_table_degrades_gracefully() {
        let g = p(9);
        let full = value(&g, Variant::IMPISH_START_PASS, Objective::Cordiality);
        for cap in [0, 1, 100] {
            let opts = SolveOptions {
                table_capacity: cap,
                ..SolveOptions::default()
            };
            assert_eq!(solve(&g, Variant::IMPISH_START_PASS, Objective::Cordiality, &opts).unwrap().value, full);
        }
    }

    #[test]
    fn solve_from_mid_game() {
        let g = p(4);
        let s = GameState::new(4, Variant::ADMIRABLE_START)
            .apply_move(Move::Label(0))
            .unwrap()
            .apply_move(Move::Label(2))
            .unwrap();
        // Admirable holds v1, Impish v3: Admirable takes v2 or v4.
        let r = solve_from(&g, &s, Objective::Cordiality, &SolveOptions::default()).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.best_move, Some(Move::Label(1)));
    }

    #[test]
    fn record_json() {
        let g = p(2);
        let opts = SolveOptions {
            principal_line: true,
            ..SolveOptions::default()
        };
        let r = solve(&g, Variant::ADMIRABLE_START, Objective::Balance, &opts).unwrap();
        let rec = SolveRecord::new(&g, Variant::ADMIRABLE_START, Objective::Balance, &r);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"graph":"A_","variant":"A","objective":"balance","value":1,"nodes":3,"principal_line":[{"player":"A","move":0},{"player":"I","move":1}]}"#
        );
    }
}
