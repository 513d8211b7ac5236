//! The cordiality and balance games as Maker-Breaker games.
//!
//! Maker plays Admirable and claims the vertices labelled 0; Breaker plays
//! Impish. For a bound `k` the winning family holds every part of a balanced
//! bipartition whose discrepancy is at most `k`. Maker wins when the set
//! claimed at the end is a member (or, under containment, a superset of a
//! member). The game value is the least `k` Maker can win.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::game::{new_game, GameState, Move, Objective, Variant};
use crate::graph::{Graph, VertexSet};

/// Largest graph [`winning_family`] enumerates.
pub const FAMILY_MAX_N: usize = 20;
/// Largest graph [`maker_breaker_value`] solves.
pub const MAKER_BREAKER_MAX_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MakerBreakerError {
    #[error("{what} supports at most {max} vertices, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("hypergraph parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A family of vertex sets over `0..ground`, kept sorted by bit pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    members: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new(ground: usize, mut members: Vec<VertexSet>) -> Self {
        members.sort_by_key(|s| s.bits());
        members.dedup();
        SetFamily { ground, members }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.members.binary_search_by_key(&s.bits(), |m| m.bits()).is_ok()
    }

    fn full(&self) -> VertexSet {
        (0..self.ground).collect()
    }

    /// Whether `S` in the family implies `V - S` in the family.
    pub fn is_complement_closed(&self) -> bool {
        let full = self.full();
        self.members.iter().all(|&s| self.contains(full.difference(s)))
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&s| other.contains(s))
    }
}

/// Whether Maker needs the final set to be a member or only to contain one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MakerSemantics {
    #[default]
    Exact,
    Containment,
}

fn discrepancy(g: &Graph, s: VertexSet, obj: Objective) -> i32 {
    obj.score(2 * g.cut(s) as i32 - g.edge_count() as i32)
}

/// Every part `S` of a balanced bipartition with `|2 phi(S) - |E|| <= k`
/// (cordiality) or `2 phi(S) - |E| <= k` (balance), where `phi(S)` counts
/// the edges leaving `S`.
pub fn winning_family(g: &Graph, k: i32, obj: Objective) -> Result<SetFamily, MakerBreakerError> {
    let n = g.n();
    if n > FAMILY_MAX_N {
        return Err(MakerBreakerError::TooLarge {
            what: "winning_family",
            n,
            max: FAMILY_MAX_N,
        });
    }
    let members: Vec<VertexSet> = (0u64..1 << n)
        .into_par_iter()
        .map(VertexSet::from_bits)
        .filter(|&s| g.is_balanced_bipartition(s) && discrepancy(g, s, obj) <= k)
        .collect();
    Ok(SetFamily::new(n, members))
}

struct Game<'a> {
    win: &'a [bool],
    memo: FxHashMap<(u64, u64, u8), bool>,
}

impl Game<'_> {
    fn maker_wins(&mut self, state: &GameState) -> bool {
        if state.is_terminal() {
            return self.win[state.zero_set().bits() as usize];
        }
        let key = (state.zero_set().bits(), state.one_set().bits(), state.passes_used());
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let maker_to_move = state.to_move() == crate::game::Player::Admirable;
        let mut moves = state.legal_moves().into_iter();
        let w = if maker_to_move {
            moves.any(|m| self.after(state, m))
        } else {
            moves.all(|m| self.after(state, m))
        };
        self.memo.insert(key, w);
        w
    }

    fn after(&mut self, state: &GameState, m: Move) -> bool {
        let next = state.apply_move(m).expect("legal move");
        self.maker_wins(&next)
    }
}

/// Winning final sets as a table indexed by bit pattern.
fn win_table(fam: &SetFamily, semantics: MakerSemantics) -> Vec<bool> {
    let size = 1usize << fam.ground();
    let mut win = vec![false; size];
    for s in fam.members() {
        win[s.bits() as usize] = true;
    }
    if semantics == MakerSemantics::Containment {
        // Supersets in increasing order of bit pattern: every proper subset
        // of `s` is smaller than `s`.
        for s in 0..size {
            if !win[s] {
                win[s] = (0..fam.ground()).any(|v| s & 1 << v != 0 && win[s & !(1 << v)]);
            }
        }
    }
    win
}

/// Whether Maker, moving as Admirable under `variant`, can force a winning
/// final set for this family.
pub fn maker_wins(g: &Graph, variant: Variant, fam: &SetFamily, semantics: MakerSemantics) -> bool {
    let win = win_table(fam, semantics);
    let mut game = Game {
        win: &win,
        memo: FxHashMap::default(),
    };
    game.maker_wins(&new_game(g, variant))
}

/// The least `k` for which Maker wins on `winning_family(g, k, obj)`. Only
/// `k` with the parity of `|E|` is tried, starting from 0 for cordiality and
/// `-|E|` for balance.
pub fn maker_breaker_value(
    g: &Graph,
    variant: Variant,
    obj: Objective,
    semantics: MakerSemantics,
) -> Result<i32, MakerBreakerError> {
    let n = g.n();
    if n > MAKER_BREAKER_MAX_N {
        return Err(MakerBreakerError::TooLarge {
            what: "maker_breaker_value",
            n,
            max: MAKER_BREAKER_MAX_N,
        });
    }
    let m = g.edge_count() as i32;
    let start = match obj {
        Objective::Cordiality => m % 2,
        Objective::Balance => -m,
    };
    let mut k = start;
    while k < m {
        if maker_wins(g, variant, &winning_family(g, k, obj)?, semantics) {
            return Ok(k);
        }
        k += 2;
    }
    // Every balanced part is in the family at k = |E|.
    Ok(m)
}

/// Header `n m`, then one member per line as increasing vertex indices.
pub fn export_hypergraph(fam: &SetFamily) -> String {
    let mut out = format!("{} {}\n", fam.ground(), fam.len());
    for s in fam.members() {
        let line: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<SetFamily, MakerBreakerError> {
    let err = |line: usize, reason: &str| MakerBreakerError::Parse {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| err(1, "header must be two integers")))
        .collect::<Result<_, _>>()?;
    let [ground, count] = nums[..] else {
        return Err(err(1, "header must be two integers"));
    };
    if ground > FAMILY_MAX_N {
        return Err(err(1, "ground set too large"));
    }
    let mut members = Vec::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let mut s = VertexSet::default();
        for x in line.split_whitespace() {
            let v: usize = x.parse().map_err(|_| err(i + 2, "bad vertex"))?;
            if v >= ground {
                return Err(err(i + 2, "vertex out of range"));
            }
            s.insert(v);
        }
        members.push(s);
    }
    if members.len() != count {
        return Err(err(1, "member count does not match header"));
    }
    Ok(SetFamily::new(ground, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn p3_family_drops_the_centre_split() {
        let g = Graph::path(3).unwrap();
        let fam = winning_family(&g, 0, Objective::Cordiality).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(!fam.contains(set(&[1])));
        assert!(!fam.contains(set(&[0, 2])));
        let text = export_hypergraph(&fam);
        assert_eq!(text.lines().count(), 5);
        assert_eq!(parse_hypergraph(&text).unwrap(), fam);
    }

    #[test]
    fn empty_family_exports_header_only() {
        let fam = SetFamily::new(4, Vec::new());
        assert_eq!(export_hypergraph(&fam), "4 0\n");
        assert_eq!(parse_hypergraph("4 0\n").unwrap(), fam);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(parse_hypergraph("").is_err());
        assert!(parse_hypergraph("3 1\n0 5\n").is_err());
        assert!(parse_hypergraph("3 2\n0 1\n").is_err());
        assert!(parse_hypergraph("3\n").is_err());
    }

    #[test]
    fn small_path_values() {
        for (n, want) in [(3, 0), (4, 1), (6, 1)] {
            let g = Graph::path(n).unwrap();
            let v = maker_breaker_value(&g, Variant::ADMIRABLE_START, Objective::Cordiality, MakerSemantics::Exact);
            assert_eq!(v.unwrap(), want, "P{n}");
        }
        let g = Graph::path(2).unwrap();
        let b = maker_breaker_value(&g, Variant::ADMIRABLE_START, Objective::Balance, MakerSemantics::Exact);
        assert_eq!(b.unwrap(), 1);
    }

    #[test]
    fn caps() {
        let g = Graph::path(15).unwrap();
        assert!(matches!(
            maker_breaker_value(&g, Variant::ADMIRABLE_START, Objective::Cordiality, MakerSemantics::Exact),
            Err(MakerBreakerError::TooLarge { .. })
        ));
        let g = Graph::path(21).unwrap();
        assert!(winning_family(&g, 0, Objective::Cordiality).is_err());
    }
}
