//! Exhaustive evaluation of a fixed strategy against every adversary line.

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use super::Strategy;
use crate::game::{new_game, GameError, GameState, Move, Objective, Player, TranscriptMove, Variant};
use crate::graph::Graph;
use crate::io::emit_graph6;

/// Largest graph the harness accepts.
pub const HARNESS_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("strategy played illegal move {mv} after {line:?}: {error}")]
    IllegalMove {
        line: Vec<Move>,
        mv: Move,
        error: GameError,
    },
    #[error("strategy plays {strategy} but the graph has {graph} vertices")]
    SizeMismatch { strategy: usize, graph: usize },
    #[error("harness supports at most {HARNESS_MAX_N} vertices, got {0}")]
    TooLarge(usize),
}

/// The adversary's best result and one line reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCase {
    pub value: i32,
    pub line: Vec<Move>,
}

struct Search<'g> {
    g: &'g Graph,
    obj: Objective,
    side: Player,
    memo: FxHashMap<Vec<u8>, i32>,
}

impl Search<'_> {
    fn key(&self, state: &GameState, s: &Strategy) -> Vec<u8> {
        let mut k = Vec::with_capacity(40);
        k.extend_from_slice(&state.zero_set().bits().to_le_bytes());
        k.extend_from_slice(&state.one_set().bits().to_le_bytes());
        k.push(state.passes_used());
        s.encode_state(&mut k);
        k
    }

    fn own_move(&self, state: &GameState, s: &mut Strategy, line: &[Move]) -> Result<(GameState, Move), HarnessError> {
        let mv = s.choose(self.g, state);
        let next = state.apply_move(mv).map_err(|error| HarnessError::IllegalMove {
            line: line.to_vec(),
            mv,
            error,
        })?;
        s.observe(self.side, mv);
        Ok((next, mv))
    }

    fn value(&mut self, state: &GameState, s: &Strategy, line: &mut Vec<Move>) -> Result<i32, HarnessError> {
        if state.is_terminal() {
            return Ok(state.terminal_value(self.g, self.obj).expect("sizes match"));
        }
        let key = self.key(state, s);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = if state.to_move() == self.side {
            let mut s = s.clone();
            let (next, mv) = self.own_move(state, &mut s, line)?;
            line.push(mv);
            let v = self.value(&next, &s, line);
            line.pop();
            v?
        } else {
            let mut best: Option<i32> = None;
            for mv in state.legal_moves() {
                let mut child = s.clone();
                child.observe(self.side.other(), mv);
                line.push(mv);
                let v = self.value(&state.apply_move(mv).expect("legal"), &child, line);
                line.pop();
                let v = v?;
                best = Some(match (best, self.side) {
                    (None, _) => v,
                    (Some(b), Player::Admirable) => b.max(v),
                    (Some(b), Player::Impish) => b.min(v),
                });
            }
            best.expect("non-terminal position has a move")
        };
        self.memo.insert(key, v);
        Ok(v)
    }
}

fn check_size(g: &Graph, s: &Strategy) -> Result<(), HarnessError> {
    if g.n() > HARNESS_MAX_N {
        return Err(HarnessError::TooLarge(g.n()));
    }
    if s.n() != g.n() {
        return Err(HarnessError::SizeMismatch {
            strategy: s.n(),
            graph: g.n(),
        });
    }
    Ok(())
}

/// The result the adversary can force against `s`: the largest value when
/// `s` plays Admirable, the smallest when it plays Impish. Every legal
/// adversary move is tried, passes included.
pub fn worst_case_vs_optimal(
    g: &Graph,
    s: &Strategy,
    variant: Variant,
    obj: Objective,
) -> Result<WorstCase, HarnessError> {
    check_size(g, s)?;
    let mut search = Search {
        g,
        obj,
        side: s.side(),
        memo: FxHashMap::default(),
    };
    let mut scratch = Vec::new();
    let root = new_game(g, variant);
    let value = search.value(&root, s, &mut scratch)?;

    // Walk down one line that keeps the value.
    let mut line = Vec::new();
    let mut state = root;
    let mut strat = s.clone();
    while !state.is_terminal() {
        if state.to_move() == search.side {
            let (next, mv) = search.own_move(&state, &mut strat, &line)?;
            line.push(mv);
            state = next;
            continue;
        }
        let mut chosen = None;
        for mv in state.legal_moves() {
            let mut child = strat.clone();
            child.observe(search.side.other(), mv);
            let next = state.apply_move(mv).expect("legal");
            if search.value(&next, &child, &mut scratch)? == value {
                chosen = Some((mv, next, child));
                break;
            }
        }
        let (mv, next, child) = chosen.expect("some adversary move keeps the value");
        line.push(mv);
        state = next;
        strat = child;
    }
    Ok(WorstCase { value, line })
}

/// Calls `f` on the final position, move list and strategy state of every
/// playout of `s` against every adversary. Returns the number of playouts.
pub fn for_each_playout(
    g: &Graph,
    s: &Strategy,
    variant: Variant,
    f: &mut dyn FnMut(&GameState, &[Move], &Strategy),
) -> Result<u64, HarnessError> {
    check_size(g, s)?;
    fn rec(
        g: &Graph,
        state: &GameState,
        s: &Strategy,
        line: &mut Vec<Move>,
        f: &mut dyn FnMut(&GameState, &[Move], &Strategy),
    ) -> Result<u64, HarnessError> {
        if state.is_terminal() {
            f(state, line, s);
            return Ok(1);
        }
        if state.to_move() == s.side() {
            let mut s = s.clone();
            let mv = s.choose(g, state);
            let next = state.apply_move(mv).map_err(|error| HarnessError::IllegalMove {
                line: line.clone(),
                mv,
                error,
            })?;
            s.observe(s.side(), mv);
            line.push(mv);
            let r = rec(g, &next, &s, line, f);
            line.pop();
            return r;
        }
        let mut total = 0;
        for mv in state.legal_moves() {
            let mut child = s.clone();
            child.observe(s.side().other(), mv);
            line.push(mv);
            let r = rec(g, &state.apply_move(mv).expect("legal"), &child, line, f);
            line.pop();
            total += r?;
        }
        Ok(total)
    }
    rec(g, &new_game(g, variant), s, &mut Vec::new(), f)
}

/// One verified claim about a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub graph: String,
    pub strategy: String,
    pub claimed_bound: i32,
    pub worst_case: i32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_line: Option<Vec<TranscriptMove>>,
}

/// Checks `worst case <= bound` for an Admirable strategy, or
/// `worst case >= bound` for an Impish one. The witness line is attached
/// only on failure.
pub fn verify_bound(
    g: &Graph,
    s: &Strategy,
    variant: Variant,
    obj: Objective,
    bound: i32,
) -> Result<VerificationReport, HarnessError> {
    let wc = worst_case_vs_optimal(g, s, variant, obj)?;
    let pass = match s.side() {
        Player::Admirable => wc.value <= bound,
        Player::Impish => wc.value >= bound,
    };
    let witness_line = (!pass).then(|| {
        let mut state = new_game(g, variant);
        wc.line
            .iter()
            .map(|&mv| {
                let tm = TranscriptMove {
                    player: state.to_move(),
                    mv,
                };
                state = state.apply_move(mv).expect("line replays");
                tm
            })
            .collect()
    });
    Ok(VerificationReport {
        graph: emit_graph6(g),
        strategy: s.provenance().tag(),
        claimed_bound: bound,
        worst_case: wc.value,
        pass,
        witness_line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{exact_strategy, small_path_strategy};

    #[test]
    fn p3_scripts() {
        let g = Graph::path(3).unwrap();
        let s = small_path_strategy(3, Variant::ADMIRABLE_START).unwrap();
        let wc = worst_case_vs_optimal(&g, &s, Variant::ADMIRABLE_START, Objective::Cordiality).unwrap();
        assert_eq!(wc.value, 0);
        assert_eq!(wc.line.len(), 3);
    }

    #[test]
    fn report_carries_witness_only_on_failure() {
        let g = Graph::path(4).unwrap();
        let s = small_path_strategy(4, Variant::ADMIRABLE_START).unwrap();
        let ok = verify_bound(&g, &s, Variant::ADMIRABLE_START, Objective::Cordiality, 1).unwrap();
        assert!(ok.pass && ok.witness_line.is_none());
        let bad = verify_bound(&g, &s, Variant::ADMIRABLE_START, Objective::Cordiality, 0).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.witness_line.as_ref().unwrap().len(), 4);
        let json = serde_json::to_string(&bad).unwrap();
        assert!(json.starts_with(r#"{"graph":"Ch","strategy":"small-path-p4","claimed_bound":0,"worst_case":1"#), "{json}");
    }

    #[test]
    fn exact_strategy_matches_solver_on_small_graphs() {
        for g in [Graph::path(5).unwrap(), Graph::star(5).unwrap(), Graph::cycle(5).unwrap()] {
            for v in Variant::ALL {
                let s = exact_strategy(&g, Player::Admirable, Objective::Cordiality, v);
                let wc = worst_case_vs_optimal(&g, &s, v, Objective::Cordiality).unwrap();
                let opt = crate::oracle::brute_force_value(&g, v, Objective::Cordiality).unwrap();
                assert_eq!(wc.value, opt, "{} {v}", emit_graph6(&g));
            }
        }
    }

    #[test]
    fn size_mismatch_is_reported() {
        let g = Graph::path(5).unwrap();
        let s = small_path_strategy(4, Variant::ADMIRABLE_START).unwrap();
        assert!(matches!(
            worst_case_vs_optimal(&g, &s, Variant::ADMIRABLE_START, Objective::Cordiality),
            Err(HarnessError::SizeMismatch { .. })
        ));
    }
}
