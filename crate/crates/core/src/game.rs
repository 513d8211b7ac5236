//! Game mechanics shared by the cordiality and balance games.
//!
//! A position is the pair of labelled sets plus the number of passes Impish
//! has used. Whose turn it is follows from alternation and is never stored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    /// Labels 0, minimises the discrepancy.
    #[serde(rename = "A")]
    Admirable,
    /// Labels 1, maximises the discrepancy.
    #[serde(rename = "I")]
    Impish,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Admirable => Player::Impish,
            Player::Impish => Player::Admirable,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Player::Admirable => "A",
            Player::Impish => "I",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("vertex {0} is not a vertex of the graph")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is already labelled")]
    AlreadyLabeled(usize),
    #[error("only Impish may pass")]
    PassByAdmirable,
    #[error("Impish has no pass left")]
    PassBudgetExhausted,
    #[error("cannot pass with no unlabelled vertex remaining")]
    PassWithNothingLeft,
    #[error("this variant forbids passing when one vertex remains")]
    PassOnLastVertex,
    #[error("the game is over")]
    GameOver,
    #[error("the game is not over: {0} vertices unlabelled")]
    NotTerminal(usize),
    #[error("state is for {state} vertices but the graph has {graph}")]
    GraphMismatch { state: usize, graph: usize },
    #[error("invalid variant: {0}")]
    InvalidVariant(String),
    #[error("invalid objective: {0}")]
    InvalidObjective(String),
    #[error("transcript move {index} expected player {expected}, recorded {recorded}")]
    WrongPlayer { index: usize, expected: Player, recorded: Player },
}

/// Who starts and how many passes Impish may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variant {
    pub starter: Player,
    pub impish_pass_budget: u8,
    /// Whether a pass is legal when exactly one vertex is unlabelled.
    pub pass_on_last_vertex: bool,
}

impl Variant {
    /// The `c_g` game.
    pub const ADMIRABLE_START: Variant = Variant {
        starter: Player::Admirable,
        impish_pass_budget: 0,
        pass_on_last_vertex: true,
    };
    /// The `c'_g` game.
    pub const IMPISH_START: Variant = Variant {
        starter: Player::Impish,
        impish_pass_budget: 0,
        pass_on_last_vertex: true,
    };
    /// The `c*_g` game.
    pub const IMPISH_START_PASS: Variant = Variant {
        starter: Player::Impish,
        impish_pass_budget: 1,
        pass_on_last_vertex: true,
    };
    /// The pass game with the pass restricted to positions where at least two
    /// vertices are unlabelled, so Admirable never labels the last vertex
    /// because of it.
    pub const IMPISH_START_EARLY_PASS: Variant = Variant {
        starter: Player::Impish,
        impish_pass_budget: 1,
        pass_on_last_vertex: false,
    };

    pub const ALL: [Variant; 3] = [
        Variant::ADMIRABLE_START,
        Variant::IMPISH_START,
        Variant::IMPISH_START_PASS,
    ];

    pub fn new(starter: Player, impish_pass_budget: u8) -> Result<Variant, GameError> {
        match (starter, impish_pass_budget) {
            (_, 0) | (Player::Impish, 1) => Ok(Variant {
                starter,
                impish_pass_budget,
                pass_on_last_vertex: true,
            }),
            _ => Err(GameError::InvalidVariant(format!(
                "{starter} start with pass budget {impish_pass_budget}"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match (self.starter, self.impish_pass_budget, self.pass_on_last_vertex) {
            (Player::Admirable, _, _) => "A",
            (Player::Impish, 0, _) => "I",
            (Player::Impish, _, true) => "I+pass",
            (Player::Impish, _, false) => "I+early-pass",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variant {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Variant, GameError> {
        match s {
            "A" => Ok(Variant::ADMIRABLE_START),
            "I" => Ok(Variant::IMPISH_START),
            "I+pass" => Ok(Variant::IMPISH_START_PASS),
            "I+early-pass" => Ok(Variant::IMPISH_START_EARLY_PASS),
            other => Err(GameError::InvalidVariant(other.to_string())),
        }
    }
}

impl Serialize for Variant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Variant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Variant, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `|e1 - e0|`
    Cordiality,
    /// `e1 - e0`
    Balance,
}

impl Objective {
    /// Terminal score from the signed discrepancy `e1 - e0`.
    pub fn score(self, signed: i32) -> i32 {
        match self {
            Objective::Cordiality => signed.abs(),
            Objective::Balance => signed,
        }
    }

    /// Inclusive range of achievable scores on a graph with `m` edges.
    pub fn bounds(self, m: usize) -> (i32, i32) {
        match self {
            Objective::Cordiality => (0, m as i32),
            Objective::Balance => (-(m as i32), m as i32),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Cordiality => "cordiality",
            Objective::Balance => "balance",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Objective, GameError> {
        match s {
            "cordiality" => Ok(Objective::Cordiality),
            "balance" => Ok(Objective::Balance),
            other => Err(GameError::InvalidObjective(other.to_string())),
        }
    }
}

/// A single turn: label a vertex or (Impish only) pass.
///
/// Serialises as the vertex index or the string `"pass"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMove", into = "RawMove")]
pub enum Move {
    Label(usize),
    Pass,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawMove {
    Vertex(usize),
    Word(String),
}

impl From<Move> for RawMove {
    fn from(m: Move) -> RawMove {
        match m {
            Move::Label(v) => RawMove::Vertex(v),
            Move::Pass => RawMove::Word("pass".into()),
        }
    }
}

impl TryFrom<RawMove> for Move {
    type Error = String;

    fn try_from(r: RawMove) -> Result<Move, String> {
        match r {
            RawMove::Vertex(v) => Ok(Move::Label(v)),
            RawMove::Word(w) if w == "pass" => Ok(Move::Pass),
            RawMove::Word(w) => Err(format!("unknown move {w:?}")),
        }
    }
}

impl fmt::Display for Move {
    /// 1-based, `v3` or `pass`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Label(v) => write!(f, "v{}", v + 1),
            Move::Pass => f.write_str("pass"),
        }
    }
}

/// A position of the game on a graph with `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameState {
    n: u8,
    zero: VertexSet,
    one: VertexSet,
    passes_used: u8,
    variant: Variant,
}

/// Fresh game on `g`.
pub fn new_game(g: &Graph, variant: Variant) -> GameState {
    GameState::new(g.n(), variant)
}

impl GameState {
    pub fn new(n: usize, variant: Variant) -> GameState {
        assert!(n <= crate::graph::MAX_VERTICES);
        GameState {
            n: n as u8,
            zero: VertexSet::EMPTY,
            one: VertexSet::EMPTY,
            passes_used: 0,
            variant,
        }
    }

    /// Rebuilds a position from its parts, validating every invariant.
    pub fn from_parts(
        n: usize,
        variant: Variant,
        zero: VertexSet,
        one: VertexSet,
        passes_used: u8,
    ) -> Result<GameState, GameError> {
        let state = GameState {
            n: n as u8,
            zero,
            one,
            passes_used,
            variant,
        };
        if state.is_consistent() {
            Ok(state)
        } else {
            Err(GameError::InvalidVariant(format!(
                "inconsistent position zero={zero:?} one={one:?} passes={passes_used} for {variant}"
            )))
        }
    }

    /// Checks disjointness, range, pass budget and move-count consistency.
    pub fn is_consistent(&self) -> bool {
        let all = VertexSet::full(self.n());
        if !self.zero.is_disjoint(self.one) || !self.zero.union(self.one).is_subset(all) {
            return false;
        }
        if self.passes_used > self.variant.impish_pass_budget {
            return false;
        }
        let a = self.zero.len() as i64;
        let i = self.one.len() as i64 + self.passes_used as i64;
        match self.variant.starter {
            Player::Admirable => a - i == 0 || a - i == 1,
            Player::Impish => i - a == 0 || i - a == 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn zero_set(&self) -> VertexSet {
        self.zero
    }

    pub fn one_set(&self) -> VertexSet {
        self.one
    }

    pub fn passes_used(&self) -> u8 {
        self.passes_used
    }

    pub fn labeled(&self) -> VertexSet {
        self.zero.union(self.one)
    }

    pub fn unlabeled(&self) -> VertexSet {
        self.labeled().complement(self.n())
    }

    /// Number of turns taken so far, passes included.
    pub fn turns(&self) -> usize {
        self.zero.len() + self.one.len() + self.passes_used as usize
    }

    pub fn to_move(&self) -> Player {
        if self.turns() % 2 == 0 {
            self.variant.starter
        } else {
            self.variant.starter.other()
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.unlabeled().is_empty()
    }

    pub fn can_pass(&self) -> bool {
        self.check_move(Move::Pass).is_ok()
    }

    /// Labels of unlabelled vertices in ascending order, then `Pass` if legal.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves: Vec<Move> = self.unlabeled().iter().map(Move::Label).collect();
        if self.can_pass() {
            moves.push(Move::Pass);
        }
        moves
    }

    pub fn check_move(&self, m: Move) -> Result<(), GameError> {
        if self.is_terminal() {
            return Err(GameError::GameOver);
        }
        match m {
            Move::Label(v) if v >= self.n() => Err(GameError::VertexOutOfRange(v)),
            Move::Label(v) if self.labeled().contains(v) => Err(GameError::AlreadyLabeled(v)),
            Move::Label(_) => Ok(()),
            Move::Pass if self.to_move() == Player::Admirable => Err(GameError::PassByAdmirable),
            Move::Pass if self.passes_used >= self.variant.impish_pass_budget => {
                Err(GameError::PassBudgetExhausted)
            }
            Move::Pass if !self.variant.pass_on_last_vertex && self.unlabeled().len() < 2 => {
                Err(GameError::PassOnLastVertex)
            }
            Move::Pass => Ok(()),
        }
    }

    pub fn apply_move(&self, m: Move) -> Result<GameState, GameError> {
        self.check_move(m)?;
        Ok(self.apply_unchecked(m))
    }

    /// Applies a move already known to be legal.
    pub(crate) fn apply_unchecked(&self, m: Move) -> GameState {
        let mut next = *self;
        match m {
            Move::Label(v) => match self.to_move() {
                Player::Admirable => next.zero.insert(v),
                Player::Impish => next.one.insert(v),
            },
            Move::Pass => next.passes_used += 1,
        }
        next
    }

    /// Final score under `obj`. Requires every vertex labelled.
    pub fn terminal_value(&self, g: &Graph, obj: Objective) -> Result<i32, GameError> {
        if g.n() != self.n() {
            return Err(GameError::GraphMismatch {
                state: self.n(),
                graph: g.n(),
            });
        }
        if !self.is_terminal() {
            return Err(GameError::NotTerminal(self.unlabeled().len()));
        }
        Ok(obj.score(g.cut_stats(self.zero).signed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMove {
    pub player: Player,
    #[serde(rename = "move")]
    pub mv: Move,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub u: usize,
    pub v: usize,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalRecord {
    pub value: i32,
    pub zero_set: Vec<usize>,
    pub one_set: Vec<usize>,
    pub edge_labels: Vec<EdgeLabel>,
}

/// Replayable record of a (possibly unfinished) game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub variant: Variant,
    pub objective: Objective,
    pub moves: Vec<TranscriptMove>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub terminal: Option<TerminalRecord>,
}

impl Transcript {
    /// Plays `moves` from the start, attaching the terminal record when the
    /// game finishes.
    pub fn record(g: &Graph, variant: Variant, objective: Objective, moves: &[Move]) -> Result<Transcript, GameError> {
        let mut state = new_game(g, variant);
        let mut recorded = Vec::with_capacity(moves.len());
        for &mv in moves {
            recorded.push(TranscriptMove {
                player: state.to_move(),
                mv,
            });
            state = state.apply_move(mv)?;
        }
        let terminal = state.is_terminal().then(|| terminal_record(g, &state, objective));
        Ok(Transcript {
            variant,
            objective,
            moves: recorded,
            terminal,
        })
    }

    /// Replays the moves, checking the recorded players.
    pub fn replay(&self, g: &Graph) -> Result<GameState, GameError> {
        let mut state = new_game(g, self.variant);
        for (index, tm) in self.moves.iter().enumerate() {
            let expected = state.to_move();
            if tm.player != expected {
                return Err(GameError::WrongPlayer {
                    index,
                    expected,
                    recorded: tm.player,
                });
            }
            state = state.apply_move(tm.mv)?;
        }
        Ok(state)
    }
}

fn terminal_record(g: &Graph, state: &GameState, objective: Objective) -> TerminalRecord {
    let zero = state.zero_set();
    TerminalRecord {
        value: objective.score(g.cut_stats(zero).signed),
        zero_set: zero.to_vec(),
        one_set: state.one_set().to_vec(),
        edge_labels: g
            .edges()
            .iter()
            .map(|&(u, v)| EdgeLabel {
                u,
                v,
                label: (zero.contains(u) != zero.contains(v)) as u8,
            })
            .collect(),
    }
}
