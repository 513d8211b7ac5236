//! Exact solver, strategy library and verification harness for the
//! cordiality game and the balance game on graphs.
//!
//! Two players label the vertices of a graph in turn: Admirable writes 0 and
//! Impish writes 1. An edge is labelled by the sum of its ends mod 2. In the
//! cordiality game Admirable minimises `|e1 - e0|` and Impish maximises it;
//! in the balance game the objective is the signed `e1 - e0`.

pub mod corpus;
pub mod game;
pub mod graph;
pub mod io;
pub mod makerbreaker;
pub mod oracle;
pub mod solver;
pub mod strategies;
pub mod trees;

pub use corpus::{standard_corpus, CorpusEntry, GraphSpec};
pub use game::{new_game, GameError, GameState, Move, Objective, Player, Transcript, Variant};
pub use graph::{CutStats, Graph, GraphError, VertexSet};
pub use io::{emit_graph6, parse_edge_list, parse_graph6};
pub use makerbreaker::{maker_breaker_value, winning_family, MakerSemantics, SetFamily};
pub use oracle::brute_force_value;
pub use solver::{best_line, game_number, solve, GameNumber, SolveOptions, SolveResult, Symmetry};
pub use trees::{enumerate_trees, prufer_decode, tree_canonical_code, TreeCode};
