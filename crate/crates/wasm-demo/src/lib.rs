//! Browser bindings. Every export takes and returns JSON text so the page
//! needs no generated TypeScript types.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cordiality::solver::{game_number_with, solve_from};
use cordiality::strategies::path_bound;
use cordiality::{
    emit_graph6, new_game, parse_graph6, solve, GameNumber, GameState, Graph, GraphSpec, Move, Objective, Player,
    SolveOptions, Variant,
};

/// Largest graph the page will solve; larger ones take too long in a tab.
pub const DEMO_MAX_N: usize = 16;

fn options(g: &Graph) -> SolveOptions {
    SolveOptions {
        max_n: DEMO_MAX_N,
        table_capacity: 1 << 22,
        ..SolveOptions::default()
    }
    .auto_symmetry(g)
}

/// A generator spec such as `path:7`, or a graph6 string.
pub fn read_graph(input: &str) -> Result<Graph, String> {
    let input = input.trim();
    if !input.contains(':') {
        return parse_graph6(input).map_err(|e| e.to_string());
    }
    let spec: GraphSpec = input.parse().map_err(|e| format!("{e}"))?;
    let mut graphs = spec.graphs().map_err(|e| e.to_string())?;
    match graphs.len() {
        1 => Ok(graphs.remove(0)),
        k => Err(format!("{spec} names {k} graphs; pick one")),
    }
}

fn parse_args(variant: &str, objective: &str) -> Result<(Variant, Objective), String> {
    let v = variant.parse().map_err(|e| format!("{e}"))?;
    let o = objective.parse().map_err(|e| format!("{e}"))?;
    Ok((v, o))
}

fn replay(g: &Graph, variant: Variant, moves: &[Move]) -> Result<GameState, String> {
    moves
        .iter()
        .try_fold(new_game(g, variant), |s, &m| s.apply_move(m))
        .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Position {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    is_path: bool,
    /// Per vertex: 0, 1 or null.
    labels: Vec<Option<u8>>,
    e0: usize,
    e1: usize,
}

fn position(g: &Graph, state: &GameState) -> Position {
    let labels: Vec<Option<u8>> = (0..g.n())
        .map(|v| {
            if state.zero_set().contains(v) {
                Some(0)
            } else if state.one_set().contains(v) {
                Some(1)
            } else {
                None
            }
        })
        .collect();
    let (mut e0, mut e1) = (0, 0);
    for &(u, v) in g.edges() {
        match (labels[u], labels[v]) {
            (Some(a), Some(b)) if a == b => e0 += 1,
            (Some(_), Some(_)) => e1 += 1,
            _ => {}
        }
    }
    Position {
        graph6: emit_graph6(g),
        n: g.n(),
        edges: g.edges().to_vec(),
        is_path: g.is_indexed_path(),
        labels,
        e0,
        e1,
    }
}

#[derive(Serialize)]
struct Solved {
    value: i32,
    nodes: u64,
    line: Vec<Move>,
    end: Position,
}

/// Game value and one optimal line of play.
pub fn solve_graph(input: &str, variant: &str, objective: &str) -> Result<String, String> {
    let g = read_graph(input)?;
    let (variant, obj) = parse_args(variant, objective)?;
    let opts = SolveOptions {
        principal_line: true,
        ..options(&g)
    };
    let r = solve(&g, variant, obj, &opts).map_err(|e| e.to_string())?;
    let line = r.principal_line.unwrap_or_default();
    let end = replay(&g, variant, &line)?;
    let out = Solved {
        value: r.value,
        nodes: r.nodes,
        end: position(&g, &end),
        line,
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[derive(Serialize)]
struct Turn {
    position: Position,
    to_move: Option<&'static str>,
    can_pass: bool,
    /// Optimal value from here; the final score once the game is over.
    value: i32,
    best_move: Option<Move>,
}

/// The position after `moves` (a JSON array of vertex indices and
/// `"pass"`), its value under optimal play and a best reply.
pub fn play(input: &str, variant: &str, objective: &str, moves: &str) -> Result<String, String> {
    let g = read_graph(input)?;
    let (variant, obj) = parse_args(variant, objective)?;
    let moves: Vec<Move> = serde_json::from_str(moves).map_err(|e| e.to_string())?;
    let state = replay(&g, variant, &moves)?;
    let r = solve_from(&g, &state, obj, &options(&g)).map_err(|e| e.to_string())?;
    let out = Turn {
        position: position(&g, &state),
        to_move: (!state.is_terminal()).then(|| match state.to_move() {
            Player::Admirable => "Admirable",
            Player::Impish => "Impish",
        }),
        can_pass: state.can_pass(),
        value: r.value,
        best_move: r.best_move,
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[derive(Serialize)]
struct PathRow {
    n: usize,
    values: [i32; 4],
    path_bound: i32,
}

/// The four game numbers of P_n for `from..=to`.
pub fn path_table(from: usize, to: usize) -> Result<String, String> {
    if to > DEMO_MAX_N {
        return Err(format!("paths above {DEMO_MAX_N} vertices are too slow here"));
    }
    let rows = (from.max(1)..=to)
        .map(|n| {
            let g = Graph::path(n).map_err(|e| e.to_string())?;
            let mut values = [0; 4];
            for (slot, which) in values.iter_mut().zip(GameNumber::ALL) {
                *slot = game_number_with(&g, which, &options(&g)).map_err(|e| e.to_string())?;
            }
            Ok(PathRow {
                n,
                values,
                path_bound: path_bound(n),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(serde_json::to_string(&rows).expect("serialisable"))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = solveGraph)]
pub fn solve_graph_js(input: &str, variant: &str, objective: &str) -> Result<String, JsError> {
    js(solve_graph(input, variant, objective))
}

#[wasm_bindgen(js_name = play)]
pub fn play_js(input: &str, variant: &str, objective: &str, moves: &str) -> Result<String, JsError> {
    js(play(input, variant, objective, moves))
}

#[wasm_bindgen(js_name = pathTable)]
pub fn path_table_js(from: usize, to: usize) -> Result<String, JsError> {
    js(path_table(from, to))
}
