use cordiality_wasm_demo::{path_table, play, read_graph, solve_graph, DEMO_MAX_N};
use serde_json::Value;

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn reads_specs_and_graph6() {
    assert_eq!(read_graph("path:3").unwrap(), read_graph("Bg").unwrap());
    assert!(read_graph("trees:5").unwrap_err().contains("3 graphs"));
    assert!(read_graph("nonsense:2").is_err());
}

#[test]
fn solve_returns_value_and_a_finished_line() {
    let r = json(solve_graph("path:6", "A", "cordiality").unwrap());
    assert_eq!(r["value"], 1);
    assert_eq!(r["line"].as_array().unwrap().len(), 6);
    let end = &r["end"];
    let (e0, e1) = (end["e0"].as_i64().unwrap(), end["e1"].as_i64().unwrap());
    assert_eq!(e0 + e1, 5);
    assert_eq!((e1 - e0).abs(), 1);
    assert!(end["is_path"].as_bool().unwrap());

    let r = json(solve_graph("path:3", "I+pass", "cordiality").unwrap());
    assert_eq!(r["value"], 2);
    assert!(r["line"].as_array().unwrap().contains(&Value::from("pass")));
}

#[test]
fn play_follows_best_replies_to_the_game_value() {
    let value = json(solve_graph("cycle:7", "I", "balance").unwrap())["value"].clone();
    let mut moves: Vec<Value> = Vec::new();
    loop {
        let r = json(play("cycle:7", "I", "balance", &Value::from(moves.clone()).to_string()).unwrap());
        assert_eq!(r["value"], value);
        if r["to_move"].is_null() {
            assert_eq!(r["best_move"], Value::Null);
            break;
        }
        moves.push(r["best_move"].clone());
    }
    assert_eq!(moves.len(), 7);
}

#[test]
fn play_rejects_illegal_moves() {
    assert!(play("path:4", "A", "cordiality", "[0, 0]").is_err());
    assert!(play("path:4", "A", "cordiality", "[\"pass\"]").is_err());
    assert!(play("path:4", "A", "cordiality", "[9]").is_err());
}

#[test]
fn path_table_rows() {
    let rows = json(path_table(3, 6).unwrap());
    let values: Vec<Value> = rows.as_array().unwrap().iter().map(|r| r["values"].clone()).collect();
    assert_eq!(values, [
        serde_json::json!([0, 0, 2, 0]),
        serde_json::json!([1, 1, 1, 1]),
        serde_json::json!([2, 2, 2, 2]),
        serde_json::json!([1, 1, 1, 1]),
    ]);
    assert!(path_table(1, DEMO_MAX_N + 1).is_err());
}
