use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cordiality"))
        .args(args)
        .env_remove("CORDIALITY_MAX_N")
        .env_remove("CORDIALITY_TABLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn solve_reports_values() {
    let o = run(&["solve", "--graph", "path:6"]);
    assert!(o.status.success());
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["value"], 1);
    assert_eq!(rows[0]["variant"], "A");

    let o = run(&["solve", "--graph", "path:2", "--objective", "balance", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "graph,variant,objective,value,nodes\nA_,A,balance,1,2\n");
}

#[test]
fn solve_with_principal_line_and_impish_variants() {
    let o = run(&["solve", "--graph", "path:3", "--variant", "I+pass", "--line"]);
    let rows = json_lines(&o);
    assert_eq!(rows[0]["value"], 2);
    assert!(!rows[0]["principal_line"].as_array().unwrap().is_empty());

    let o = run(&["solve", "--graph", "path:3", "--variant", "I+early-pass"]);
    assert_eq!(json_lines(&o)[0]["value"], 0);
}

#[test]
fn solve_reads_graph6_batches() {
    let dir = std::env::temp_dir().join(format!("cordiality-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("batch.g6");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "A_\nBg\nCh").unwrap();
    let o = run(&["solve", "--file", path.to_str().unwrap(), "--jobs", "2"]);
    assert!(o.status.success());
    let values: Vec<i64> = json_lines(&o).iter().map(|r| r["value"].as_i64().unwrap()).collect();
    assert_eq!(values, [1, 0, 1]);

    writeln!(f, "not graph6 ~~").unwrap();
    drop(f);
    let o = run(&["solve", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":4:"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_schema() {
    let o = run(&["table", "--to", "8", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,c_g,c'_g,c*_g,b_g,path_bound,bound_ok,parity_ok"));
    assert_eq!(lines.clone().count(), 8);
    assert_eq!(lines.nth(7), Some("8,3,3,3,1,3,true,true"));
}

#[test]
fn table_marks_rows_over_the_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_cordiality"))
        .args(["table", "--from", "5", "--to", "6", "--format", "csv"])
        .env("CORDIALITY_MAX_N", "5")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("6,skipped,skipped,skipped,skipped,1,skipped,skipped\n"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "trees", "--max-n", "8"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "path-split", "--max-n", "10"]).status.code(), Some(0));

    // P3 with a pass spendable on the last vertex is worth 2, not 0.
    let o = run(&["verify", "small-paths", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<String> = stdout(&o).lines().filter(|l| l.ends_with(",false")).map(String::from).collect();
    assert_eq!(failing, ["Bg,solver:c*_g,0,2,false", "Bg,small-path-p3,0,2,false"]);
}

#[test]
fn usage_and_refusal_exit_codes() {
    assert_eq!(run(&["solve", "--graph", "bogus:3"]).status.code(), Some(2));
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--graph", "path:4", "--variant", "X"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--max-n", "30"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--graph", "path:40"]).status.code(), Some(3));
    assert_eq!(run(&["trees", "--n", "40"]).status.code(), Some(3));
}

#[test]
fn probe_balance_is_deterministic() {
    let args = ["probe-balance", "--n", "7", "--count", "12", "--seed", "5", "--jobs", "3"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_lines(&a).len(), 12);
    assert_ne!(run(&["probe-balance", "--n", "7", "--count", "12", "--seed", "6"]).stdout, a.stdout);
}

#[test]
fn maker_breaker_value_and_family() {
    let o = run(&["mb", "--graph", "path:5"]);
    assert_eq!(json_lines(&o)[0]["value"], 2);
    let o = run(&["mb", "--graph", "path:5", "--semantics", "containment"]);
    assert_eq!(json_lines(&o)[0]["value"], 0);

    let o = run(&["mb", "--graph", "path:6", "--k", "1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("6 12"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn tree_counts() {
    for (n, count) in [(1, 1), (4, 2), (6, 6), (8, 23)] {
        let o = run(&["trees", "--n", &n.to_string()]);
        assert_eq!(stdout(&o).lines().count(), count);
        let o = run(&["trees", "--n", &n.to_string(), "--method", "prufer"]);
        assert_eq!(stdout(&o).lines().count(), count);
    }
}
