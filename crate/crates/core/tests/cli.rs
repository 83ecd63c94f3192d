use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_continuants")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_small_targets() {
    let o = run(&["count", "--a", "2", "--m", "3", "--bound", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["N"], 3);

    // 8 is a Fibonacci number, so exactly the all-ones sequence reaches it.
    let o = run(&["count", "--a", "2", "--m", "3", "--bound", "2", "--format", "csv"]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("2,3,2,sequences,1,"));

    let o = run(&["count", "--a", "3", "--m", "4", "--bound", "4", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "(2,2,1,1,1,1,2)"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--a", "2"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--a", "1", "--m", "3", "--bound", "3"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = run(&["count", "--a", "3", "--m", "12", "--bound", "4", "--node-budget", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert_eq!(run(&["verify", "statement1"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "theorem6", "--k-max", "6", "--m-max", "256"]).status.code(), Some(3));
}

#[test]
fn zaremba_and_roots() {
    let o = run(&["zaremba", "--d", "81", "--bound", "5"]);
    assert_eq!(stdout(&o).trim(), "17/81 = [0; (4,1,3,4)]");
    let o = run(&["zaremba", "--d", "4", "--bound", "3"]);
    assert_eq!(stdout(&o).trim(), "none");
    let o = run(&["roots", "--s", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["polynomial"], "λ^3 - 6λ^2 - 8λ + 8");
    assert_eq!(v["char_poly_matches"], true);
}

#[test]
fn witnesses_to_file_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("seeds.txt");
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "4"].iter().enumerate() {
        let out = dir.path().join(format!("w{i}.jsonl"));
        let o = run(&[
            "witnesses",
            "--a",
            "2",
            "--s",
            "2",
            "--m",
            "20",
            "--format",
            "json",
            "--seed-cache",
            cache.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "--workers",
            workers,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        outputs.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let first: serde_json::Value = serde_json::from_str(outputs[0].lines().next().unwrap()).unwrap();
    assert_eq!(first["continuant"], "1048576");
    assert!(std::fs::read_to_string(cache).unwrap().starts_with("# continuant-seeds v1"));
}

#[test]
fn verify_csv_is_deterministic() {
    let args = ["verify", "theorem5", "theorem4", "--format", "csv", "--census-m-max", "10"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("theorem_id,parameters"));
}
