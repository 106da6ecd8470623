use std::path::Path;
use std::process::{Command, Output};

use qde::{equal_up_to_scalar, read_operator};
use qperiod::golden::golden_operator;

fn qperiod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qperiod")).args(args).env_remove("QPERIOD_TORIC_WEIGHTS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn period_examples() {
    let o = qperiod(&["period", "builtin:P4", "--terms", "21", "--regularized"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "20 305540235000"));
    let o = qperiod(&["period", "builtin:MW4_4", "--terms", "8", "--regularized"]);
    assert_eq!(stdout(&o).lines().last(), Some("8 1695400"));
    let o = qperiod(&["period", "builtin:P4", "--terms", "0"]);
    assert_eq!(stdout(&o), "0 1\n");
}

#[test]
fn unregularized_coefficients_are_rational() {
    let o = qperiod(&["period", "builtin:P4", "--terms", "5"]);
    assert_eq!(stdout(&o).lines().last(), Some("5 1"));
    let o = qperiod(&["period", "builtin:Q4", "--terms", "4"]);
    assert_eq!(stdout(&o).lines().last(), Some("4 2"));
}

#[test]
fn period_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p2p1.toml");
    std::fs::write(&input, "kind = \"toric\"\nweights = [[1, 1, 1, 0, 0], [0, 0, 0, 1, 1]]\n").unwrap();
    let o = qperiod(&["period", path(&input), "--terms", "2", "--regularized"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0 1\n1 0\n2 2\n");

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "kind = \"toric\"\n").unwrap();
    let o = qperiod(&["period", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("weights"), "{}", stderr(&o));

    let o = qperiod(&["period", "builtin:NoSuch"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qperiod(&["period", path(&dir.path().join("missing.toml"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn qde_from_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p1.toml");
    let o = qperiod(&["qde", "builtin:P1", "--terms", "100", "-o", path(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(4t^2 - 1)D + 4t^2\n");

    let out = dir.path().join("q4.toml");
    let o = qperiod(&["qde", "builtin:Q4", "-o", path(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(equal_up_to_scalar(&read_operator(&out).unwrap(), &golden_operator("Q4").unwrap()));
}

#[test]
fn qde_from_series_file() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("p4.toml");
    let o = qperiod(&["period", "builtin:P4", "--terms", "200", "--regularized", "-o", path(&series)]);
    assert!(o.status.success());
    let o = qperiod(&["qde", path(&series)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let op = qde::operator_from_toml(&stdout(&o)).unwrap();
    assert!(equal_up_to_scalar(&op, &golden_operator("P4").unwrap()));
}

#[test]
fn qde_insufficient_terms() {
    let o = qperiod(&["qde", "builtin:P4", "--terms", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("no annihilator within limits"), "{}", stderr(&o));
}

#[test]
fn analyze_examples() {
    let o = qperiod(&["analyze", "builtin:P4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("rf = 8, rank = 4, defect = 0: extremal"), "{text}");
    assert!(text.contains("t=infinity"));
    let o = qperiod(&["analyze", "builtin:P4", "--table"]);
    assert!(!stdout(&o).contains("t=infinity"));

    let o = qperiod(&["analyze", "builtin:FI4_5"]);
    assert!(stdout(&o).contains("defect = 1"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let irregular = dir.path().join("irregular.toml");
    std::fs::write(&irregular, "order = \"2\"\ndegree = \"1\"\ncoefficients = [[\"0\", \"-1\"], [\"0\", \"0\"], [\"1\", \"0\"]]\n").unwrap();
    let o = qperiod(&["analyze", path(&irregular)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not Fuchsian"), "{}", stderr(&o));

    let irrational = dir.path().join("irrational.toml");
    std::fs::write(&irrational, "order = \"2\"\ndegree = \"1\"\ncoefficients = [[\"-2\", \"0\"], [\"0\", \"0\"], [\"1\", \"-1\"]]\n").unwrap();
    let o = qperiod(&["analyze", path(&irrational)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("irrational exponents"), "{}", stderr(&o));

    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, "order = \"2\"\ndegree = \"1\"\ncoefficients = [[\"x\", \"0\"]]\n").unwrap();
    let o = qperiod(&["analyze", path(&broken)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let o = qperiod(&["verify", "--suite", "periods", "--subset", "FI4_1..FI4_6"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("tally: pass=6 fail=0 skipped=0 total=6\n"), "{}", stdout(&o));

    let o = qperiod(&["verify", "--suite", "operators", "--subset", "P4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS operators P4"));

    let o = qperiod(&["verify", "--suite", "monodromy", "--subset", "MW4_1,MW4_6"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("tally: pass=2 fail=0"));

    let o = qperiod(&["verify", "--suite", "all", "--subset", ""]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "tally: pass=0 fail=0 skipped=0 total=0\n");

    let o = qperiod(&["verify", "--subset", "NoSuch"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn toric_suite_skips_without_weights() {
    let o = qperiod(&["verify", "--suite", "toric"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tally: pass=0 fail=0 skipped=4 total=4"), "{}", stdout(&o));
}

#[test]
fn toric_suite_with_weights() {
    let dir = tempfile::tempdir().unwrap();
    let weights = dir.path().join("weights.toml");
    // Deliberately not the right variety.
    std::fs::write(&weights, "[[manifold]]\nname = \"O4_6\"\nweights = [[1, 1, 1, 1, 1]]\n").unwrap();
    let o = qperiod(&["verify", "--suite", "toric", "--weights", path(&weights)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL toric O4_6: alpha_8"), "{text}");
    assert!(text.contains("SKIP toric O4_35: not in the weight file"), "{text}");

    let o = Command::new(env!("CARGO_BIN_EXE_qperiod"))
        .args(["verify", "--suite", "toric"])
        .env("QPERIOD_TORIC_WEIGHTS", &weights)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));

    std::fs::write(&weights, "[[manifold]]\nname = \"O4_6\"\n").unwrap();
    let o = qperiod(&["verify", "--suite", "toric", "--weights", path(&weights)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.toml"), dir.path().join("b.toml"));
    for p in [&a, &b] {
        assert!(qperiod(&["period", "builtin:V4_16", "--terms", "30", "--regularized", "-o", path(p)]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    for p in [&a, &b] {
        assert!(qperiod(&["qde", "builtin:FI4_2", "-o", path(p)]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let x = qperiod(&["analyze", "builtin:Q4"]);
    let y = qperiod(&["analyze", "builtin:Q4"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn worker_count_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_qperiod"))
            .args(["verify", "--suite", "periods", "--subset", "P4,Q4"])
            .env("QPERIOD_WORKERS", v)
            .output()
            .unwrap()
    };
    let o = run("2");
    assert!(o.status.success());
    assert!(stdout(&o).contains("pass=2"));
    assert_eq!(run("zero").status.code(), Some(2));
    assert_eq!(run("0").status.code(), Some(2));
}
