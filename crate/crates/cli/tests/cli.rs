use std::fs;
use std::process::{Command, Output};

fn batopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_batopt")).args(args).output().unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn run_writes_csv_to_stdout() {
    let out = batopt(&[
        "run",
        "--problem",
        "three_bar_truss",
        "--bats",
        "5",
        "--iters",
        "10",
        "--runs",
        "3",
        "--seed",
        "4",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(table.len(), 1 + 3 + 1);
    assert_eq!(table[0][..4], ["problem", "algorithm", "run_index", "seed"]);
    assert_eq!(table[0].last().unwrap(), "x_2");
    assert_eq!(table[1][0], "three_bar_truss");
    assert_eq!(table[1][7], (5 * 11).to_string());
    assert_eq!(table[4][2], "summary");
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 runs"));
}

#[test]
fn out_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let jsonl = dir.path().join("r.jsonl");
    let common = [
        "run",
        "--problem",
        "himmelblau",
        "--algorithm",
        "de",
        "--pop",
        "8",
        "--iters",
        "5",
        "--runs",
        "2",
    ];
    let out = batopt(&[&common[..], &["--out", csv.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(rows(&fs::read_to_string(&csv).unwrap()).len(), 4);

    let out = batopt(&[&common[..], &["--format", "jsonl", "--out", jsonl.to_str().unwrap()]].concat());
    assert!(out.status.success());
    let text = fs::read_to_string(&jsonl).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().last().unwrap().contains("\"summary\""));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.toml");
    fs::write(
        &config,
        "problem = \"speed_reducer\"\nalgorithm = \"pso\"\npop = 6\niters = 4\nruns = 5\nseed = 9\n",
    )
    .unwrap();
    let from_file = batopt(&["run", "--config", config.to_str().unwrap()]);
    assert!(
        from_file.status.success(),
        "{}",
        String::from_utf8_lossy(&from_file.stderr)
    );
    let table = rows(&String::from_utf8(from_file.stdout.clone()).unwrap());
    assert_eq!(table.len(), 1 + 5 + 1);
    assert_eq!(table[1][1], "pso");
    assert_eq!(table[1][7], "30");

    let overridden = batopt(&[
        "run",
        "--config",
        config.to_str().unwrap(),
        "--runs",
        "2",
        "--algorithm",
        "ga",
    ]);
    let table = rows(&String::from_utf8(overridden.stdout).unwrap());
    assert_eq!(table.len(), 1 + 2 + 1);
    assert_eq!(table[1][1], "ga");

    // same config, same output
    let again = batopt(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(again.stdout, from_file.stdout);

    fs::write(&config, "problem = \"speed_reducer\"\nbogus = 1\n").unwrap();
    let bad = batopt(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn no_feasible_run_exits_with_two() {
    let out = batopt(&[
        "run",
        "--problem",
        "heat_exchanger",
        "--bats",
        "1",
        "--iters",
        "0",
        "--runs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no feasible run"));
}

#[test]
fn errors_exit_with_one() {
    let out = batopt(&["run", "--problem", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("car_side_impact"));
    assert_eq!(
        batopt(&[
            "run",
            "--problem",
            "himmelblau",
            "--algorithm",
            "pso",
            "--walk-scale",
            "0.1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        batopt(&["run", "--problem", "himmelblau", "--runs", "0"]).status.code(),
        Some(1)
    );
}

#[test]
fn list_and_describe() {
    let out = batopt(&["list-problems"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert!(names.lines().any(|l| l == "heat_exchanger"));
    assert_eq!(names.lines().count(), 10);
    let out = batopt(&["describe", "--problem", "three_bar_truss"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("three_bar_truss"));
}
