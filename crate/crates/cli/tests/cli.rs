//! End-to-end runs of the `coalition` binary: JSON reports, exit codes,
//! stderr warnings, and byte-identical output for fixed seed and input.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalition")).args(args).output().unwrap()
}

fn write_game(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_str(stdout_of(out).lines().next().unwrap()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const EXAMPLE5: &str = r#"{"kind":"example5"}"#;
const G61_NASH: &str =
    r#"{"kind":"generator","name":"example61","order":"nash","partition":[[1,2],[3]]}"#;

#[test]
fn iterate_prints_the_full_trace() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "ex5.json", EXAMPLE5);
    let out = run(&["iterate", "--game", game.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    let header = report(&out);
    assert_eq!(header["command"], "iterate");
    assert_eq!(header["kind"], "example5");
    assert_eq!(header["n"], 3);
    assert_eq!(header["schedule"], "first");
    assert_eq!(header["digest"].as_str().unwrap().len(), 64);
    assert_eq!(lines[1], r#"{"start":"1|2|3"}"#);
    assert_eq!(lines[2], r#"{"move":"merge","blocks":[[1],[2],[3]],"result":"1,2,3"}"#);
    assert_eq!(lines[3], r#"{"terminal":"1,2,3","steps":1}"#);
}

#[test]
fn a_terminal_start_yields_a_zero_step_trace() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    let out = run(&["iterate", "--game", game.to_str().unwrap(), "--start", "1,2|3"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1], r#"{"start":"1,2|3"}"#);
    assert_eq!(lines[2], r#"{"terminal":"1,2|3","steps":0}"#);
}

#[test]
fn every_seed_walks_to_the_generator_target() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    for seed in ["0", "1", "7"] {
        let out = run(&[
            "iterate",
            "--game",
            game.to_str().unwrap(),
            "--schedule",
            "random",
            "--seed",
            seed,
        ]);
        assert_eq!(code(&out), 0);
        let text = stdout_of(&out);
        let last = text.lines().last().unwrap();
        assert!(last.starts_with(r#"{"terminal":"1,2|3""#), "seed {seed}: {last}");
    }
}

#[test]
fn outcomes_lists_every_reachable_terminal() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    let out = run(&["outcomes", "--game", game.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["start"], "1|2|3");
    assert_eq!(r["count"], 1);
    assert_eq!(r["outcomes"], serde_json::json!(["1,2|3"]));
}

#[test]
fn scan_reports_the_unique_stable_partition_or_none() {
    let dir = TempDir::new().unwrap();
    let ladder = write_game(&dir, "ex5.json", EXAMPLE5);
    let out = run(&["scan", "--game", ladder.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["stable-partition"], Value::Null);

    let g61 = write_game(&dir, "g61.json", G61_NASH);
    let out = run(&["scan", "--game", g61.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["stable-partition"], "1,2|3");
}

#[test]
fn both_dc_checkers_return_identical_verdicts() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    for start in ["1|2|3", "1,2|3", "1,2,3", "1,3|2", "1|2,3"] {
        let mut verdicts = Vec::new();
        for mode in ["dc-direct", "dc-lemma"] {
            let out = run(&[
                "stable",
                "--game",
                game.to_str().unwrap(),
                "--start",
                start,
                "--mode",
                mode,
            ]);
            assert_eq!(code(&out), 0);
            let r = report(&out);
            assert_eq!(r["mode"], mode);
            // the checkers scan in different orders, so an unstable partition
            // may get different first witnesses; the verdict must match
            assert_eq!(r["witness"].is_null(), r["stable"] == true, "start {start}");
            verdicts.push(r["stable"].clone());
        }
        assert_eq!(verdicts[0], verdicts[1], "start {start}");
    }
}

#[test]
fn stable_reports_witnesses_by_kind() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    let out = run(&["stable", "--game", game.to_str().unwrap(), "--start", "1,2|3", "--mode", "dp"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["stable"], true);
    assert_eq!(r["witness"], Value::Null);
    assert_eq!(r["witness-kind"], Value::Null);

    let out = run(&["stable", "--game", game.to_str().unwrap(), "--start", "1|2|3"]);
    let r = report(&out);
    assert_eq!(r["stable"], false);
    assert_eq!(r["witness-kind"], "collection");
    assert!(r["witness"].is_string());
}

#[test]
fn missing_coalition_values_warn_on_stderr_only() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "gap.json", r#"{"kind":"tu","n":2,"values":{"1,2":"2"}}"#);
    let out = run(&["scan", "--game", game.to_str().unwrap(), "--order", "utilitarian"]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr_of(&out).contains("warning: 2 of 3 coalition values missing; defaulting to 0"),
        "stderr: {}",
        stderr_of(&out)
    );
    assert!(!stdout_of(&out).contains("warning"));
    assert_eq!(report(&out)["stable-partition"], "1,2");
}

#[test]
fn share_basis_feeds_vector_orders() {
    let dir = TempDir::new().unwrap();
    let game =
        write_game(&dir, "pair.json", r#"{"kind":"tu","n":2,"values":{"1":"1","2":"1","1,2":"4"}}"#);
    // pareto compares payoff vectors, so the worth basis is refused
    let out = run(&["scan", "--game", game.to_str().unwrap(), "--order", "pareto"]);
    assert_eq!(code(&out), 2);
    let out = run(&[
        "scan",
        "--game",
        game.to_str().unwrap(),
        "--order",
        "pareto",
        "--basis",
        "phi",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(report(&out)["stable-partition"], "1,2");
}

#[test]
fn reports_are_byte_identical_for_fixed_seed_and_input() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    let args = [
        vec!["scan", "--game", game.to_str().unwrap()],
        vec![
            "iterate",
            "--game",
            game.to_str().unwrap(),
            "--schedule",
            "random",
            "--seed",
            "42",
        ],
        vec!["properties", "--order", "leximin", "--max-size", "2"],
    ];
    for argv in &args {
        let first = run(argv);
        let second = run(argv);
        assert_eq!(first.status, second.status);
        assert_eq!(first.stdout, second.stdout, "{argv:?}");
    }
}

#[test]
fn properties_gate_on_the_expected_axioms() {
    // all four engine axioms hold: exit 0
    let out = run(&["properties", "--order", "utilitarian", "--grid", "0,1,2,3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["expected"], serde_json::json!(["irreflexive", "transitive", "m1", "m2"]));

    // average only promises irreflexivity and transitivity; m1 still gets a witness
    let out = run(&["properties", "--order", "average"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["pass"], true);
    let m1 = r["reports"].as_array().unwrap().iter().find(|a| a["axiom"] == "m1").unwrap();
    assert_eq!(m1["holds"], false);
    assert!(!m1["witness"].is_null());

    // majority is not transitive, and does not promise to be
    let out = run(&["properties", "--order", "majority"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let trans =
        r["reports"].as_array().unwrap().iter().find(|a| a["axiom"] == "transitive").unwrap();
    assert_eq!(trans["holds"], false);

    // a zero grid annihilates nash products, so its promised m1/m2 fail
    let out = run(&["properties", "--order", "nash"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["pass"], false);
    let out = run(&["properties", "--order", "nash", "--grid", "1/2,1,2,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["pass"], true);
}

#[test]
fn input_errors_exit_two_with_a_message() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    let tu = write_game(&dir, "tu.json", r#"{"kind":"tu","n":2,"values":{"1,2":"2"}}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["iterate", "--game", "/nonexistent.json"],
        vec!["iterate", "--game", game.to_str().unwrap(), "--order", "sideways"],
        vec!["iterate", "--game", game.to_str().unwrap(), "--order", "utilitarian"],
        vec!["iterate", "--game", game.to_str().unwrap(), "--start", "1|2"],
        vec!["iterate", "--game", game.to_str().unwrap(), "--schedule", "shuffled"],
        vec!["iterate", "--game", tu.to_str().unwrap()],
        vec!["stable", "--game", game.to_str().unwrap()],
        vec!["stable", "--game", game.to_str().unwrap(), "--start", "1,2|3", "--mode", "dq"],
        vec!["properties", "--order", "nash", "--grid", "1,x"],
        vec!["properties", "--order", "nash", "--grid", ""],
        vec!["properties", "--order", "nash", "--max-size", "5"],
        vec!["properties", "--order", "nash", "--max-size", "0"],
    ];
    for argv in &cases {
        let out = run(argv);
        assert_eq!(code(&out), 2, "{argv:?}");
        assert!(stderr_of(&out).contains("error"), "{argv:?}: {}", stderr_of(&out));
        assert!(stdout_of(&out).is_empty(), "{argv:?} wrote to stdout");
    }

    let bad = write_game(&dir, "bad.json", "not json at all");
    let out = run(&["scan", "--game", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn harness_only_orders_exit_three_on_engine_commands() {
    let dir = TempDir::new().unwrap();
    let game =
        write_game(&dir, "tu.json", r#"{"kind":"tu","n":2,"values":{"1":"1","2":"1","1,2":"3"}}"#);
    for argv in [
        vec!["iterate", "--game", game.to_str().unwrap(), "--order", "average"],
        vec!["outcomes", "--game", game.to_str().unwrap(), "--order", "elitist"],
        vec!["scan", "--game", game.to_str().unwrap(), "--order", "egalitarian"],
    ] {
        let out = run(&argv);
        assert_eq!(code(&out), 3, "{argv:?}: {}", stderr_of(&out));
        assert!(stderr_of(&out).contains("error"), "{argv:?}");
    }
    // the same orders are fine where no engine runs
    let out = run(&["properties", "--order", "elitist"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn conflicting_flags_are_rejected_at_parse_time() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g61.json", G61_NASH);
    let out =
        run(&["stable", "--game", game.to_str().unwrap(), "--start", "1,2|3", "--scan"]);
    assert_eq!(code(&out), 2);
}
