//! End-to-end checks of the command-line interface: output shape, exit
//! codes, and the JSON mode.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efsynth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("efsynth-cli-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("temp file");
    path
}

const WORDS: &str = "# word sample\n+ stviil\n+ stviie\n- ktvive\n- stpiie\n";

#[test]
fn synth_reports_rank_and_consistent_formula() {
    let sample = tmp_file("words", WORDS);
    let out = run(&["synth", sample.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("rank: 1"), "{text}");
    assert!(text.contains("formula:"), "{text}");
    assert!(text.contains("serialized:"), "{text}");
}

#[test]
fn synth_minimize_emits_single_disjunct_json() {
    let sample = tmp_file("words-min", WORDS);
    let out = run(&["synth", sample.to_str().unwrap(), "--minimize", "--json"]);
    assert!(out.status.success(), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("pure JSON");
    assert_eq!(doc["rank"], 1);
    assert_eq!(doc["disjuncts"], 1);
    assert_eq!(doc["minimized"], true);
    assert_eq!(doc["greedy_fallback"], false);
    assert!(doc["formula"].is_object());
}

#[test]
fn synth_expand_prints_core_syntax() {
    let sample = tmp_file("words-core", WORDS);
    let out = run(&["synth", sample.to_str().unwrap(), "--minimize", "--expand"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("core:"), "{text}");
    assert!(text.contains("exists x1"), "{text}");
    assert!(text.contains("P_v(x1)"), "{text}");
}

#[test]
fn efsim_prints_value_and_components() {
    let out = run(&["efsim", "aaacbbb", "aaabbbbb"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("efsim: 1"), "{text}");
    assert!(text.contains("length=3"), "{text}");

    let out = run(&["--json", "efsim", "bbaaaaaaaabb", "bbaaaaaabb"]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["efsim"], 3);
}

#[test]
fn efsim_of_identical_strings_is_an_input_error() {
    let out = run(&["efsim", "ab", "ab"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn phi_lists_the_distinguishability_set() {
    let out = run(&["phi", "bbaaaaaaaabb", "bbaaaaaabb", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains(r#"sigma("aaa") >= 2"#), "{text}");
    assert!(text.contains("d(min,max) >= 10"), "{text}");
}

#[test]
fn game_exit_code_signals_the_winner() {
    let out = run(&["game", "aaa", "aaaa", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("duplicator"));

    let out = run(&["game", "aaa", "aaaa", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("spoiler"));

    // the exponential oracle agrees
    let out = run(&["game", "aaa", "aaaa", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eval_and_check_round_trip_a_serialized_formula() {
    let formula = tmp_file(
        "formula",
        r#"{"kind":"and","args":[{"kind":"pref","cmp":"=","k":1,"s":"s"},{"kind":"gamma","cmp":">=","alpha":"v","n":1}]}"#,
    );
    let out = run(&["eval", "stviie", formula.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("true"));

    let out = run(&["eval", "stpiie", formula.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let sample = tmp_file("words-check", WORDS);
    let out = run(&["check", sample.to_str().unwrap(), formula.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("consistent"));
}

#[test]
fn check_reports_misclassified_strings() {
    let formula = tmp_file("formula-bad", r#"{"kind":"suff","cmp":"=","k":1,"s":"l"}"#);
    let sample = tmp_file("words-bad", WORDS);
    let out = run(&[
        "--json",
        "check",
        sample.to_str().unwrap(),
        formula.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["consistent"], false);
    assert_eq!(doc["false_negatives"][0], "stviie");
}

#[test]
fn bad_inputs_use_distinct_exit_codes() {
    // usage error (clap)
    let out = run(&["synth"]);
    assert_eq!(out.status.code(), Some(2));

    // unreadable sample file
    let out = run(&["synth", "/nonexistent/sample.txt"]);
    assert_eq!(out.status.code(), Some(3));

    // malformed sample line
    let sample = tmp_file("junk", "+ ab\n? what\n");
    let out = run(&["synth", sample.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    // malformed formula document
    let formula = tmp_file("bad-json", "{bad");
    let out = run(&["eval", "ab", formula.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}
