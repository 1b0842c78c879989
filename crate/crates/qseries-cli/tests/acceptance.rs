//! Acceptance suite for the command-line front end: the full
//! verification run as invoked from the shell, and the determinism and
//! exit-code contract of the report pipeline.

use std::process::{Command, Output};
use std::time::Instant;

fn qseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn strip_timestamp(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_01_cli_verify_all_full_registry() {
    let start = Instant::now();
    let out = qseries(&[
        "verify-all",
        "--samples",
        "200",
        "--tol",
        "1e-9",
        "--seed",
        "1",
    ]);
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stdout: {text}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(text.contains("(0 failed)"), "{text}");
    assert!(
        elapsed.as_secs() < 300,
        "run took {elapsed:?}, budget is five minutes"
    );
    println!(
        "criterion 01 (command-line form): PASS (verify-all --samples 200 --tol 1e-9 --seed 1 \
         in {elapsed:?})"
    );
}

#[test]
fn criterion_12_cli_determinism_and_exit_codes() {
    // identical seed and config produce byte-identical JSON reports,
    // timestamp excluded
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let out = qseries(&[
            "report",
            "--catalog",
            "identities",
            "--out",
            path.to_str().unwrap(),
            "--samples",
            "5",
            "--seed",
            "17",
        ]);
        assert_eq!(out.status.code(), Some(0));
        texts.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(strip_timestamp(&texts[0]), strip_timestamp(&texts[1]));
    assert!(texts[0].contains("\"timestamp\""));

    // exit-code contract: 0 on success (above), 1 on verification
    // failure, 2 on usage errors
    let forced_failure = qseries(&[
        "verify",
        "rogers_ramanujan_1",
        "--samples",
        "2",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(forced_failure.status.code(), Some(1));
    assert_eq!(qseries(&["verify", "no_such_id"]).status.code(), Some(2));
    assert_eq!(qseries(&["eval", "qpoch(0.5,"]).status.code(), Some(2));
    println!(
        "criterion 12 determinism and exit codes: PASS (byte-identical JSON modulo timestamp; \
         exit codes 0/1/2)"
    );
}
