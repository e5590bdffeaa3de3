//! End-to-end smoke tests against the built binary: standard-input
//! plumbing, pipelines, and process exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_codforge"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn verify_reads_standard_input() {
    let out = run_with_stdin(&["verify"], "z1 z2\n-z2* z1*\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "COD: yes\n");

    let out = run_with_stdin(&["verify"], "z1 z1\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "COD: no\n");
}

#[test]
fn generate_pipes_into_verify() {
    for format in ["text", "json"] {
        let gen = bin()
            .args(["generate", "--family", "Gw", "--n", "5", "--w", "3", "--format", format])
            .output()
            .unwrap();
        assert_eq!(gen.status.code(), Some(0));
        let out = run_with_stdin(
            &["verify", "--format", format],
            &String::from_utf8_lossy(&gen.stdout),
        );
        assert_eq!(out.status.code(), Some(0), "format {format}");
        assert_eq!(String::from_utf8_lossy(&out.stdout), "COD: yes\n");
    }
}

#[test]
fn equivalent_takes_second_operand_from_stdin() {
    let dir = std::env::temp_dir();
    let first = dir.join(format!("codforge-smoke-{}-a.txt", std::process::id()));
    let gen = bin()
        .args(["generate", "--family", "Gw", "--n", "3", "--w", "1"])
        .output()
        .unwrap();
    std::fs::write(&first, &gen.stdout).unwrap();
    let scrambled = bin()
        .args(["generate", "--family", "Gw", "--n", "3", "--w", "2", "--seed", "5"])
        .output()
        .unwrap();
    let out = run_with_stdin(
        &["equivalent", first.to_str().unwrap()],
        &String::from_utf8_lossy(&scrambled.stdout),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "equivalent: yes\n");
    let _ = std::fs::remove_file(&first);
}

#[test]
fn feasible_exit_codes_distinguish_verdicts() {
    let out = bin()
        .args(["feasible", "--p", "2", "--n", "3", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "infeasible\n");

    let out = bin()
        .args(["feasible", "--p", "4", "--n", "3", "--k", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "t_1=1\n");
}

#[test]
fn usage_errors_exit_two_with_usage_on_stderr() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage"), "stderr was: {err}");

    let out = bin().args(["generate", "--family", "Q", "--n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
