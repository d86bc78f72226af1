//! End-to-end tests of the `designauth` binary: exit codes, pipeline
//! closure, and output formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_designauth"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn generate_pg_prints_stats() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "pg", "--d", "2", "--q", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("2-(7,3,1)"), "{text}");
    assert!(text.contains("blocks (b): 7"), "{text}");
}

#[test]
fn generate_sts_9_is_a_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "sts", "--v", "9"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1 (mod 6)"), "{}", stderr(&out));
}

#[test]
fn generate_missing_flag_is_a_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "pg", "--q", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--d"), "{}", stderr(&out));
}

#[test]
fn full_pipeline_spherical_order_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["generate", "spherical", "--q", "3", "--d", "2", "--out", "mob.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("3-(10,4,1)"));

    let out = run(&["order", "mob.json", "--out", "mob.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let out = run(&["verify", "mob.csv", "--spoof-order", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("P_d0 = 2/5"), "{text}");
    assert!(text.contains("P_d1 = 1/3"), "{text}");
    assert!(text.contains("P_d2 = 1/4"), "{text}");
    assert!(text.contains("RESULT: PASS"), "{text}");
}

#[test]
fn verify_sorted_fano_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    // Rows sorted ascending instead of properly ordered: still a valid
    // matrix, but message frequencies per column are skewed.
    let fano = designauth::designs::geometry::pg_lines(2, 2).unwrap();
    let mut csv = String::from("s1,s2,s3\n");
    for block in fano.blocks() {
        csv.push_str(&format!("{},{},{}\n", block[0], block[1], block[2]));
    }
    std::fs::write(dir.path().join("sorted.csv"), csv).unwrap();

    let out = run(&["verify", "sorted.csv"], dir.path());
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("perfect secrecy: FAIL"), "{text}");
    assert!(text.contains("RESULT: FAIL"), "{text}");
}

#[test]
fn fixtures_emit_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fixtures", "--out-dir", "fx"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let fano = std::fs::read_to_string(dir.path().join("fx/fano.csv")).unwrap();
    assert!(fano.starts_with("s1,s2,s3\n1,2,4\n"), "{fano}");

    let out = run(&["verify", "fx/fano.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));

    let out = run(&["verify", "fx/mobius_order3.csv", "--spoof-order", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("RESULT: PASS"));
}

#[test]
fn table_reference_emits_all_14_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["table", "--reference"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("14 row(s)"), "{}", stdout(&out));
    assert!(stdout(&out).contains("1152676008"));

    let out = run(&["--json", "table", "--reference"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r["v_divides_b"] == true));
    assert_eq!(rows[3]["b"], "1771");
    assert_eq!(rows[13]["b"], "1152676008");
}

#[test]
fn table_requires_a_mode() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["table"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--reference"), "{}", stderr(&out));
}

#[test]
fn order_rejects_sts9_for_divisibility() {
    let dir = tempfile::tempdir().unwrap();
    let sts9 = serde_json::json!({
        "t": 2, "v": 9, "k": 3, "lambda": 1,
        "blocks": [
            [0,1,2],[3,4,5],[6,7,8],
            [0,3,6],[1,4,7],[2,5,8],
            [0,4,8],[1,5,6],[2,3,7],
            [0,5,7],[1,3,8],[2,4,6],
        ],
    });
    std::fs::write(dir.path().join("sts9.json"), sts9.to_string()).unwrap();
    let out = run(&["order", "sts9.json", "--out", "m.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("v must divide b"), "{}", stderr(&out));
}

#[test]
fn verify_spoof_order_at_k_is_a_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    run(&["fixtures", "--out-dir", "."], dir.path());
    let out = run(&["verify", "fano.csv", "--spoof-order", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not below"), "{}", stderr(&out));
}

#[test]
fn json_verify_reports_exact_fractions() {
    let dir = tempfile::tempdir().unwrap();
    run(&["fixtures", "--out-dir", "."], dir.path());
    let out = run(&["--json", "verify", "fano.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["deception"][0]["num"], "3");
    assert_eq!(report["deception"][0]["den"], "7");
    assert_eq!(report["deception"][1]["num"], "1");
    assert_eq!(report["deception"][1]["den"], "3");
    assert_eq!(report["all_pass"], true);
    assert_eq!(report["bound"]["num"], "7");
}

#[test]
fn witt_generate_writes_both_designs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["generate", "witt", "--out", "w12.json", "--derived-out", "w11.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("5-(12,6,1)"), "{text}");
    assert!(text.contains("4-(11,5,1)"), "{text}");
    assert!(dir.path().join("w12.json").exists());
    assert!(dir.path().join("w11.json").exists());

    // The emitted files ingest and order cleanly.
    let out = run(&["order", "w11.json", "--out", "w11.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let out = run(&["verify", "w11.csv", "--spoof-order", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
}
