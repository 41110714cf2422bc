//! End-to-end tests of the `shufflec` binary: formats, exit codes, and the
//! synth / verify / oracle round trip.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn shufflec() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shufflec"))
}

fn write_file(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("fixture file writes");
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

const CYCLE_WITH_SIDE_READ: &str = "2 -> 1\n2 -> 3\n3 -> 4\n4 -> 5\n5 -> 6\n6 -> 2\n";

#[test]
fn synth_emits_text_instructions() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", CYCLE_WITH_SIDE_READ);
    let out = shufflec().arg("synth").arg(&input).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "permi5 (2 3 4 5 6)\ncopy 3 1\n");
}

#[test]
fn synth_stats_append_comment_lines() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", CYCLE_WITH_SIDE_READ);
    let out = shufflec().arg("synth").arg(&input).arg("--stats").output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# registers: 6, transfers: 6"), "{text}");
    assert!(text.contains("# copies: 1, residual signature: (x=1, a2=0, a3=0)"), "{text}");
    assert!(text.contains("# length: 2"), "{text}");
}

#[test]
fn synth_emits_json_documents() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", CYCLE_WITH_SIDE_READ);
    let out = shufflec().arg("synth").arg(&input).arg("--format").arg("json").output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["ops"][0]["op"], "permi5");
    assert_eq!(doc["ops"][1], serde_json::json!({"op": "copy", "src": 3, "dst": 1}));
    assert_eq!(doc["summary"]["length"], 2);
    assert_eq!(doc["summary"]["copy_count"], 1);
    assert_eq!(doc["summary"]["residual_signature"], serde_json::json!({"x": 1, "a2": 0, "a3": 0}));
}

#[test]
fn synth_reads_json_graphs_from_stdin() {
    let mut child = shufflec()
        .arg("synth")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"edges": [[1, 2], [2, 1]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "permi5 (1 2)\n");
}

#[test]
fn unparsable_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", "1 => 2\n");
    let out = shufflec().arg("synth").arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn invalid_graphs_exit_two() {
    let dir = TempDir::new().unwrap();
    // Two different registers may not feed the same target.
    let input = write_file(&dir, "g.rtg", "1 -> 3\n2 -> 3\n");
    let out = shufflec().arg("synth").arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid transfer graph"), "{}", stderr(&out));
}

#[test]
fn greedy_only_rejects_multi_read_registers() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", "1 -> 2\n1 -> 3\n");
    let out = shufflec().arg("synth").arg(&input).arg("--greedy-only").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let fine = write_file(&dir, "h.rtg", "1 -> 2\n2 -> 1\n");
    let out = shufflec().arg("synth").arg(&fine).arg("--greedy-only").output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "permi5 (1 2)\n");
}

#[test]
fn verify_round_trips_synthesized_codes() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", CYCLE_WITH_SIDE_READ);
    let synth = shufflec().arg("synth").arg(&input).output().unwrap();
    let code = write_file(&dir, "code.txt", &stdout(&synth));

    let out = shufflec().arg("verify").arg(&input).arg("--code").arg(&code).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("ok: 2 instructions realize all 6 transfers"));
}

#[test]
fn verify_round_trips_json_codes() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", CYCLE_WITH_SIDE_READ);
    let synth = shufflec().arg("synth").arg(&input).arg("--format").arg("json").output().unwrap();
    let code = write_file(&dir, "code.json", &stdout(&synth));

    let out = shufflec().arg("verify").arg(&input).arg("--code").arg(&code).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn verify_rejects_wrong_codes_with_exit_four() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", CYCLE_WITH_SIDE_READ);
    let code = write_file(&dir, "code.txt", "permi5 (2 3 4 5 6)\ncopy 3 4\n");
    let out = shufflec().arg("verify").arg(&input).arg("--code").arg(&code).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("does not realize"), "{}", stderr(&out));
}

#[test]
fn oracle_confirms_small_instances() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", "1 -> 2\n1 -> 3\n4 -> 5\n5 -> 6\n6 -> 4\n");
    let out = shufflec().arg("oracle").arg(&input).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("oracle minimum: 2"), "{text}");
    assert!(text.contains("confirmed optimal"), "{text}");
}

#[test]
fn oracle_rejects_large_instances_with_exit_three() {
    let dir = TempDir::new().unwrap();
    let edges: String = (1..9).map(|i| format!("{i} -> {}\n", i + 1)).collect();
    let input = write_file(&dir, "g.rtg", &edges);
    let out = shufflec().arg("oracle").arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_depth_cap_failure_exits_four() {
    let dir = TempDir::new().unwrap();
    let input = write_file(&dir, "g.rtg", "1 -> 2\n2 -> 1\n");
    let out = shufflec().arg("oracle").arg(&input).arg("--oracle-depth").arg("0").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("raise --oracle-depth"), "{}", stderr(&out));
}
