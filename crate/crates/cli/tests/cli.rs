//! End-to-end checks of the command line surface: text formats, JSON
//! shapes, exit codes, and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn planted() -> Command {
    Command::new(env!("CARGO_BIN_EXE_planted"))
}

fn write_pattern(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn clique_text(k: usize) -> String {
    let mut s = format!("n {k}\n");
    for i in 0..k {
        for j in (i + 1)..k {
            s.push_str(&format!("{i} {j}\n"));
        }
    }
    s
}

fn run_with_stdin(mut cmd: Command, input: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn sample_is_deterministic_and_validates() {
    let a = planted()
        .args([
            "sample",
            "--ensemble",
            "null",
            "--n",
            "12",
            "--q",
            "0.4",
            "--seed",
            "5",
        ])
        .output()
        .unwrap();
    let b = planted()
        .args([
            "sample",
            "--ensemble",
            "null",
            "--n",
            "12",
            "--q",
            "0.4",
            "--seed",
            "5",
        ])
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = planted()
        .args(["sample", "--ensemble", "null", "--n", "12", "--q", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn sample_recover_round_trip_hits_the_planted_set() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = write_pattern(&dir, "k8.txt", &clique_text(8));
    let sampled = planted()
        .args([
            "sample",
            "--ensemble",
            "subgraph",
            "--n",
            "20",
            "--q",
            "0.3",
            "--seed",
            "9",
            "--emit-embedding",
        ])
        .arg("--pattern")
        .arg(&pattern)
        .output()
        .unwrap();
    assert!(sampled.status.success());
    let graph_text = String::from_utf8(sampled.stdout).unwrap();
    assert!(graph_text.starts_with("# planted:"));

    let truth = dir.path().join("truth.txt");
    std::fs::write(&truth, &graph_text).unwrap();

    let mut cmd = planted();
    cmd.args([
        "recover",
        "--method",
        "exhaustive",
        "--n",
        "20",
        "--q",
        "0.3",
    ])
    .arg("--pattern")
    .arg(&pattern)
    .arg("--truth")
    .arg(&truth);
    let out = run_with_stdin(cmd, &graph_text);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["found"], true);
    assert_eq!(json["exact_match"], true);
}

#[test]
fn detect_exit_codes_encode_the_decision() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = write_pattern(&dir, "k6.txt", &clique_text(6));

    // Planted sample: scan decides H1 (exit 1).
    let sampled = planted()
        .args([
            "sample",
            "--ensemble",
            "subgraph",
            "--n",
            "30",
            "--q",
            "0.5",
            "--seed",
            "3",
        ])
        .arg("--pattern")
        .arg(&pattern)
        .output()
        .unwrap();
    let graph_text = String::from_utf8(sampled.stdout).unwrap();
    let mut cmd = planted();
    cmd.args(["detect", "--test", "scan", "--n", "30", "--q", "0.5"])
        .arg("--pattern")
        .arg(&pattern);
    let out = run_with_stdin(cmd, &graph_text);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["decision"], "H1");

    // Empty graph: degree test with a dense pattern decides H0 (exit 0).
    let mut cmd = planted();
    cmd.args(["detect", "--test", "degree", "--n", "30", "--q", "0.5"])
        .arg("--pattern")
        .arg(&pattern);
    let out = run_with_stdin(cmd, "n 30\n");
    assert_eq!(out.status.code(), Some(0));

    // Zero mean gap: degenerate verdict (exit 2).
    let p4 = write_pattern(&dir, "p4.txt", "n 4\n0 1\n1 2\n2 3\n");
    let mut cmd = planted();
    cmd.args(["detect", "--test", "degree", "--n", "30", "--q", "0.5"])
        .arg("--pattern")
        .arg(&p4);
    let out = run_with_stdin(cmd, "n 30\n");
    assert_eq!(out.status.code(), Some(2));

    // Spectral threshold undefined at small n: degenerate (exit 2).
    let mut cmd = planted();
    cmd.args([
        "detect", "--test", "spectral", "--n", "30", "--q", "0.5", "--delta", "0.05",
    ])
    .arg("--pattern")
    .arg(&pattern);
    let out = run_with_stdin(cmd, "n 30\n");
    assert_eq!(out.status.code(), Some(2));

    // --n mismatch is an error (exit 1).
    let mut cmd = planted();
    cmd.args(["detect", "--test", "degree", "--n", "31", "--q", "0.5"])
        .arg("--pattern")
        .arg(&pattern);
    let out = run_with_stdin(cmd, "n 30\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stats_emits_the_documented_keys() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = write_pattern(&dir, "star.txt", "n 4\n0 1\n0 2\n0 3\n");
    let out = planted()
        .args(["stats", "--n", "100", "--q", "0.5"])
        .arg("--pattern")
        .arg(&pattern)
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let obj = json.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        vec![
            "aut",
            "density",
            "log_dh_min",
            "m",
            "minimizer_edges",
            "regime",
            "strictly_balanced"
        ]
    );
    assert_eq!(json["density"], "3/4");
    assert_eq!(json["aut"], 6);
    assert_eq!(json["strictly_balanced"], true);
}

#[test]
fn stats_on_an_edgeless_pattern_suggests_the_complement() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = write_pattern(&dir, "indep.txt", "n 4\n");
    let out = planted()
        .args(["stats", "--n", "100", "--q", "0.5"])
        .arg("--pattern")
        .arg(&pattern)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("structure complement"), "stderr: {err}");
}

#[test]
fn risk_json_has_the_estimate_fields() {
    let out = planted()
        .args([
            "risk", "--test", "degree", "--family", "clique", "--k", "12", "--n", "60", "--q",
            "0.5", "--trials", "200", "--seed", "4",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in [
        "test",
        "trials",
        "type1_hat",
        "type2_hat",
        "risk_hat",
        "ci_halfwidth",
        "seed",
        "degenerate_h0",
        "degenerate_h1",
    ] {
        assert!(json.get(key).is_some(), "missing key {key}");
    }
    let risk = json["risk_hat"].as_f64().unwrap();
    assert!((0.0..=2.0).contains(&risk));
}

#[test]
fn lowdegree_grid_emits_csv_rows() {
    let out = planted()
        .args([
            "lowdegree",
            "--mode",
            "bounds",
            "--n",
            "1024",
            "--q",
            "0.5",
            "--D",
            "7",
            "--grid",
            "10..14:0.4",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# schema=1");
    assert_eq!(lines.next().unwrap(), "n,k,q,D,kind,value,regime");
    // 5 grid points x 2 kinds.
    assert_eq!(text.lines().count(), 2 + 10);
    assert!(text.contains("bound-clique"));
    assert!(text.contains("bound-indep"));
}

#[test]
fn phase_sweep_is_deterministic_and_resumable() {
    let args = [
        "phase", "--test", "degree", "--family", "clique", "--n", "40", "--k", "6..10..2", "--q",
        "0.5", "--trials", "80", "--seed", "12",
    ];
    let a = planted().args(args).output().unwrap();
    let b = planted().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("# schema=1\n"));
    assert_eq!(text.lines().count(), 2 + 3); // k in {6, 8, 10}

    // A zero-second budget emits the header, a resume marker, and exit 3.
    let out = planted()
        .args(args)
        .args(["--budget-seconds", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# resume=0"));

    // Resuming from the second point yields the remaining rows.
    let out = planted()
        .args(args)
        .args(["--resume-from", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2 + 2);
}

#[test]
fn output_flag_writes_the_payload_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sample.txt");
    let out = planted()
        .args([
            "sample",
            "--ensemble",
            "null",
            "--n",
            "8",
            "--q",
            "0.5",
            "--seed",
            "1",
        ])
        .arg("--output")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n 8\n"));
}
