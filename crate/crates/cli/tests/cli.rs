use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sqsp_core::bench::random_sparse_state;
use sqsp_core::Circuit;
use tempfile::TempDir;

fn sqsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const BELL: &str = "n 2 s 2\n01 7.0710678118654757e-1 0\n10 7.0710678118654757e-1 0\n";

#[test]
fn synth_then_verify_bell() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "bell.txt", BELL);
    let circ = dir.path().join("bell.qc");
    let out = sqsp(&["synth", s(&state), "-a", "cvo", "-o", s(&circ)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = stdout(&out);
    assert!(
        summary.contains("high-level total") && summary.contains("elementary total"),
        "{summary}"
    );

    let out = sqsp(&["verify", s(&circ), s(&state)]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert!(report.starts_with("PASS"));
    assert!(report.contains("fidelity 1.0000000000000"));
    assert!(report.contains("ancillas clean"));
}

#[test]
fn be_on_thirty_two_qubits_round_trips() {
    let dir = TempDir::new().unwrap();
    let state = write(
        &dir,
        "st.txt",
        &random_sparse_state(32, 12, 3).unwrap().to_text(),
    );
    let circ = dir.path().join("c.qc");
    let out = sqsp(&[
        "synth",
        s(&state),
        "--algorithm",
        "be",
        "-o",
        s(&circ),
        "--cost-model",
        "high",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("high total"));
    let out = sqsp(&["verify", s(&circ), s(&state)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn circuit_on_stdout_parses() {
    let dir = TempDir::new().unwrap();
    let state = write(
        &dir,
        "st.txt",
        &random_sparse_state(5, 4, 1).unwrap().to_text(),
    );
    for alg in ["cvo", "be", "lt"] {
        let out = sqsp(&["synth", s(&state), "-a", alg, "--verify"]);
        assert!(out.status.success(), "{alg}: {}", stderr(&out));
        let circuit = Circuit::parse(&stdout(&out)).unwrap();
        assert!(circuit.width() >= 5);
        assert!(stderr(&out).contains("PASS"));
    }
}

#[test]
fn optimal_path_over_budget_exits_3() {
    let dir = TempDir::new().unwrap();
    let state = write(
        &dir,
        "st.txt",
        &random_sparse_state(8, 20, 2).unwrap().to_text(),
    );
    let out = sqsp(&["synth", s(&state), "-a", "lt", "--path", "optimal"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn given_path_file() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "bell.txt", BELL);
    let order = write(&dir, "order.txt", "10\n01\n");
    let out = sqsp(&[
        "synth",
        s(&state),
        "-a",
        "lt",
        "--path",
        "given",
        "--path-file",
        s(&order),
        "--verify",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let bad = write(&dir, "bad.txt", "10\n11\n");
    let out = sqsp(&[
        "synth",
        s(&state),
        "-a",
        "lt",
        "--path",
        "given",
        "--path-file",
        s(&bad),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = sqsp(&["synth", s(&state), "-a", "lt", "--path", "given"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_against_other_state_fails() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "bell.txt", BELL);
    let other = write(
        &dir,
        "other.txt",
        "n 2 s 2\n00 7.0710678118654757e-1 0\n11 7.0710678118654757e-1 0\n",
    );
    let circ = dir.path().join("bell.qc");
    assert!(sqsp(&["synth", s(&state), "-a", "cvo", "-o", s(&circ)])
        .status
        .success());
    let out = sqsp(&["verify", s(&circ), s(&other)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.starts_with("FAIL"));
    assert!(
        report.contains("mismatch 000") && report.contains("mismatch 110"),
        "{report}"
    );
}

#[test]
fn perturbed_split_parameter_shows_up_in_deviation() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "bell.txt", BELL);
    let circ = dir.path().join("bell.qc");
    assert!(sqsp(&["synth", s(&state), "-a", "cvo", "-o", s(&circ)])
        .status
        .success());
    let text = fs::read_to_string(&circ).unwrap();
    let mut done = false;
    let edited: Vec<String> = text
        .lines()
        .map(|line| {
            let mut tok: Vec<String> = line.split_whitespace().map(String::from).collect();
            if !done && matches!(tok.first().map(String::as_str), Some("SPL" | "CSPL")) {
                let re_at = if tok[0] == "SPL" {
                    1
                } else {
                    2 + tok[1].parse::<usize>().unwrap()
                };
                let re: f64 = tok[re_at].parse().unwrap();
                tok[re_at] = format!("{:.16e}", re - 1e-3);
                done = true;
            }
            tok.join(" ")
        })
        .collect();
    assert!(done);
    let bad = write(&dir, "bad.qc", &(edited.join("\n") + "\n"));
    let out = sqsp(&["verify", s(&bad), s(&state)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    let dev: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("max_deviation "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((3e-4..3e-3).contains(&dev), "{dev}");
}

#[test]
fn malformed_state_reports_position() {
    let dir = TempDir::new().unwrap();
    let state = write(
        &dir,
        "bad.txt",
        "n 2 s 2\n01 0.7071067811865476 0\n1x 0.7071067811865476 0\n",
    );
    let out = sqsp(&["synth", s(&state), "-a", "cvo"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3") && err.contains("column 1"), "{err}");
    let out = sqsp(&["synth", "/nonexistent/state.txt", "-a", "cvo"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "bell.txt", BELL);
    assert_eq!(
        sqsp(&["synth", s(&state), "-a", "qram"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sqsp(&["synth", s(&state), "-a", "cvo", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sqsp(&["synth", s(&state), "-a", "be", "--k", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_width_budget() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "bell.txt", BELL);
    let circ = dir.path().join("bell.qc");
    assert!(sqsp(&["synth", s(&state), "-a", "lt", "-o", s(&circ)])
        .status
        .success());
    let out = sqsp(&["verify", s(&circ), s(&state), "--max-sim-qubits", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn path_orders() {
    let dir = TempDir::new().unwrap();
    let state = write(
        &dir,
        "st.txt",
        "n 3 s 3\n011 5.7735026918962573e-1 0\n001 5.7735026918962573e-1 0\n000 5.7735026918962573e-1 0\n",
    );
    let out = sqsp(&["path", s(&state)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "000\n001\n011\n");
    assert!(stderr(&out).contains("length 2"));
    let out = sqsp(&["path", s(&state), "--strategy", "optimal"]);
    assert!(stderr(&out).contains("length 2"));

    let out = sqsp(&[
        "path",
        "--strategy",
        "constant-weight",
        "--n",
        "4",
        "--k",
        "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 6);
    assert!(stderr(&out).contains("length 10"));
    let out = sqsp(&[
        "path",
        "--strategy",
        "constant-weight",
        "--n",
        "30",
        "--k",
        "15",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_csv_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = sqsp(&[
            "bench-sparse",
            "--n",
            "8,16",
            "--instances",
            "2",
            "--seed",
            "4",
            "-o",
            s(p),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stderr(&out).contains("mean normalized"));
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    let text = String::from_utf8(text).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,s,algorithm,mode,gates_total,cnot,single_qubit,normalized,seed,wall_ms"
    );
    assert_eq!(lines.len(), 1 + 2 * 2 * 2);
    assert!(!text.contains('\r'));
}

#[test]
fn bench_u1_rows() {
    let out = sqsp(&["bench-u1", "--n", "6,8", "--cost-model", "high"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains(",lt,high,") && text.contains(",prior-model,model,"));
    let out = sqsp(&["bench-u1", "--n", "24", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}
