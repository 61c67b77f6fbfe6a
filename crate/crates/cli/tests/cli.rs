use std::path::Path;
use std::process::{Command, Output};

use palqz::mtx::write_matrix;
use palqz_core::pencil::gen_random_palindromic;
use palqz_core::{CMatrix, Complex64};

fn palqz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palqz"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn solve_writes_eigenvalues_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mtx");
    let out = dir.path().join("r.csv");
    write_matrix(&a, gen_random_palindromic(7, 2).a()).unwrap();

    let o = palqz(&[
        "solve",
        "--structure",
        "palindromic",
        "--in",
        s(&a),
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# palqz solve v1\n"));
    let lines = data_lines(&text);
    assert!(!lines[0].contains("backward_error"));
    assert_eq!(lines.len(), 1 + 7 + 1);
    assert!(lines[8].starts_with("summary,"));

    let o = palqz(&["solve", "--in", s(&a), "--out", s(&out), "--accumulate-q"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines = data_lines(&text);
    assert!(lines[0].ends_with(",backward_error"));
    let be: f64 = lines[8].rsplit(',').next().unwrap().parse().unwrap();
    assert!(be < 1e-13);
}

#[test]
fn alternating_needs_both_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen_random_palindromic(6, 1).cayley().unwrap();
    let (a, b) = (dir.path().join("a.mtx"), dir.path().join("b.mtx"));
    write_matrix(&a, p.a()).unwrap();
    write_matrix(&b, p.b()).unwrap();
    let o = palqz(&[
        "solve",
        "--structure",
        "alternating",
        "--in",
        s(&a),
        "--in-b",
        s(&b),
    ]);
    assert!(o.status.success());
    assert_eq!(data_lines(&String::from_utf8(o.stdout).unwrap()).len(), 8);
    let o = palqz(&["solve", "--structure", "alternating", "--in", s(&a)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes_and_no_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");

    let bad = dir.path().join("bad.mtx");
    std::fs::write(
        &bad,
        "%%MatrixMarket matrix array complex general\n2 2\n1 0\noops 0\n",
    )
    .unwrap();
    let o = palqz(&["solve", "--in", s(&bad), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ParseError"));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":4:1:"));
    assert!(!out.exists());

    // full matrix: violates the anti-Hessenberg shape
    let full = dir.path().join("full.mtx");
    write_matrix(
        &full,
        &CMatrix::from_fn(4, 4, |i, j| Complex64::new(1.0 + i as f64, j as f64)),
    )
    .unwrap();
    let o = palqz(&["solve", "--in", s(&full), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());

    // the zero pencil is singular: the solver refuses
    let sing = dir.path().join("z.mtx");
    write_matrix(&sing, &CMatrix::zeros(5, 5)).unwrap();
    let o = palqz(&["solve", "--in", s(&sing), "--out", s(&out)]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(!out.exists());

    let o = palqz(&["solve", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_bench_rows_are_ordered_and_deterministic() {
    let args = ["random-bench", "--sizes", "12,9", "--seeds", "1..4"];
    let o = palqz(&args);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# palqz random-bench v1\n"));
    let lines = data_lines(&text);
    assert_eq!(
        lines[0],
        "n,seed,backward_error,move_count,refine_count,iterations,error"
    );
    let keys: Vec<String> = lines[1..]
        .iter()
        .map(|l| l.split(',').take(2).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(keys, ["12,1", "12,2", "12,3", "9,1", "9,2", "9,3"]);
    assert_eq!(palqz(&args).stdout, text.as_bytes());
}

#[test]
fn stress_prints_table_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = palqz(&[
        "stress",
        "--g-lo",
        "1e-9",
        "--g-hi",
        "1",
        "--samples",
        "50",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success());
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.lines().next().unwrap().contains("IIe (avg)"));
    assert_eq!(table.lines().count(), 2);
    let rows = std::fs::read_to_string(&out).unwrap();
    assert_eq!(data_lines(&rows).len(), 1 + 100);
    let o = palqz(&["stress", "--g-lo", "1", "--g-hi", "1e-3", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(1));
}
