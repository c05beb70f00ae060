//! End-to-end runs of the `cubicsym` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cubicsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubicsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn generate_reports_order_and_generators() {
    let o = cubicsym(&["generate", "Q8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("order: 8\n"), "{out}");
    assert!(out.contains("generator I: order 4"), "{out}");
}

#[test]
fn catalog_prefix_and_group_files_are_accepted() {
    let a = stdout(&cubicsym(&["generate", "catalog/Q8"]));
    let file = scratch(
        "q8.txt",
        "name Q8\ndegree 6\nmatrix I images x1 -x2 x3 -x4 x6 -x5\nmatrix J diag 1 1 -1 -1 i -i\ngenerators I J\n",
    );
    let b = stdout(&cubicsym(&["generate", file.to_str().unwrap()]));
    assert_eq!(a, b);
}

#[test]
fn symplectic_summary_ends_with_verdict() {
    let o = cubicsym(&["symplectic", "A4-2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("elements: 12\n") && out.ends_with("overall: pass\n"), "{out}");
}

#[test]
fn invariants_print_dimension_then_forms() {
    let o = cubicsym(&["invariants", "Q8", "--degree", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("# dim 8"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn degree_zero_invariants_are_the_constants() {
    let out = stdout(&cubicsym(&["invariants", "Q8", "--degree", "0"]));
    assert_eq!(out, "# dim 1\n1\n");
}

#[test]
fn molien_prints_coefficients() {
    let out = stdout(&cubicsym(&["molien", "A5-1", "--degree", "3"]));
    assert!(out.contains("coefficients: 1,2,4,7\n"), "{out}");
    let out = stdout(&cubicsym(&["molien", "T48", "--degree", "4", "--twist", "chi2"]));
    assert!(out.contains("coefficients: 1,0,2,0,7\n"), "{out}");
}

#[test]
fn moduli_uses_the_recorded_rank() {
    let o = cubicsym(&["moduli", "Q8"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = cubicsym(&["moduli", "Q8", "--r", "16"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn smooth_reports_a_singular_point() {
    let file = scratch(
        "s5.txt",
        "# sum of cubes minus the cube of the sum\nlet s = x1 + x2 + x3 + x4 + x5 + x6\nx1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x6^3 - s^3\n",
    );
    let o = cubicsym(&["smooth", "--prime", "7", "--poly", file.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.contains("prime: 7"), "{out}");
}

#[test]
fn smooth_certifies_the_fermat_cubic() {
    let file = scratch("fermat.txt", "x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x6^3\n");
    let o = cubicsym(&["smooth", "--prime", "2", "--poly", file.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn malformed_polynomials_exit_with_usage_error() {
    let file = scratch("bad.txt", "x1^3 + * x2\n");
    let o = cubicsym(&["smooth", "--prime", "2", "--poly", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn malformed_group_files_name_the_line() {
    let file = scratch("bad-group.txt", "name bad\ndegree 2\nmatrix a images x2 x1\nmatrix b diag 1\ngenerators a b\n");
    let o = cubicsym(&["generate", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn reproduce_porcelain_is_key_value() {
    let o = cubicsym(&["reproduce", "--entry", "Q8", "--porcelain"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(!out.is_empty());
    for line in out.lines() {
        assert!(line.split(' ').all(|kv| kv.contains('=')), "{line}");
    }
}

#[test]
fn reproduce_flags_mismatches_with_exit_status() {
    let o = cubicsym(&["reproduce", "--entry", "3^1+4-2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn unknown_entries_are_errors() {
    let o = cubicsym(&["generate", "no-such-group"]);
    assert_eq!(o.status.code(), Some(2));
}
