use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn galcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcoh"))
        .current_dir(data())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn record<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn units_of_gaussian_field() {
    let o = galcoh(&["units", "--d", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert_eq!(record(&r, "h1.class_count"), Some("2"));
    assert_eq!(record(&r, "sequence.exact"), Some("true"));
    assert_eq!(record(&r, "ideals.membership_rule"), Some("true"));
}

#[test]
fn trivial_actor_has_one_class() {
    let o = galcoh(&["h1", "trivial.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(record(&stdout(&o), "classes"), Some("1"));
}

#[test]
fn conjugation_problem_with_subgroup() {
    let r = stdout(&galcoh(&["h1", "s3_conj.txt"]));
    assert_eq!(record(&r, "classes"), Some("2"));
    assert_eq!(record(&r, "classifier.bijective"), Some("true"));
    assert_eq!(record(&r, "connecting.exact"), Some("true"));
}

#[test]
fn insufficient_bound_is_undecided() {
    let o = galcoh(&["lattice", "--d", "-1", "plane.txt", "diag_2_half.txt", "--group", "O", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let r = stdout(&o);
    assert_eq!(record(&r, "status"), Some("undecided"));
    assert_eq!(record(&r, "undecided.bound"), Some("1"));
}

#[test]
fn gaussian_ideal_lattice() {
    let r = stdout(&galcoh(&["lattice", "--d", "-1", "gaussian_ref.txt", "gaussian_1pi.txt"]));
    assert_eq!(record(&r, "det_class.trivial"), Some("false"));
    assert_eq!(record(&r, "predicates.k_defined"), Some("false"));
    assert_eq!(record(&r, "predicates.in_v"), Some("true"));
}

#[test]
fn etale_orders_and_obstruction() {
    let r = stdout(&galcoh(&["etale", "--group", "C2", "--n", "3"]));
    assert_eq!(record(&r, "classes"), Some("2"));
    for order in ["order_scaled.txt", "order_pair.txt"] {
        let r = stdout(&galcoh(&["etale", "--group", "S3", "--n", "3", "--order", order]));
        assert_eq!(record(&r, "order.obstruction"), Some("true"), "{order}");
        assert_eq!(record(&r, "order.contains_field"), Some("false"), "{order}");
    }
}

#[test]
fn binary_forms_over_f3() {
    let r = stdout(&galcoh(&["forms", "--p", "3", "--k-deg", "1", "--ext", "2", "--tensor", "bilinear.txt"]));
    assert_eq!(record(&r, "forms"), Some("2"));
    assert_eq!(record(&r, "bijective"), Some("true"));
}

#[test]
fn genus_of_trivial_action() {
    let r = stdout(&galcoh(&["genus", "genus_c4.txt"]));
    assert_eq!(record(&r, "local.0.kernel"), Some("0 1"));
    assert_eq!(record(&r, "genus.size"), Some("2"));
}

#[test]
fn reports_are_deterministic_across_runs_and_workers() {
    let a = galcoh(&["h1", "s3_conj.txt", "--workers", "1"]);
    let b = galcoh(&["--workers", "4", "h1", "s3_conj.txt"]);
    let c = galcoh(&["h1", "s3_conj.txt"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn input_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "actor: C2\ncoefficient: S3\naction: conjugation\naction.conjugator: (0 9)\n").unwrap();
    let o = galcoh(&["h1", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.txt:4: invalid permutation"), "{err}");
    assert_eq!(galcoh(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(galcoh(&["units", "--d", "4"]).status.code(), Some(1));
}

#[test]
fn check_accepts_reports_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["h1", "s3_conj.txt"],
        &["units", "--d", "-5", "--certify"],
        &["lattice", "--d", "-1", "gaussian_ref.txt", "gaussian_1pi.txt"],
        &["etale", "--group", "S3", "--n", "3"],
        &["forms", "--p", "3", "--k-deg", "1", "--ext", "2", "--tensor", "bilinear.txt"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("r{i}.txt"));
        std::fs::write(&path, galcoh(args).stdout).unwrap();
        let o = galcoh(&["--check", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert_eq!(record(&stdout(&o), "check"), Some("pass"));
    }
    let report = stdout(&galcoh(&["lattice", "--d", "-1", "gaussian_ref.txt", "gaussian_1pi.txt"]));
    let tampered = report.replace("in_v: 1 -1", "in_v: 1 1");
    assert_ne!(tampered, report);
    let path = dir.path().join("tampered.txt");
    std::fs::write(&path, tampered).unwrap();
    let o = galcoh(&["--check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("in_v witness does not split the cocycle"));
}

#[test]
fn text_format_is_readable() {
    let r = stdout(&galcoh(&["units", "--d", "2", "--format", "text"]));
    assert!(r.starts_with("galcoh units --d 2\n"));
    assert!(r.contains("\nResult\n"));
}
