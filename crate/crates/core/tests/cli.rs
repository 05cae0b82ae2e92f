use std::path::PathBuf;
use std::process::{Command, Output};

use propcheck::corpus::Family;
use propcheck::killmatrix::{default_expected, Cell, KillMatrix};
use propcheck::runner::parse_json;

fn propcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_propcheck")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("propcheck-{}-{name}", std::process::id()))
}

#[test]
fn passing_suite_exits_zero() {
    let o = propcheck(&["run", "--suite", "max", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("seed: 1\n"));
    assert!(out.contains("+ max.Symmetry: OK, passed 100 tests."));
    assert!(out.contains("+ max.Use cases for max: OK, proved property."));
}

#[test]
fn falsification_exits_one() {
    let o = propcheck(&["run", "--suite", "sum", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("! sum.Monotonicity: Falsified after"));
}

#[test]
fn gave_up_exits_two() {
    let o = propcheck(&[
        "run", "--suite", "codec_bij", "--filter", "a,b>=0", "--seed", "1", "--max-discard-ratio", "1",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("Gave up after"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(propcheck(&["run", "--bogus"]).status.code(), Some(64));
    assert_eq!(propcheck(&["run", "--suite", "nosuch"]).status.code(), Some(64));
    assert_eq!(propcheck(&["matrix", "--family", "nosuch"]).status.code(), Some(64));
    assert_eq!(propcheck(&["matrix", "--family", "max", "--domain", "9..1"]).status.code(), Some(64));
    let o = propcheck(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(!o.stderr.is_empty());
}

#[test]
fn same_seed_gives_identical_output() {
    let args = ["run", "--suite", "all", "--seed", "12345"];
    assert_eq!(propcheck(&args).stdout, propcheck(&args).stdout);
    let json = ["run", "--suite", "all", "--seed", "12345", "--format", "json"];
    let (a, b) = (propcheck(&json), propcheck(&json));
    assert_eq!(a.stdout, b.stdout);
    let parsed = parse_json(&stdout(&a)).unwrap();
    assert_eq!(parsed.len(), 8 + 10 + 10 + 5 + 6);
}

#[test]
fn filter_selects_by_substring() {
    let out = stdout(&propcheck(&["run", "--suite", "all", "--filter", "Symmetry", "--seed", "2"]));
    let lines: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(lines, ["+ max.Symmetry: OK, passed 100 tests."]);
}

#[test]
fn list_names_every_suite_and_property() {
    let o = propcheck(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for family in Family::ALL {
        assert!(out.contains(family.name()));
    }
    assert!(out.contains("Least upper bound"));
    assert!(out.contains("Instance at start"));
    assert!(out.contains("e(d(l)) == l (false!)"));
}

#[test]
fn count_matrix_matches_fixture() {
    let o = propcheck(&["matrix", "--family", "count", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let m = KillMatrix::from_json(&stdout(&o)).unwrap();
    assert_eq!(m, default_expected(Family::Count));
}

#[test]
fn matrix_against_wrong_expectation_exits_one() {
    let mut expected = default_expected(Family::Max);
    let row = expected.variants.iter().position(|v| v == "max").unwrap();
    expected.cells[row][1] = Cell::Fail;
    let path = scratch("max.json");
    std::fs::write(&path, expected.to_json()).unwrap();
    let o = propcheck(&["matrix", "--family", "max", "--expected", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("expected: 1 differing cells"), "{out}");
    assert!(out.contains("max / Symmetry: expected Fail, got Pass"), "{out}");
}

#[test]
fn random_matrix_records_its_seed() {
    let o = propcheck(&["matrix", "--family", "max", "--mode", "random", "--seed", "5", "--format", "json"]);
    let m = KillMatrix::from_json(&stdout(&o)).unwrap();
    assert_eq!(m.seed, Some(5));
    assert_eq!(m.min_success, Some(100));
}

#[test]
fn help_exits_zero() {
    let o = propcheck(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matrix"));
}
