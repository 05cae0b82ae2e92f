//! Runs properties, drives shrinking, and renders reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gen::{Seed, Size};
use crate::prop::{Outcome, Property};
use crate::shrink::minimize;
use crate::value::{ArgVector, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestParams {
    pub min_success: usize,
    /// Allowed discards per required success before giving up.
    pub max_discard_ratio: usize,
    pub size_start: usize,
    pub size_step: usize,
    pub max_size: usize,
    pub root_seed: Seed,
}

impl TestParams {
    pub fn with_seed(root_seed: Seed) -> TestParams {
        TestParams {
            min_success: 100,
            max_discard_ratio: 5,
            size_start: 0,
            size_step: 1,
            max_size: 100,
            root_seed,
        }
    }

    fn size_for(&self, attempt: usize) -> Size {
        let grown = self.size_start.saturating_add(attempt.saturating_mul(self.size_step));
        Size(grown.min(self.max_size))
    }
}

/// A named, ordered list of properties.
#[derive(Clone, Debug)]
pub struct Suite {
    pub name: String,
    pub properties: Vec<Property>,
}

impl Suite {
    pub fn new(name: impl Into<String>, properties: Vec<Property>) -> Suite {
        Suite { name: name.into(), properties }
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Proved,
    Passed(usize),
    Falsified { passed: usize, shrunk: ArgVector, original: ArgVector },
    GaveUp { passed: usize, discarded: usize },
    /// Evaluation raised; reported as a falsification with a note.
    Error { passed: usize, message: String, resource: bool, shrunk: ArgVector, original: ArgVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestResult {
    pub suite: String,
    pub name: String,
    pub status: Status,
    pub discarded: usize,
    pub seed: u64,
}

impl TestResult {
    pub fn is_success(&self) -> bool {
        matches!(self.status, Status::Proved | Status::Passed(_))
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Falsified { .. } | Status::Error { .. })
    }
}

/// Seed for one property: the root mixed with a stable hash of its
/// qualified name, so outcomes do not depend on registration order.
pub fn property_seed(root: Seed, suite: &str, name: &str) -> Seed {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in suite.bytes().chain(*b".").chain(name.bytes()) {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    Seed::from_u64(root.state() ^ h).split().0
}

pub fn run_property(suite: &str, p: &Property, params: &TestParams) -> TestResult {
    let seed = property_seed(params.root_seed, suite, p.name());
    run_property_seeded(suite, p, params, seed)
}

/// Like [`run_property`] but with an explicit starting seed.
pub fn run_property_seeded(suite: &str, p: &Property, params: &TestParams, seed: Seed) -> TestResult {
    let result = |status, discarded| TestResult {
        suite: suite.to_owned(),
        name: p.name().to_owned(),
        status,
        discarded,
        seed: seed.state(),
    };

    if p.arity() == 0 {
        let (outcome, args) = p.evaluate(seed, Size(0));
        let status = match outcome {
            Outcome::True | Outcome::Discard => Status::Proved,
            Outcome::False => Status::Falsified { passed: 0, shrunk: args.clone(), original: args },
            Outcome::Error(e) => Status::Error {
                passed: 0,
                resource: e.is_resource(),
                message: e.message,
                shrunk: args.clone(),
                original: args,
            },
        };
        return result(status, 0);
    }

    let min_success = params.min_success.max(1);
    let discard_limit = params.max_discard_ratio.max(1).saturating_mul(min_success);
    let mut passed = 0;
    let mut discarded = 0;
    let mut s = seed;
    loop {
        if passed >= min_success {
            return result(Status::Passed(passed), discarded);
        }
        if discarded > discard_limit {
            return result(Status::GaveUp { passed, discarded }, discarded);
        }
        let (test_seed, rest) = s.split();
        s = rest;
        let (outcome, args) = p.evaluate(test_seed, params.size_for(passed + discarded));
        match outcome {
            Outcome::True => passed += 1,
            Outcome::Discard => discarded += 1,
            Outcome::False => {
                let shrunk = minimize(|v| p.check(v) == Outcome::False, args.clone());
                return result(Status::Falsified { passed, shrunk, original: args }, discarded);
            }
            Outcome::Error(_) => {
                let shrunk = minimize(|v| matches!(p.check(v), Outcome::Error(_)), args.clone());
                let Outcome::Error(e) = p.check(&shrunk) else {
                    unreachable!("minimize keeps the predicate true")
                };
                let status = Status::Error {
                    passed,
                    resource: e.is_resource(),
                    message: e.message,
                    shrunk,
                    original: args,
                };
                return result(status, discarded);
            }
        }
    }
}

/// Runs every property in registration order. Evaluation may happen in
/// parallel; the output order and content match a serial run.
pub fn run_suite(suite: &Suite, params: &TestParams) -> Vec<TestResult> {
    suite
        .properties
        .par_iter()
        .map(|p| run_property(&suite.name, p, params))
        .collect()
}

fn arg_lines(out: &mut Vec<String>, shrunk: &[Value], original: &[Value]) {
    for (i, (s, o)) in shrunk.iter().zip(original).enumerate() {
        if s == o {
            out.push(format!("> ARG_{i}: {s}"));
        } else {
            out.push(format!("> ARG_{i}: {s} (orig arg: {o})"));
        }
    }
}

pub fn format_text(r: &TestResult) -> Vec<String> {
    let head = format!("{}.{}", r.suite, r.name);
    let mut out = Vec::new();
    match &r.status {
        Status::Proved => out.push(format!("+ {head}: OK, proved property.")),
        Status::Passed(n) => out.push(format!("+ {head}: OK, passed {n} tests.")),
        Status::Falsified { passed, shrunk, original } => {
            out.push(format!("! {head}: Falsified after {passed} passed tests."));
            arg_lines(&mut out, shrunk, original);
        }
        Status::GaveUp { passed, discarded } => out.push(format!(
            "! {head}: Gave up after {passed} passed tests and {discarded} discards."
        )),
        Status::Error { passed, message, shrunk, original, .. } => {
            out.push(format!("! {head}: Falsified after {passed} passed tests."));
            arg_lines(&mut out, shrunk, original);
            out.push(format!("> Error: {message}"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonArg {
    pub index: usize,
    pub value: String,
    pub orig: String,
}

/// One entry of the JSON report. Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonResult {
    pub suite: String,
    pub name: String,
    pub status: String,
    pub tests_passed: usize,
    pub discarded: usize,
    pub args: Vec<JsonArg>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

pub fn status_name(status: &Status) -> &'static str {
    match status {
        Status::Proved => "proved",
        Status::Passed(_) => "passed",
        Status::Falsified { .. } => "falsified",
        Status::GaveUp { .. } => "gave_up",
        Status::Error { .. } => "error",
    }
}

impl From<&TestResult> for JsonResult {
    fn from(r: &TestResult) -> Self {
        let pair_args = |shrunk: &[Value], original: &[Value]| {
            shrunk
                .iter()
                .zip(original)
                .enumerate()
                .map(|(index, (s, o))| JsonArg { index, value: s.to_string(), orig: o.to_string() })
                .collect()
        };
        let (tests_passed, args, message) = match &r.status {
            Status::Proved => (0, Vec::new(), None),
            Status::Passed(n) => (*n, Vec::new(), None),
            Status::Falsified { passed, shrunk, original } => {
                (*passed, pair_args(shrunk, original), None)
            }
            Status::GaveUp { passed, .. } => (*passed, Vec::new(), None),
            Status::Error { passed, message, shrunk, original, .. } => {
                (*passed, pair_args(shrunk, original), Some(message.clone()))
            }
        };
        JsonResult {
            suite: r.suite.clone(),
            name: r.name.clone(),
            status: status_name(&r.status).to_owned(),
            tests_passed,
            discarded: r.discarded,
            args,
            seed: r.seed,
            message,
        }
    }
}

pub fn format_json(results: &[TestResult]) -> String {
    let doc: Vec<JsonResult> = results.iter().map(JsonResult::from).collect();
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn parse_json(doc: &str) -> serde_json::Result<Vec<JsonResult>> {
    serde_json::from_str(doc)
}

/// 0 when everything proved or passed, 1 on any falsification or error,
/// 2 otherwise (some property gave up).
pub fn exit_code(results: &[TestResult]) -> i32 {
    if results.iter().any(TestResult::is_failure) {
        1
    } else if results.iter().all(TestResult::is_success) {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_int32, seed_from_u64};
    use crate::prop::{boolean_property, for_all1, for_all2, implies};

    fn params() -> TestParams {
        TestParams::with_seed(seed_from_u64(1))
    }

    fn result(status: Status) -> TestResult {
        TestResult { suite: "S".into(), name: "p".into(), status, discarded: 0, seed: 0 }
    }

    #[test]
    fn statuses_from_runs() {
        let p = for_all2("Symmetry", gen_int32(), gen_int32(), |x: i32, y: i32| {
            x.max(y) == y.max(x)
        });
        let r = run_property("SmallExamples", &p, &params());
        assert_eq!(r.status, Status::Passed(100));
        assert_eq!(format_text(&r), vec!["+ SmallExamples.Symmetry: OK, passed 100 tests."]);

        let p = boolean_property("Use cases", || 1 + 1 == 2);
        assert_eq!(run_property("S", &p, &params()).status, Status::Proved);

        let p = for_all1("never", gen_int32(), |x: i32| implies(x == 12345, || true));
        let r = run_property("S", &p, &params());
        assert_eq!(r.status, Status::GaveUp { passed: 0, discarded: 501 });
        assert_eq!(
            format_text(&r),
            vec!["! S.never: Gave up after 0 passed tests and 501 discards."]
        );
    }

    #[test]
    fn falsification_is_shrunk() {
        let p = for_all1("small", gen_int32(), |x: i32| x < 1000);
        let r = run_property("S", &p, &params());
        match &r.status {
            Status::Falsified { shrunk, .. } => assert_eq!(shrunk, &vec![Value::Int(1000)]),
            other => panic!("{other:?}"),
        }
        let p = boolean_property("no", || false);
        let r = run_property("S", &p, &params());
        assert_eq!(format_text(&r), vec!["! S.no: Falsified after 0 passed tests."]);
    }

    #[test]
    fn errors_are_falsifications_with_a_note() {
        let p = for_all1("boom", gen_int32(), |x: i32| {
            if x > 10 {
                panic!("too big")
            }
            true
        });
        let r = run_property("S", &p, &params());
        let lines = format_text(&r);
        assert!(lines[0].starts_with("! S.boom: Falsified after "));
        assert!(lines[1].starts_with("> ARG_0: 11 (orig arg: "));
        assert_eq!(lines[2], "> Error: too big");
        assert_eq!(exit_code(&[r]), 1);
    }

    #[test]
    fn argument_line_suffix() {
        let r = result(Status::Falsified {
            passed: 0,
            shrunk: vec![Value::Int(0), Value::Int(7)],
            original: vec![Value::Int(-2147483648), Value::Int(7)],
        });
        assert_eq!(
            format_text(&r),
            vec![
                "! S.p: Falsified after 0 passed tests.",
                "> ARG_0: 0 (orig arg: -2147483648)",
                "> ARG_1: 7",
            ]
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&[]), 0);
        assert_eq!(exit_code(&[result(Status::Passed(100)), result(Status::Proved)]), 0);
        let falsified =
            result(Status::Falsified { passed: 1, shrunk: vec![], original: vec![] });
        assert_eq!(exit_code(&[result(Status::Passed(100)), falsified.clone()]), 1);
        let gave_up = result(Status::GaveUp { passed: 3, discarded: 501 });
        assert_eq!(exit_code(&[result(Status::Passed(100)), gave_up.clone()]), 2);
        assert_eq!(exit_code(&[gave_up, falsified]), 1);
    }

    #[test]
    fn json_shape_and_roundtrip() {
        assert_eq!(format_json(&[]), "[]");
        let rs = vec![
            result(Status::Proved),
            result(Status::Falsified {
                passed: 2,
                shrunk: vec![Value::BoolList(vec![false])],
                original: vec![Value::BoolList(vec![true, false])],
            }),
        ];
        let doc = format_json(&rs);
        let keys: Vec<usize> = ["\"suite\"", "\"name\"", "\"status\"", "\"tests_passed\"",
            "\"discarded\"", "\"args\"", "\"seed\""]
            .iter()
            .map(|k| doc.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let parsed = parse_json(&doc).unwrap();
        assert_eq!(parsed[0].status, "proved");
        assert!(parsed[0].args.is_empty());
        assert_eq!(parsed[1].status, "falsified");
        assert_eq!(parsed[1].args[0].value, "List(false)");
    }

    #[test]
    fn seeds_ignore_registration_order() {
        let root = seed_from_u64(5);
        assert_eq!(property_seed(root, "s", "a"), property_seed(root, "s", "a"));
        assert_ne!(property_seed(root, "s", "a"), property_seed(root, "s", "b"));
    }
}
