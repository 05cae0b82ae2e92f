use num_bigint::BigInt;
use proptest::prelude::*;

use propcheck::gen::{choose_integer, gen_bigint, gen_bool, gen_int32, gen_list, seed_from_u64};
use propcheck::prop::{for_all2, implies, Outcome};
use propcheck::runner::{format_json, format_text, run_property, run_suite, Status, Suite, TestParams};
use propcheck::shrink::{minimize_with_stats, shrink_bigint, shrink_int, shrink_list, shrink_value};
use propcheck::{corpus, Size, Value};

fn log_measure(args: &[Value]) -> usize {
    args.iter().map(|v| 128 - measure(v).leading_zeros()).max().unwrap_or(0).max(1) as usize
}

fn measure(v: &Value) -> u128 {
    match v {
        Value::Int(x) => u128::from(x.unsigned_abs()),
        Value::BigInt(x) => x.magnitude().to_string().parse().unwrap(),
        Value::Bool(b) => u128::from(*b),
        Value::IntList(l) => l.len() as u128,
        Value::BoolList(l) => l.len() as u128,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn generators_are_pure(raw in any::<u64>(), size in 0usize..100) {
        let s = seed_from_u64(raw);
        let z = Size(size);
        prop_assert_eq!(gen_int32().sample(s, z), gen_int32().sample(s, z));
        prop_assert_eq!(gen_bigint().sample(s, z), gen_bigint().sample(s, z));
        prop_assert_eq!(gen_bool().sample(s, z), gen_bool().sample(s, z));
        let l = gen_list(gen_int32());
        prop_assert_eq!(l.sample(s, z), l.sample(s, z));
    }

    #[test]
    fn int_candidates_shrink_strictly(x in any::<i32>()) {
        let c = shrink_int(x);
        prop_assert!(!c.contains(&x));
        prop_assert!(c.iter().all(|y| y.unsigned_abs() < x.unsigned_abs()));
        let big: Vec<BigInt> = c.iter().map(|y| BigInt::from(*y)).collect();
        prop_assert_eq!(shrink_bigint(&BigInt::from(x)), big);
    }

    #[test]
    fn list_candidates_shrink_strictly(l in proptest::collection::vec(-50i32..50, 0..8)) {
        for c in shrink_list(&l, |x| shrink_int(*x)) {
            prop_assert!(c != l);
            let shorter = c.len() < l.len();
            let same_len_smaller = c.len() == l.len()
                && c.iter().zip(&l).all(|(a, b)| a.unsigned_abs() <= b.unsigned_abs())
                && c.iter().zip(&l).any(|(a, b)| a.unsigned_abs() < b.unsigned_abs());
            prop_assert!(shorter || same_len_smaller);
        }
    }
}

#[test]
fn choose_integer_stays_in_range() {
    let mut s = seed_from_u64(2024);
    for _ in 0..10_000 {
        let (a, next) = s.next_u64();
        let (b, next) = next.next_u64();
        let (lo, hi) = ((a as i64).min(b as i64), (a as i64).max(b as i64));
        let (v, next) = choose_integer(lo, hi, next).unwrap();
        assert!(lo <= v && v <= hi);
        s = next;
    }
}

/// Soundness, local minimality and the iteration bound of `minimize`, on
/// 1,000 random falsifying starts of a two-argument predicate.
#[test]
fn minimize_is_sound_and_locally_minimal() {
    let falsifies = |v: &[Value]| match (&v[0], &v[1]) {
        (Value::Int(x), Value::Int(y)) => (*x as i64) + (*y as i64) > 1_000 && x % 3 == 0,
        _ => false,
    };
    let mut s = seed_from_u64(7);
    let mut checked = 0;
    while checked < 1_000 {
        let (a, next) = gen_int32().sample(s, Size(0));
        let (b, next) = gen_int32().sample(next, Size(0));
        s = next;
        let start = vec![Value::Int(a), Value::Int(b)];
        if !falsifies(&start) {
            continue;
        }
        checked += 1;
        let out = minimize_with_stats(falsifies, start);
        assert!(falsifies(&out.args));
        for i in 0..2 {
            for c in shrink_value(&out.args[i]) {
                let mut t = out.args.clone();
                t[i] = c;
                assert!(!falsifies(&t), "{:?} not minimal", out.args);
            }
        }
    }
}

#[test]
fn minimize_steps_are_bounded_for_separable_predicates() {
    let falsifies = |v: &[Value]| match (&v[0], &v[1]) {
        (Value::Int(x), Value::Int(y)) => *x >= 1_000 && x % 3 == 0 && y.unsigned_abs() > 77,
        _ => false,
    };
    let mut s = seed_from_u64(11);
    let mut checked = 0;
    while checked < 1_000 {
        let (a, next) = gen_int32().sample(s, Size(0));
        let (b, next) = gen_int32().sample(next, Size(0));
        s = next;
        let start = vec![Value::Int(a), Value::Int(b)];
        if !falsifies(&start) {
            continue;
        }
        checked += 1;
        let bound = 64 * 2 * log_measure(&start);
        let out = minimize_with_stats(falsifies, start);
        assert!(out.steps <= bound, "{} steps for {:?}", out.steps, out.args);
        assert!(out.evaluations <= bound * 64);
    }
}

#[test]
fn monotonicity_counterexample_shrinks_to_ordered_pair() {
    let sum = corpus::SumImpl::ITER.f;
    let falsifies = |v: &[Value]| match (&v[0], &v[1]) {
        (Value::Int(x), Value::Int(y)) => x <= y && sum(*x).unwrap() > sum(*y).unwrap(),
        _ => false,
    };
    let start = vec![Value::Int(-2147483648), Value::Int(660619302)];
    assert!(falsifies(&start));
    let out = minimize_with_stats(falsifies, start).args;
    assert!(falsifies(&out));
    let (Value::Int(x), Value::Int(y)) = (&out[0], &out[1]) else { unreachable!() };
    assert!(0 <= *x && x <= y);
}

#[test]
fn implication_matches_if_else_true() {
    for p in [false, true] {
        for q in [false, true] {
            let o = implies(p, || q);
            assert_eq!(o == Outcome::True, p && (if p { q } else { true }));
            assert_eq!(o == Outcome::Discard, !p);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let params = TestParams::with_seed(seed_from_u64(31));
    for suite in corpus::suites(&corpus::Bindings::default()) {
        let a = run_suite(&suite, &params);
        let b = run_suite(&suite, &params);
        assert_eq!(a, b);
        let text = |rs: &[propcheck::TestResult]| rs.iter().flat_map(format_text).collect::<Vec<_>>();
        assert_eq!(text(&a), text(&b));
        assert_eq!(format_json(&a), format_json(&b));
    }
}

#[test]
fn outcomes_do_not_depend_on_other_registrations() {
    let params = TestParams::with_seed(seed_from_u64(8));
    let full = corpus::Family::Sum.suite(&corpus::Bindings::default());
    let all = run_suite(&full, &params);
    let mut reversed = full.clone();
    reversed.properties.reverse();
    let mut rev = run_suite(&reversed, &params);
    rev.reverse();
    assert_eq!(all, rev);
    for (i, p) in full.properties.iter().enumerate() {
        let alone = run_suite(&Suite::new("sum", vec![p.clone()]), &params);
        assert_eq!(alone[0], all[i]);
    }
}

/// Every falsified result: the shrunk arguments still fail and no single
/// shrink candidate fails the same way.
#[test]
fn falsified_results_are_shrunk_counterexamples() {
    let max = corpus::MaxImpl::MAD_MAX.f;
    let extra = for_all2("x<100000 || y odd", gen_int32(), gen_int32(), move |x: i32, y: i32| {
        max(x, 0) < 100_000 || y % 2 != 0
    });
    let mut props: Vec<(String, propcheck::Property)> = vec![("x".into(), extra)];
    for s in corpus::suites(&corpus::Bindings::default()) {
        for p in s.properties {
            props.push((s.name.clone(), p));
        }
    }
    for seed in 0..5 {
        let params = TestParams::with_seed(seed_from_u64(seed));
        for (suite, p) in &props {
            let r = run_property(suite, p, &params);
            if let Status::Falsified { shrunk, original, .. } = &r.status {
                assert_eq!(p.check(shrunk), Outcome::False);
                let redo = minimize_with_stats(|a: &[Value]| p.check(a) == Outcome::False, original.clone());
                assert_eq!(&redo.args, shrunk);
                assert!(redo.steps <= 64 * original.len() * log_measure(original));
                for i in 0..shrunk.len() {
                    for c in shrink_value(&shrunk[i]) {
                        let mut t = shrunk.clone();
                        t[i] = c;
                        assert_ne!(p.check(&t), Outcome::False, "{}: {:?}", p.name(), shrunk);
                    }
                }
            }
        }
    }
}
