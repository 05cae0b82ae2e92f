//! Shrink candidates and greedy minimization of counterexamples.
//!
//! Measures: integers by absolute value (0 is smallest), booleans with
//! `false < true`, lists by length and then elementwise. Every candidate is
//! strictly smaller than its input, which bounds the minimization loop.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::value::{ArgVector, Value};

/// Candidates `x - t` for `t` in `x, x/2, x/4, ...` (truncating, stopping
/// before zero), duplicates and `x` itself removed, order preserved.
pub fn shrink_integer<N: Integer + Clone>(x: &N) -> Vec<N> {
    let two = N::one() + N::one();
    let mut out: Vec<N> = Vec::new();
    let mut t = x.clone();
    while !t.is_zero() {
        let candidate = x.clone() - t.clone();
        if candidate != *x && !out.contains(&candidate) {
            out.push(candidate);
        }
        t = t / two.clone();
    }
    out
}

pub fn shrink_int(x: i32) -> Vec<i32> {
    shrink_integer(&x)
}

pub fn shrink_bigint(x: &BigInt) -> Vec<BigInt> {
    shrink_integer(x)
}

pub fn shrink_bool(b: bool) -> Vec<bool> {
    if b {
        vec![false]
    } else {
        Vec::new()
    }
}

/// Chunk removals (lengths n, ⌈n/2⌉, ⌈n/4⌉, …, 1 at every aligned offset,
/// front to back) followed by per-position element shrinks.
pub fn shrink_list<T, F>(list: &[T], elem_shrink: F) -> Vec<Vec<T>>
where
    T: Clone,
    F: Fn(&T) -> Vec<T>,
{
    let n = list.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut divisor = 1usize;
    loop {
        let chunk = n.div_ceil(divisor);
        let mut start = 0;
        while start < n {
            let end = (start + chunk).min(n);
            let mut candidate = Vec::with_capacity(n - (end - start));
            candidate.extend_from_slice(&list[..start]);
            candidate.extend_from_slice(&list[end..]);
            out.push(candidate);
            start += chunk;
        }
        if chunk == 1 {
            break;
        }
        divisor *= 2;
    }
    for (i, item) in list.iter().enumerate() {
        for smaller in elem_shrink(item) {
            let mut candidate = list.to_vec();
            candidate[i] = smaller;
            out.push(candidate);
        }
    }
    out
}

pub fn shrink_value(value: &Value) -> Vec<Value> {
    match value {
        Value::Int(x) => shrink_int(*x).into_iter().map(Value::Int).collect(),
        Value::BigInt(x) => shrink_bigint(x).into_iter().map(Value::BigInt).collect(),
        Value::Bool(b) => shrink_bool(*b).into_iter().map(Value::Bool).collect(),
        Value::IntList(l) => shrink_list(l, |x| shrink_int(*x))
            .into_iter()
            .map(Value::IntList)
            .collect(),
        Value::BoolList(l) => shrink_list(l, |b| shrink_bool(*b))
            .into_iter()
            .map(Value::BoolList)
            .collect(),
    }
}

/// Outcome of [`minimize_with_stats`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub args: ArgVector,
    /// Accepted shrink steps.
    pub steps: usize,
    /// Predicate evaluations spent.
    pub evaluations: usize,
}

/// Greedy first-improvement shrinking, one component at a time, left to
/// right, repeated until a full pass makes no progress. `falsifies` must
/// hold for `initial`.
pub fn minimize<F>(falsifies: F, initial: ArgVector) -> ArgVector
where
    F: FnMut(&[Value]) -> bool,
{
    minimize_with_stats(falsifies, initial).args
}

pub fn minimize_with_stats<F>(mut falsifies: F, initial: ArgVector) -> Minimized
where
    F: FnMut(&[Value]) -> bool,
{
    let mut current = initial;
    let mut steps = 0;
    let mut evaluations = 0;
    loop {
        let mut progressed = false;
        for i in 0..current.len() {
            'component: loop {
                for candidate in shrink_value(&current[i]) {
                    let mut trial = current.clone();
                    trial[i] = candidate;
                    evaluations += 1;
                    if falsifies(&trial) {
                        current = trial;
                        steps += 1;
                        progressed = true;
                        continue 'component;
                    }
                }
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    Minimized { args: current, steps, evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_candidates() {
        assert_eq!(shrink_int(10), vec![0, 5, 8, 9]);
        assert_eq!(shrink_int(0), Vec::<i32>::new());
        assert_eq!(shrink_int(-3), vec![0, -2]);
        assert_eq!(shrink_int(1), vec![0]);
        let min = shrink_int(i32::MIN);
        assert_eq!(min[0], 0);
        assert!(min.iter().all(|c| c.unsigned_abs() < i32::MIN.unsigned_abs()));
    }

    #[test]
    fn bigint_candidates_follow_same_rule() {
        assert_eq!(shrink_bigint(&BigInt::from(1)), vec![BigInt::from(0)]);
        assert!(shrink_bigint(&BigInt::from(0)).is_empty());
        assert_eq!(shrink_bigint(&(BigInt::from(1) << 40))[0], BigInt::from(0));
        let expected: Vec<BigInt> = shrink_int(-1000).into_iter().map(BigInt::from).collect();
        assert_eq!(shrink_bigint(&BigInt::from(-1000)), expected);
    }

    #[test]
    fn bool_candidates() {
        assert_eq!(shrink_bool(true), vec![false]);
        assert!(shrink_bool(false).is_empty());
    }

    #[test]
    fn list_candidates() {
        assert!(shrink_list::<bool, _>(&[], |b| shrink_bool(*b)).is_empty());
        let c = shrink_list(&[true], |b| shrink_bool(*b));
        assert_eq!(c, vec![vec![], vec![false]]);
        let c = shrink_list(&[7, 7], |x| shrink_int(*x));
        assert_eq!(&c[..3], &[vec![], vec![7], vec![7]]);
        let c = shrink_list(&[1, 2, 3], |_| Vec::new());
        assert_eq!(
            c,
            vec![vec![], vec![3], vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2]]
        );
    }

    #[test]
    fn minimize_threshold_and_floor() {
        let out = minimize(
            |v| matches!(v[0], Value::Int(x) if x >= 100),
            vec![Value::Int(660619302)],
        );
        assert_eq!(out, vec![Value::Int(100)]);
        let out = minimize(|_| true, vec![Value::Int(10)]);
        assert_eq!(out, vec![Value::Int(0)]);
    }
}
