//! The functions under test and their faulty variants.
//!
//! All 32-bit arithmetic wraps, reproducing two's-complement overflow.

use num_integer::Integer;

use crate::error::EvalError;

pub fn max_fn(x: i32, y: i32) -> i32 {
    if x > y {
        x
    } else {
        y
    }
}

pub fn mad_max_fn(x: i32, y: i32) -> i32 {
    if x == 42 && y == 42 {
        43
    } else {
        max_fn(x, y)
    }
}

/// Sums 1..=n with a wrapping accumulator; non-positive n gives 0.
pub fn sum_iter(n: i32) -> i32 {
    let mut temp = 0i32;
    for i in 1..=n {
        temp = temp.wrapping_add(i);
    }
    temp
}

/// `n(n+1)/2` computed exactly, then reduced modulo 2^32. Agrees with
/// [`sum_iter`] everywhere.
pub fn sum_fast(n: i32) -> i32 {
    if n < 1 {
        return 0;
    }
    let n = i128::from(n);
    (n * (n + 1) / 2) as u32 as i32
}

/// The closed form with every step in wrapping 32-bit arithmetic.
pub fn sum_closed(n: i32) -> i32 {
    if n < 1 {
        0
    } else {
        n.wrapping_add(1).wrapping_mul(n) / 2
    }
}

/// Largest argument [`sum_rec`] accepts before reporting a resource error.
pub const REC_DEPTH_LIMIT: i32 = 1_000_000_000;

/// Above this magnitude the loop-based sums are replaced by [`sum_fast`].
pub const FAST_SUM_THRESHOLD: i32 = 10_000_000;

/// `if n < 1 then 0 else n + sum_rec(n - 1)`, unrolled into a descending
/// accumulation. Arguments deeper than [`REC_DEPTH_LIMIT`] are refused.
pub fn sum_rec(n: i32) -> Result<i32, EvalError> {
    if n > REC_DEPTH_LIMIT {
        return Err(EvalError::resource(format!(
            "recursion depth {n} exceeds limit {REC_DEPTH_LIMIT}"
        )));
    }
    let mut acc = 0i32;
    let mut k = n;
    while k >= 1 {
        acc = acc.wrapping_add(k);
        k -= 1;
    }
    Ok(acc)
}

/// Frames available to [`sum_rec_native`].
pub const NATIVE_DEPTH_LIMIT: u32 = 10_000;

/// Genuinely recursive form. Runs out of frames once `n` exceeds
/// [`NATIVE_DEPTH_LIMIT`], which surfaces as a resource error.
pub fn sum_rec_native(n: i32) -> Result<i32, EvalError> {
    fn go(n: i32, depth: u32) -> Result<i32, EvalError> {
        if n < 1 {
            return Ok(0);
        }
        if depth >= NATIVE_DEPTH_LIMIT {
            return Err(EvalError::resource(format!(
                "stack overflow: recursion deeper than {NATIVE_DEPTH_LIMIT} frames"
            )));
        }
        Ok(n.wrapping_add(go(n - 1, depth + 1)?))
    }
    go(n, 0)
}

pub fn count_fn(number: i32, list: &[i32]) -> i32 {
    match list {
        [] => 0,
        [number2, rest @ ..] => {
            if number == *number2 {
                1i32.wrapping_add(count_fn(number, rest))
            } else {
                count_fn(number, rest)
            }
        }
    }
}

/// Counts every element regardless of `number`.
pub fn mad_count_fn(_number: i32, list: &[i32]) -> i32 {
    match list {
        [] => 0,
        [_, rest @ ..] => 1i32.wrapping_add(mad_count_fn(_number, rest)),
    }
}

/// Like [`count_fn`] but the empty list counts as 1.
pub fn dracula_fn(number: i32, list: &[i32]) -> i32 {
    match list {
        [] => 1,
        [number2, rest @ ..] => {
            if number == *number2 {
                1i32.wrapping_add(dracula_fn(number, rest))
            } else {
                dracula_fn(number, rest)
            }
        }
    }
}

/// Least-significant-bit-first binary digits. Non-positive input encodes
/// to the empty list.
pub fn encode<N: Integer + Clone>(n: &N) -> Vec<bool> {
    let two = N::one() + N::one();
    let mut out = Vec::new();
    let mut n = n.clone();
    while n > N::zero() {
        let (q, r) = n.div_rem(&two);
        out.push(r.is_one());
        n = q;
    }
    out
}

/// Accepts non-canonical lists: trailing (most significant) `false`s are
/// ignored.
pub fn decode<N: Integer + Clone>(list: &[bool]) -> N {
    let two = N::one() + N::one();
    list.iter().rev().fold(N::zero(), |acc, &b| {
        let bit = if b { N::one() } else { N::zero() };
        acc * two.clone() + bit
    })
}

/// Bijective numeration: `list` is read with an implicit `true` above its
/// most significant digit, minus one.
pub fn decode_bij<N: Integer + Clone>(list: &[bool]) -> N {
    let mut padded = list.to_vec();
    padded.push(true);
    decode::<N>(&padded) - N::one()
}

/// Inverse of [`decode_bij`]: binary digits of `n + 1` without the leading
/// one. Negative input encodes to the empty list.
pub fn encode_bij<N: Integer + Clone>(n: &N) -> Vec<bool> {
    if *n < N::zero() {
        return Vec::new();
    }
    let mut bits = encode(&(n.clone() + N::one()));
    let top = bits.pop();
    debug_assert_eq!(top, Some(true));
    bits
}

/// Ripple-carry addition of two LSB-first numerals. The result is
/// canonical (no most-significant `false`).
pub fn add_bits(a: &[bool], b: &[bool]) -> Vec<bool> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len + 1);
    let mut carry = false;
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(false);
        let y = b.get(i).copied().unwrap_or(false);
        out.push(x ^ y ^ carry);
        carry = (x && y) || (carry && (x ^ y));
    }
    if carry {
        out.push(true);
    }
    while out.last() == Some(&false) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn max_variants() {
        assert_eq!(max_fn(1, 5), 5);
        assert_eq!(max_fn(1, -3), 1);
        assert_eq!(max_fn(9, 9), 9);
        assert_eq!(mad_max_fn(42, 42), 43);
        assert_eq!(mad_max_fn(1, 5), 5);
        assert_eq!(mad_max_fn(42, 41), 42);
    }

    #[test]
    fn sums() {
        assert_eq!(sum_iter(4), 10);
        assert_eq!(sum_iter(-1), 0);
        assert_eq!(sum_iter(0), 0);
        assert_eq!(sum_iter(65536), -2147450880);
        assert_eq!(sum_fast(65536), -2147450880);
        assert_eq!(sum_fast(4), 10);
        assert_eq!(sum_fast(-5), 0);
        assert_eq!(sum_closed(4), 10);
        assert_eq!(sum_closed(65536), 32768);
        // (65536 * 65535) wraps to -65536 before halving.
        assert_eq!(sum_closed(65535), -32768);
        assert_eq!(sum_closed(-1), 0);
        assert_eq!(sum_rec(3), Ok(6));
        assert_eq!(sum_rec(0), Ok(0));
        assert_eq!(sum_rec(65536), Ok(-2147450880));
        assert!(sum_rec(REC_DEPTH_LIMIT + 1).unwrap_err().is_resource());
        assert_eq!(sum_rec_native(100), Ok(5050));
        assert!(sum_rec_native(20_000).unwrap_err().is_resource());
    }

    #[test]
    fn counts() {
        assert_eq!(count_fn(7, &[7, 1, 7]), 2);
        assert_eq!(count_fn(7, &[]), 0);
        assert_eq!(count_fn(-4, &[-4]), 1);
        assert_eq!(mad_count_fn(7, &[1, 7]), 2);
        assert_eq!(mad_count_fn(7, &[]), 0);
        assert_eq!(mad_count_fn(0, &[1, 2, 3]), 3);
        assert_eq!(dracula_fn(7, &[]), 1);
        assert_eq!(dracula_fn(7, &[7]), 2);
        assert_eq!(dracula_fn(7, &[1]), 1);
    }

    #[test]
    fn binary_codec() {
        assert_eq!(encode(&big(8)), vec![false, false, false, true]);
        assert_eq!(encode(&big(0)), Vec::<bool>::new());
        assert_eq!(encode(&big(2)), vec![false, true]);
        assert_eq!(encode(&big(-5)), Vec::<bool>::new());
        assert_eq!(decode::<BigInt>(&[true, true]), big(3));
        assert_eq!(decode::<BigInt>(&[]), big(0));
        assert_eq!(decode::<BigInt>(&[false]), big(0));
        assert_eq!(encode(&decode::<BigInt>(&[false])), Vec::<bool>::new());
        // Same code over a machine integer.
        assert_eq!(encode(&6u64), vec![false, true, true]);
        assert_eq!(decode::<i64>(&[false, true, true]), 6);
    }

    #[test]
    fn bijective_codec() {
        assert_eq!(decode_bij::<BigInt>(&[]), big(0));
        assert_eq!(decode_bij::<BigInt>(&[false]), big(1));
        assert_eq!(decode_bij::<BigInt>(&[true]), big(2));
        assert_eq!(encode_bij(&big(3)), vec![false, false]);
        assert_eq!(encode_bij(&big(0)), Vec::<bool>::new());
    }

    #[test]
    fn addition() {
        assert_eq!(add_bits(&[], &[true]), vec![true]);
        assert_eq!(add_bits(&[true], &[true]), vec![false, true]);
        assert_eq!(add_bits(&encode(&5u32), &encode(&7u32)), encode(&12u32));
        assert_eq!(add_bits(&[false, false], &[false]), Vec::<bool>::new());
    }
}
