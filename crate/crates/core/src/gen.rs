//! Seeded, sized generation of test values.
//!
//! Every generator is a pure function of a [`Seed`] and a [`Size`]; the same
//! pair always yields the same value, so any run can be replayed from its
//! root seed.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_traits::PrimInt;

use crate::error::UsageError;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer (Stafford variant 13). A bijection on `u64`.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// State of the splittable generator. Values are immutable; every draw
/// returns the advanced seed alongside the output.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed {
    state: u64,
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({:#018x})", self.state)
    }
}

impl Seed {
    /// Mixes `raw` into a seed state. Distinct raws give distinct states.
    pub fn from_u64(raw: u64) -> Seed {
        Seed { state: mix64(raw) }
    }

    pub fn state(self) -> u64 {
        self.state
    }

    pub fn next_u64(self) -> (u64, Seed) {
        let state = self.state.wrapping_add(GOLDEN_GAMMA);
        (mix64(state), Seed { state })
    }

    /// Two fresh, independent seeds. Neither equals `self`.
    pub fn split(self) -> (Seed, Seed) {
        let (a, s1) = self.next_u64();
        let (b, _) = s1.next_u64();
        let mut left = Seed { state: a };
        let mut right = Seed { state: mix64(b ^ GOLDEN_GAMMA) };
        // Both outputs are mixer images of distinct inputs; the fix-ups below
        // only matter for astronomically unlikely collisions.
        if left == self {
            left.state = left.state.wrapping_add(1);
        }
        if right == self || right == left {
            right.state = right.state.wrapping_add(2);
        }
        (left, right)
    }
}

pub fn seed_from_u64(raw: u64) -> Seed {
    Seed::from_u64(raw)
}

pub fn next_u64(s: Seed) -> (u64, Seed) {
    s.next_u64()
}

pub fn split(s: Seed) -> (Seed, Seed) {
    s.split()
}

/// Uniform draw from the inclusive range `[lo, hi]` by rejection sampling,
/// so the result is exactly uniform.
pub fn choose_integer<T: PrimInt>(lo: T, hi: T, s: Seed) -> Result<(T, Seed), UsageError> {
    if lo > hi {
        return Err(UsageError::EmptyRange);
    }
    let lo_w = lo.to_i128().expect("primitive integers fit in i128");
    let hi_w = hi.to_i128().expect("primitive integers fit in i128");
    let span = (hi_w - lo_w) as u128 + 1;
    let (offset, next) = uniform_below(span, s);
    let value = T::from(lo_w + offset as i128).expect("offset stays in range");
    Ok((value, next))
}

/// Uniform in `[0, span)` for `1 <= span <= 2^64`.
fn uniform_below(span: u128, mut s: Seed) -> (u64, Seed) {
    if span > u64::MAX as u128 {
        return s.next_u64();
    }
    let span = span as u64;
    // Largest multiple of span representable in u64 arithmetic.
    let zone = u64::MAX - (u64::MAX % span + 1) % span;
    loop {
        let (raw, next) = s.next_u64();
        s = next;
        if raw <= zone {
            return (raw % span, s);
        }
    }
}

/// Structure magnitude for a draw (for example the longest list length).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Size(pub usize);

impl Size {
    pub fn value(self) -> usize {
        self.0
    }
}

type Sampler<T> = dyn Fn(Seed, Size) -> (T, Seed) + Send + Sync;

/// A sized, seeded sampler of `T`.
pub struct Gen<T> {
    sample: Arc<Sampler<T>>,
}

impl<T> Clone for Gen<T> {
    fn clone(&self) -> Self {
        Gen { sample: Arc::clone(&self.sample) }
    }
}

impl<T> fmt::Debug for Gen<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Gen { .. }")
    }
}

impl<T: 'static> Gen<T> {
    pub fn new<F>(f: F) -> Gen<T>
    where
        F: Fn(Seed, Size) -> (T, Seed) + Send + Sync + 'static,
    {
        Gen { sample: Arc::new(f) }
    }

    pub fn sample(&self, seed: Seed, size: Size) -> (T, Seed) {
        (self.sample)(seed, size)
    }

    pub fn constant(value: T) -> Gen<T>
    where
        T: Clone + Send + Sync,
    {
        Gen::new(move |s, _| (value.clone(), s))
    }

    pub fn map<U: 'static, F>(self, f: F) -> Gen<U>
    where
        F: Fn(T) -> U + Send + Sync + 'static,
    {
        Gen::new(move |s, z| {
            let (v, s) = self.sample(s, z);
            (f(v), s)
        })
    }
}

/// Uniform choice among generators.
pub fn one_of<T: 'static>(gens: Vec<Gen<T>>) -> Result<Gen<T>, UsageError> {
    frequency(gens.into_iter().map(|g| (1, g)).collect())
}

/// Weighted choice among generators. Weights must be positive.
pub fn frequency<T: 'static>(weighted: Vec<(u32, Gen<T>)>) -> Result<Gen<T>, UsageError> {
    if weighted.is_empty() {
        return Err(UsageError::NoAlternatives);
    }
    if weighted.iter().any(|(w, _)| *w == 0) {
        return Err(UsageError::NonPositiveWeight);
    }
    let total: u64 = weighted.iter().map(|(w, _)| u64::from(*w)).sum();
    Ok(Gen::new(move |s, z| {
        let (mut pick, s) = choose_integer(0, total - 1, s).expect("total is positive");
        for (w, g) in &weighted {
            let w = u64::from(*w);
            if pick < w {
                return g.sample(s, z);
            }
            pick -= w;
        }
        unreachable!("pick is below the total weight")
    }))
}

pub const INT32_EDGES: [i32; 5] = [0, 1, -1, i32::MAX, i32::MIN];

/// Percentage of `gen_int32` draws taken from [`INT32_EDGES`].
pub const EDGE_PERCENT: u32 = 5;

fn elements<T: Clone + Send + Sync + 'static>(values: Vec<T>) -> Gen<T> {
    assert!(!values.is_empty());
    Gen::new(move |s, _| {
        let (i, s) = choose_integer(0, values.len() - 1, s).expect("nonempty");
        (values[i].clone(), s)
    })
}

/// 32-bit integers: 5% edge values, otherwise uniform over the full range.
/// Ignores size.
pub fn gen_int32() -> Gen<i32> {
    let uniform = Gen::new(|s, _| choose_integer(i32::MIN, i32::MAX, s).expect("valid range"));
    frequency(vec![
        (EDGE_PERCENT, elements(INT32_EDGES.to_vec())),
        (100 - EDGE_PERCENT, uniform),
    ])
    .expect("static weights are positive")
}

/// Integers in a fixed inclusive interval, no edge bias.
pub fn gen_int_range(lo: i32, hi: i32) -> Result<Gen<i32>, UsageError> {
    if lo > hi {
        return Err(UsageError::EmptyRange);
    }
    Ok(Gen::new(move |s, _| choose_integer(lo, hi, s).expect("checked above")))
}

pub const BIGINT_MAX_BITS: u32 = 96;

/// Arbitrary-precision integers of magnitude below 2^96.
///
/// 5% of draws are one of {0, 1, -1}. The rest pick a bit length uniformly
/// in 0..=96 and then a magnitude uniformly below 2^bits, which makes small
/// magnitudes dominate. Sign is a fair coin.
pub fn gen_bigint() -> Gen<BigInt> {
    let edges = elements(vec![BigInt::from(0), BigInt::from(1), BigInt::from(-1)]);
    let body = Gen::new(|s, _| {
        let (bits, mut s) = choose_integer(0u32, BIGINT_MAX_BITS, s).expect("valid range");
        let mut magnitude = BigInt::from(0);
        let mut remaining = bits;
        while remaining > 0 {
            let take = remaining.min(32);
            let (chunk, next) = s.next_u64();
            s = next;
            let chunk = chunk & ((1u64 << take) - 1);
            magnitude = (magnitude << take) + BigInt::from(chunk);
            remaining -= take;
        }
        let (sign_bit, s) = s.next_u64();
        let sign = if sign_bit >> 63 == 1 { Sign::Minus } else { Sign::Plus };
        let value = if sign == Sign::Minus { -magnitude } else { magnitude };
        (value, s)
    });
    frequency(vec![(EDGE_PERCENT, edges), (100 - EDGE_PERCENT, body)])
        .expect("static weights are positive")
}

/// Fair coin from the top bit of a draw.
pub fn gen_bool() -> Gen<bool> {
    Gen::new(|s, _| {
        let (raw, s) = s.next_u64();
        (raw >> 63 == 1, s)
    })
}

/// Lists with length uniform in `[0, size]`, elements drawn independently.
pub fn gen_list<T: 'static>(elem: Gen<T>) -> Gen<Vec<T>> {
    Gen::new(move |s, z| {
        let (len, mut s) = choose_integer(0, z.value(), s).expect("size is non-negative");
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let (v, next) = elem.sample(s, z);
            s = next;
            out.push(v);
        }
        (out, s)
    })
}
