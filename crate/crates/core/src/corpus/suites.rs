//! Named property suites, each bound to a chosen implementation so the same
//! claims can be re-aimed at faulty variants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::functions::*;
use crate::error::{EvalError, UsageError};
use crate::gen::{gen_bigint, gen_bool, gen_int32, gen_list};
use crate::prop::{boolean_property, for_all1, for_all2, for_all3, implies, Property};
use crate::runner::Suite;

pub type MaxFn = fn(i32, i32) -> i32;
pub type SumFn = fn(i32) -> Result<i32, EvalError>;
pub type CountFn = fn(i32, &[i32]) -> i32;
pub type EncodeFn = fn(&BigInt) -> Vec<bool>;
pub type DecodeFn = fn(&[bool]) -> BigInt;
pub type AddFn = fn(&[bool], &[bool]) -> Vec<bool>;

#[derive(Clone, Copy, Debug)]
pub struct MaxImpl {
    pub name: &'static str,
    pub f: MaxFn,
}

#[derive(Clone, Copy, Debug)]
pub struct SumImpl {
    pub name: &'static str,
    pub f: SumFn,
}

#[derive(Clone, Copy, Debug)]
pub struct CountImpl {
    pub name: &'static str,
    pub f: CountFn,
}

#[derive(Clone, Copy, Debug)]
pub struct CodecImpl {
    pub name: &'static str,
    pub encode: EncodeFn,
    pub decode: DecodeFn,
}

fn with_fast_path(n: i32, slow: impl FnOnce(i32) -> Result<i32, EvalError>) -> Result<i32, EvalError> {
    if n.unsigned_abs() > FAST_SUM_THRESHOLD.unsigned_abs() {
        Ok(sum_fast(n))
    } else {
        slow(n)
    }
}

impl MaxImpl {
    pub const MAX: MaxImpl = MaxImpl { name: "max", f: max_fn };
    pub const MAD_MAX: MaxImpl = MaxImpl { name: "mad_max", f: mad_max_fn };
}

impl SumImpl {
    /// The loop, with [`sum_fast`] standing in above the runtime threshold.
    pub const ITER: SumImpl = SumImpl {
        name: "sum_iter",
        f: |n| with_fast_path(n, |n| Ok(sum_iter(n))),
    };
    pub const CLOSED: SumImpl = SumImpl { name: "sum_closed", f: |n| Ok(sum_closed(n)) };
    /// Depth-checked recursion; accumulation above the threshold uses
    /// [`sum_fast`].
    pub const REC: SumImpl = SumImpl {
        name: "sum_rec",
        f: |n| {
            if n > REC_DEPTH_LIMIT {
                sum_rec(n)
            } else {
                with_fast_path(n, sum_rec)
            }
        },
    };
    pub const REC_NATIVE: SumImpl = SumImpl { name: "sum_rec", f: sum_rec_native };
}

impl CountImpl {
    pub const COUNT: CountImpl = CountImpl { name: "count", f: count_fn };
    pub const MAD_COUNT: CountImpl = CountImpl { name: "mad_count", f: mad_count_fn };
    pub const DRACULA: CountImpl = CountImpl { name: "dracula", f: dracula_fn };
}

impl CodecImpl {
    pub const BINARY: CodecImpl = CodecImpl {
        name: "binary",
        encode: |n| encode(n),
        decode: |l| decode(l),
    };
    pub const BIJECTIVE: CodecImpl = CodecImpl {
        name: "bijective",
        encode: |n| encode_bij(n),
        decode: |l| decode_bij(l),
    };
}

/// Implementations every suite is bound to.
#[derive(Clone, Copy, Debug)]
pub struct Bindings {
    pub max: MaxImpl,
    pub sum: SumImpl,
    pub count: CountImpl,
    pub codec: CodecImpl,
    pub codec_bij: CodecImpl,
    pub add: AddFn,
}

impl Default for Bindings {
    fn default() -> Self {
        Bindings {
            max: MaxImpl::MAX,
            sum: SumImpl::ITER,
            count: CountImpl::COUNT,
            codec: CodecImpl::BINARY,
            codec_bij: CodecImpl::BIJECTIVE,
            add: add_bits,
        }
    }
}

/// A suite family: one suite definition plus its shipped variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Max,
    Sum,
    Count,
    Codec,
    CodecBij,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Max, Family::Sum, Family::Count, Family::Codec, Family::CodecBij];

    pub fn name(self) -> &'static str {
        match self {
            Family::Max => "max",
            Family::Sum => "sum",
            Family::Count => "count",
            Family::Codec => "codec",
            Family::CodecBij => "codec_bij",
        }
    }

    pub fn topic(self) -> &'static str {
        match self {
            Family::Max => "a simple function: maximum of two integers",
            Family::Sum => "functions on numbers: summing 1..n with 32-bit overflow",
            Family::Count => "functions on lists: counting occurrences",
            Family::Codec => "functions with an inverse: binary numerals",
            Family::CodecBij => "bijective numerals and numeral addition",
        }
    }

    /// Variant names, reference implementation first.
    pub fn variant_names(self) -> &'static [&'static str] {
        match self {
            Family::Max => &["max", "mad_max"],
            Family::Sum => &["sum_iter", "sum_closed", "sum_rec"],
            Family::Count => &["count", "mad_count", "dracula"],
            Family::Codec => &["binary", "bijective"],
            Family::CodecBij => &["bijective"],
        }
    }

    /// Bindings with this family's slot replaced by the named variant.
    /// `native_recursion` selects the genuinely recursive `sum_rec`.
    pub fn bind(self, variant: &str, native_recursion: bool) -> Result<Bindings, UsageError> {
        let mut b = Bindings::default();
        self.rebind(&mut b, variant, native_recursion)?;
        Ok(b)
    }

    /// Replaces this family's slot of `b` by the named variant.
    pub fn rebind(
        self,
        b: &mut Bindings,
        variant: &str,
        native_recursion: bool,
    ) -> Result<(), UsageError> {
        match (self, variant) {
            (Family::Max, "max") => b.max = MaxImpl::MAX,
            (Family::Max, "mad_max") => b.max = MaxImpl::MAD_MAX,
            (Family::Sum, "sum_iter") => b.sum = SumImpl::ITER,
            (Family::Sum, "sum_closed") => b.sum = SumImpl::CLOSED,
            (Family::Sum, "sum_rec") => {
                b.sum = if native_recursion { SumImpl::REC_NATIVE } else { SumImpl::REC }
            }
            (Family::Count, "count") => b.count = CountImpl::COUNT,
            (Family::Count, "mad_count") => b.count = CountImpl::MAD_COUNT,
            (Family::Count, "dracula") => b.count = CountImpl::DRACULA,
            (Family::Codec, "binary") => b.codec = CodecImpl::BINARY,
            (Family::Codec, "bijective") => b.codec = CodecImpl::BIJECTIVE,
            (Family::CodecBij, "bijective") => b.codec_bij = CodecImpl::BIJECTIVE,
            _ => {
                return Err(UsageError::UnknownVariant {
                    family: self.name().to_owned(),
                    variant: variant.to_owned(),
                })
            }
        }
        Ok(())
    }

    pub fn suite(self, bindings: &Bindings) -> Suite {
        match self {
            Family::Max => max_suite(bindings.max),
            Family::Sum => sum_suite(bindings.sum),
            Family::Count => count_suite(bindings.count),
            Family::Codec => codec_suite(bindings.codec),
            Family::CodecBij => codec_bij_suite(bindings.codec_bij, bindings.add),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UsageError::UnknownFamily(s.to_owned()))
    }
}

/// Every suite, bound to `bindings`, in canonical order.
pub fn suites(bindings: &Bindings) -> Vec<Suite> {
    Family::ALL.iter().map(|f| f.suite(bindings)).collect()
}

pub fn max_suite(imp: MaxImpl) -> Suite {
    let max = imp.f;
    let props = vec![
        boolean_property("Use cases for max", move || {
            max(1, 5) == 5 && max(1, 1) == 1 && max(3, 2) == 3 && max(3, -1) == 3 && max(1, -3) == 1
        }),
        for_all2("Symmetry", gen_int32(), gen_int32(), move |x: i32, y: i32| {
            max(x, y) == max(y, x)
        }),
        for_all1("max(x,x)=x", gen_int32(), move |x: i32| max(x, x) == x),
        for_all2("Upper bound (2)", gen_int32(), gen_int32(), move |x: i32, y: i32| {
            x <= max(x, y) && y <= max(x, y)
        }),
        for_all2("Upper bound (1)", gen_int32(), gen_int32(), move |x: i32, y: i32| {
            x <= max(x, y)
        }),
        for_all3(
            "Least upper bound",
            gen_int32(),
            gen_int32(),
            gen_int32(),
            move |x: i32, y: i32, u: i32| implies(x <= u && y <= u, || max(x, y) <= u),
        ),
        for_all2("Our implementation (A)", gen_int32(), gen_int32(), move |x: i32, y: i32| {
            if x > y {
                max(x, y) == x
            } else {
                max(x, y) == y
            }
        }),
        for_all2("Our implementation (B)", gen_int32(), gen_int32(), move |x: i32, y: i32| {
            max(x, y) == (if x > y { x } else { y })
        }),
    ];
    Suite::new("max", props)
}

pub fn sum_suite(imp: SumImpl) -> Suite {
    let sum = imp.f;
    // n + sum(n - 1), wrapping; only called with n >= 1.
    let step = move |n: i32| -> Result<i32, EvalError> { Ok(n.wrapping_add(sum(n - 1)?)) };
    let props = vec![
        boolean_property("Use cases for sum", move || -> Result<bool, EvalError> {
            Ok(sum(-1)? == 0
                && sum(0)? == 0
                && sum(1)? == 1
                && sum(2)? == 3
                && sum(3)? == 6
                && sum(4)? == 10)
        }),
        for_all1("Non-positive (A)", gen_int32(), move |n: i32| {
            implies(n < 1, || Ok::<_, EvalError>(sum(n)? == 0))
        }),
        for_all1("Positive (A)", gen_int32(), move |n: i32| {
            implies(n >= 1, || Ok::<_, EvalError>(sum(n)? == step(n)?))
        }),
        for_all1("Non-positive (B)", gen_int32(), move |n: i32| -> Result<bool, EvalError> {
            Ok(if n < 1 { sum(n)? == 0 } else { true })
        }),
        for_all1("Positive (B)", gen_int32(), move |n: i32| -> Result<bool, EvalError> {
            Ok(if n >= 1 { sum(n)? == step(n)? } else { true })
        }),
        for_all1("Non-positive (C)", gen_int32(), move |n: i32| -> Result<bool, EvalError> {
            Ok(if n < 1 { sum(n)? == 0 } else { true })
        }),
        for_all1("Positive (C)", gen_int32(), move |n: i32| -> Result<bool, EvalError> {
            Ok(if n < 1 { true } else { sum(n)? == step(n)? })
        }),
        for_all1("Sum (A)", gen_int32(), move |n: i32| -> Result<bool, EvalError> {
            Ok(if n < 1 { sum(n)? == 0 } else { sum(n)? == step(n)? })
        }),
        for_all1("Sum (B)", gen_int32(), move |n: i32| -> Result<bool, EvalError> {
            Ok(sum(n)? == if n < 1 { 0 } else { step(n)? })
        }),
        for_all2("Monotonicity", gen_int32(), gen_int32(), move |x: i32, y: i32| {
            implies(x <= y, || Ok::<_, EvalError>(sum(x)? <= sum(y)?))
        }),
    ];
    Suite::new("sum", props)
}

pub fn count_suite(imp: CountImpl) -> Suite {
    let count = imp.f;
    let int_list = || gen_list(gen_int32());
    let cons = |x: i32, list: &[i32]| -> Vec<i32> {
        let mut out = Vec::with_capacity(list.len() + 1);
        out.push(x);
        out.extend_from_slice(list);
        out
    };
    let props = vec![
        boolean_property("Use cases for count", move || {
            count(7, &[]) == 0 && count(7, &[7]) == 1 && count(7, &[1, 7]) == 1 && count(7, &[7, 1, 7]) == 2
        }),
        for_all3(
            "Count/append",
            gen_int32(),
            int_list(),
            int_list(),
            move |number: i32, list1: Vec<i32>, list2: Vec<i32>| {
                let appended: Vec<i32> = list1.iter().chain(&list2).copied().collect();
                count(number, &list1).wrapping_add(count(number, &list2)) == count(number, &appended)
            },
        ),
        for_all2("Instance at start", gen_int32(), int_list(), move |number: i32, list: Vec<i32>| {
            count(number, &list).wrapping_add(1) == count(number, &cons(number, &list))
        }),
        for_all3(
            "Non-instance at start (A)",
            gen_int32(),
            gen_int32(),
            int_list(),
            move |number1: i32, number2: i32, list: Vec<i32>| {
                implies(number1 != number2, || {
                    count(number1, &list) == count(number1, &cons(number2, &list))
                })
            },
        ),
        for_all3(
            "Non-instance at start (B)",
            gen_int32(),
            gen_int32(),
            int_list(),
            move |number1: i32, number2: i32, list: Vec<i32>| {
                if number1 != number2 {
                    count(number1, &list) == count(number1, &cons(number2, &list))
                } else {
                    true
                }
            },
        ),
        for_all3(
            "Something at start (A)",
            gen_int32(),
            gen_int32(),
            int_list(),
            move |number1: i32, number2: i32, list: Vec<i32>| {
                let extended = count(number1, &cons(number2, &list));
                if number1 != number2 {
                    count(number1, &list) == extended
                } else {
                    count(number1, &list).wrapping_add(1) == extended
                }
            },
        ),
        for_all3(
            "Count specification (A)",
            gen_int32(),
            gen_int32(),
            int_list(),
            move |number1: i32, number2: i32, list: Vec<i32>| {
                let nil_case = if list.is_empty() { count(number1, &list) == 0 } else { true };
                let extended = count(number1, &cons(number2, &list));
                let cons_case = if number1 != number2 {
                    count(number1, &list) == extended
                } else {
                    count(number1, &list).wrapping_add(1) == extended
                };
                nil_case && cons_case
            },
        ),
        for_all2(
            "Count specification (B)",
            gen_int32(),
            int_list(),
            move |number1: i32, list: Vec<i32>| match list.as_slice() {
                [] => count(number1, &list) == 0,
                [number2, rest @ ..] => {
                    if number1 != *number2 {
                        count(number1, rest) == count(number1, &list)
                    } else {
                        count(number1, rest).wrapping_add(1) == count(number1, &list)
                    }
                }
            },
        ),
        for_all2(
            "Count specification (C)",
            gen_int32(),
            int_list(),
            move |number1: i32, list: Vec<i32>| match list.as_slice() {
                [] => count(number1, &list) == 0,
                [number2, rest @ ..] => {
                    if number1 == *number2 {
                        count(number1, rest).wrapping_add(1) == count(number1, &list)
                    } else {
                        count(number1, rest) == count(number1, &list)
                    }
                }
            },
        ),
        for_all2(
            "Count specification (D)",
            gen_int32(),
            int_list(),
            move |number1: i32, list: Vec<i32>| {
                count(number1, &list)
                    == match list.as_slice() {
                        [] => 0,
                        [number2, rest @ ..] => {
                            if number1 == *number2 {
                                count(number1, rest).wrapping_add(1)
                            } else {
                                count(number1, rest)
                            }
                        }
                    }
            },
        ),
    ];
    Suite::new("count", props)
}

fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

pub fn codec_suite(imp: CodecImpl) -> Suite {
    let (enc, dec) = (imp.encode, imp.decode);
    let big = |n: i64| BigInt::from(n);
    let props = vec![
        boolean_property("Use cases for encode", move || {
            enc(&big(0)).is_empty()
                && enc(&big(1)) == bits("1")
                && enc(&big(2)) == bits("01")
                && enc(&big(3)) == bits("11")
                && enc(&big(8)) == bits("0001")
        }),
        boolean_property("Use cases for decode", move || {
            dec(&[]) == big(0)
                && dec(&bits("1")) == big(1)
                && dec(&bits("01")) == big(2)
                && dec(&bits("11")) == big(3)
                && dec(&bits("0001")) == big(8)
        }),
        for_all1("n>=0 ==> d(e(n)) == n", gen_bigint(), move |n: BigInt| {
            implies(n >= BigInt::zero(), || dec(&enc(&n)) == n)
        }),
        for_all1("e(d(l)) == l (false!)", gen_list(gen_bool()), move |l: Vec<bool>| {
            enc(&dec(&l)) == l
        }),
        for_all1("n>=0 ==> e(d(e(n))) == e(n)", gen_bigint(), move |n: BigInt| {
            implies(n >= BigInt::zero(), || enc(&dec(&enc(&n))) == enc(&n))
        }),
    ];
    Suite::new("codec", props)
}

/// Bijective codec roundtrips plus addition on the plain binary encoding.
pub fn codec_bij_suite(bij: CodecImpl, add: AddFn) -> Suite {
    let (enc, dec) = (bij.encode, bij.decode);
    let (benc, bdec) = (CodecImpl::BINARY.encode, CodecImpl::BINARY.decode);
    let big = |n: i64| BigInt::from(n);
    let props = vec![
        boolean_property("Use cases for bijective codec", move || {
            enc(&big(0)).is_empty()
                && enc(&big(1)) == bits("0")
                && enc(&big(2)) == bits("1")
                && enc(&big(3)) == bits("00")
                && enc(&big(6)) == bits("11")
                && dec(&[]) == big(0)
                && dec(&bits("0")) == big(1)
                && dec(&bits("10")) == big(4)
                && dec(&bits("000")) == big(7)
        }),
        for_all1("n>=0 ==> d(e(n)) == n", gen_bigint(), move |n: BigInt| {
            implies(n >= BigInt::zero(), || dec(&enc(&n)) == n)
        }),
        for_all1("e(d(l)) == l", gen_list(gen_bool()), move |l: Vec<bool>| enc(&dec(&l)) == l),
        for_all1("n>=0 ==> e(d(e(n))) == e(n)", gen_bigint(), move |n: BigInt| {
            implies(n >= BigInt::zero(), || enc(&dec(&enc(&n))) == enc(&n))
        }),
        for_all2(
            "d(add(a,b)) == d(a) + d(b)",
            gen_list(gen_bool()),
            gen_list(gen_bool()),
            move |a: Vec<bool>, b: Vec<bool>| bdec(&add(&a, &b)) == bdec(&a) + bdec(&b),
        ),
        for_all2(
            "a,b>=0 ==> add(e(a),e(b)) == e(a+b)",
            gen_bigint(),
            gen_bigint(),
            move |a: BigInt, b: BigInt| {
                implies(a >= BigInt::zero() && b >= BigInt::zero(), || {
                    add(&benc(&a), &benc(&b)) == benc(&(&a + &b))
                })
            },
        ),
    ];
    Suite::new("codec_bij", props)
}

/// Property lookup helper for tests and tools.
pub fn property(family: Family, bindings: &Bindings, name: &str) -> Option<Property> {
    family.suite(bindings).property(name).cloned()
}
