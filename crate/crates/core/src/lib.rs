//! Property-based testing: seeded generators, shrinking, a small property
//! algebra, and a runner with text and JSON reports.
//!
//! Bundled with it is a corpus of small functions (maximum, summation with
//! 32-bit overflow, list counting, binary numerals), deliberately faulty
//! variants of them, and named property suites. The [`killmatrix`] module
//! evaluates every property against every variant, randomly or exhaustively
//! over a finite domain, to show which properties tell the variants apart.
//!
//! Integer shrinking and the numeral codecs are generic over
//! [`num_integer::Integer`]; the aliases below name the concrete types the
//! corpus uses.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod gen;
pub mod killmatrix;
pub mod prop;
pub mod runner;
pub mod shrink;
pub mod value;

/// 32-bit two's-complement integer; corpus arithmetic on it wraps.
pub type I32 = i32;
/// Arbitrary-precision integer.
pub type BigIntVal = num_bigint::BigInt;
/// Least-significant-digit-first binary numeral.
pub type BitList = Vec<bool>;
pub type IntList = Vec<I32>;

pub use error::{EvalError, EvalErrorKind, UsageError};
pub use gen::{Gen, Seed, Size};
pub use killmatrix::{Cell, ExhaustiveDomain, IntDomain, KillMatrix, Mode};
pub use prop::{boolean_property, for_all1, for_all2, for_all3, implies, Outcome, Property};
pub use runner::{Status, Suite, TestParams, TestResult};
pub use value::{ArgVector, Value, ValueKind};
