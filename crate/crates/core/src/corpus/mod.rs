//! Functions under test, their faulty variants, and the named property
//! suites over them.

pub mod functions;
pub mod suites;

pub use functions::*;
pub use suites::{
    suites, Bindings, CodecImpl, CountImpl, Family, MaxImpl, SumImpl,
};
