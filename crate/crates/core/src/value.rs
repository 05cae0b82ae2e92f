//! Printable, kind-tagged argument values.

use std::fmt;

use num_bigint::BigInt;

/// Domain kinds a quantified slot can range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Int,
    BigInt,
    Bool,
    IntList,
    BoolList,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(i32),
    BigInt(BigInt),
    Bool(bool),
    IntList(Vec<i32>),
    BoolList(Vec<bool>),
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Int(_) => ValueKind::Int,
            Value::BigInt(_) => ValueKind::BigInt,
            Value::Bool(_) => ValueKind::Bool,
            Value::IntList(_) => ValueKind::IntList,
            Value::BoolList(_) => ValueKind::BoolList,
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("List(")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::BigInt(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
            Value::IntList(v) => write_list(f, v),
            Value::BoolList(v) => write_list(f, v),
        }
    }
}

/// The argument vector of one evaluation, in quantifier order.
pub type ArgVector = Vec<Value>;

/// Types that can fill a quantified slot.
pub trait Arg: Clone + Send + Sync + 'static {
    const KIND: ValueKind;
    fn into_value(self) -> Value;
    fn from_value(value: &Value) -> Option<Self>;
}

macro_rules! impl_arg {
    ($ty:ty, $variant:ident) => {
        impl Arg for $ty {
            const KIND: ValueKind = ValueKind::$variant;
            fn into_value(self) -> Value {
                Value::$variant(self)
            }
            fn from_value(value: &Value) -> Option<Self> {
                match value {
                    Value::$variant(v) => Some(v.clone()),
                    _ => None,
                }
            }
        }
    };
}

impl_arg!(i32, Int);
impl_arg!(BigInt, BigInt);
impl_arg!(bool, Bool);
impl_arg!(Vec<i32>, IntList);
impl_arg!(Vec<bool>, BoolList);
