//! Named properties: boolean claims, implications, and universal
//! quantification over generated values.

use std::cell::Cell;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::sync::{Arc, Once};

use crate::error::EvalError;
use crate::gen::{Gen, Seed, Size};
use crate::value::{Arg, ArgVector, Value, ValueKind};

/// Result of one evaluation of a property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    True,
    False,
    /// The premise of an implication did not hold.
    Discard,
    Error(EvalError),
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::False | Outcome::Error(_))
    }
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }
}

/// Anything a property body may return.
pub trait Testable {
    fn into_outcome(self) -> Outcome;
}

impl Testable for bool {
    fn into_outcome(self) -> Outcome {
        self.into()
    }
}

impl Testable for Outcome {
    fn into_outcome(self) -> Outcome {
        self
    }
}

impl<T: Testable> Testable for Result<T, EvalError> {
    fn into_outcome(self) -> Outcome {
        match self {
            Ok(t) => t.into_outcome(),
            Err(e) => Outcome::Error(e),
        }
    }
}

/// `premise ==> conclusion`. A false premise discards the sample without
/// evaluating the conclusion.
pub fn implies<R: Testable>(premise: bool, conclusion: impl FnOnce() -> R) -> Outcome {
    if premise {
        conclusion().into_outcome()
    } else {
        Outcome::Discard
    }
}

thread_local! {
    static QUIET_PANICS: Cell<bool> = const { Cell::new(false) };
}

fn install_quiet_hook() {
    static HOOK: Once = Once::new();
    HOOK.call_once(|| {
        let previous = panic::take_hook();
        panic::set_hook(Box::new(move |info| {
            if !QUIET_PANICS.with(Cell::get) {
                previous(info);
            }
        }));
    });
}

/// Runs `f`, turning a panic into an [`EvalError`] without printing it.
pub fn catch_eval<R>(f: impl FnOnce() -> R) -> Result<R, EvalError> {
    install_quiet_hook();
    let was = QUIET_PANICS.with(|q| q.replace(true));
    let result = panic::catch_unwind(AssertUnwindSafe(f));
    QUIET_PANICS.with(|q| q.set(was));
    result.map_err(|payload| {
        let message = if let Some(s) = payload.downcast_ref::<&str>() {
            (*s).to_owned()
        } else if let Some(s) = payload.downcast_ref::<String>() {
            s.clone()
        } else {
            "panic with non-string payload".to_owned()
        };
        EvalError::panic(message)
    })
}

/// One quantified slot: its domain kind and the generator that fills it.
#[derive(Clone, Debug)]
pub struct Slot {
    pub kind: ValueKind,
    pub gen: Gen<Value>,
}

impl Slot {
    pub fn new<A: Arg>(gen: Gen<A>) -> Slot {
        Slot { kind: A::KIND, gen: gen.map(A::into_value) }
    }
}

type Body = dyn Fn(&[Value]) -> Outcome + Send + Sync;

/// A named, evaluable claim with 0 to 3 quantified arguments.
#[derive(Clone)]
pub struct Property {
    name: String,
    slots: Vec<Slot>,
    body: Arc<Body>,
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("arity", &self.arity())
            .finish()
    }
}

fn arg<A: Arg>(args: &[Value], i: usize) -> A {
    A::from_value(&args[i]).unwrap_or_else(|| {
        panic!("argument {i} has kind {:?}, expected {:?}", args[i].kind(), A::KIND)
    })
}

impl Property {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot_kinds(&self) -> Vec<ValueKind> {
        self.slots.iter().map(|s| s.kind).collect()
    }

    /// Applies the body to explicit arguments. Panics become `Error`.
    pub fn check(&self, args: &[Value]) -> Outcome {
        catch_eval(|| (self.body)(args)).unwrap_or_else(Outcome::Error)
    }

    /// Draws one value per slot (advancing the seed between draws) and
    /// applies the body. Arity-0 properties ignore seed and size.
    pub fn evaluate(&self, seed: Seed, size: Size) -> (Outcome, ArgVector) {
        let mut s = seed;
        let mut args = Vec::with_capacity(self.slots.len());
        for slot in &self.slots {
            let (v, next) = slot.gen.sample(s, size);
            s = next;
            args.push(v);
        }
        (self.check(&args), args)
    }
}

/// A parameterless claim, evaluated once per run.
pub fn boolean_property<R, F>(name: impl Into<String>, claim: F) -> Property
where
    R: Testable,
    F: Fn() -> R + Send + Sync + 'static,
{
    Property {
        name: name.into(),
        slots: Vec::new(),
        body: Arc::new(move |_| match claim().into_outcome() {
            // Parameterless claims have no premise to discard on.
            Outcome::Discard => Outcome::True,
            other => other,
        }),
    }
}

pub fn for_all1<A, R, F>(name: impl Into<String>, a: Gen<A>, body: F) -> Property
where
    A: Arg,
    R: Testable,
    F: Fn(A) -> R + Send + Sync + 'static,
{
    Property {
        name: name.into(),
        slots: vec![Slot::new(a)],
        body: Arc::new(move |args| body(arg(args, 0)).into_outcome()),
    }
}

pub fn for_all2<A, B, R, F>(name: impl Into<String>, a: Gen<A>, b: Gen<B>, body: F) -> Property
where
    A: Arg,
    B: Arg,
    R: Testable,
    F: Fn(A, B) -> R + Send + Sync + 'static,
{
    Property {
        name: name.into(),
        slots: vec![Slot::new(a), Slot::new(b)],
        body: Arc::new(move |args| body(arg(args, 0), arg(args, 1)).into_outcome()),
    }
}

pub fn for_all3<A, B, C, R, F>(
    name: impl Into<String>,
    a: Gen<A>,
    b: Gen<B>,
    c: Gen<C>,
    body: F,
) -> Property
where
    A: Arg,
    B: Arg,
    C: Arg,
    R: Testable,
    F: Fn(A, B, C) -> R + Send + Sync + 'static,
{
    Property {
        name: name.into(),
        slots: vec![Slot::new(a), Slot::new(b), Slot::new(c)],
        body: Arc::new(move |args| {
            body(arg(args, 0), arg(args, 1), arg(args, 2)).into_outcome()
        }),
    }
}
