use thiserror::Error;

/// Misuse of the library or CLI surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsageError {
    #[error("empty range: lower bound exceeds upper bound")]
    EmptyRange,
    #[error("no alternatives to choose from")]
    NoAlternatives,
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown variant `{variant}` for family `{family}`")]
    UnknownVariant { family: String, variant: String },
    #[error("variant list is empty")]
    NoVariants,
    #[error("matrix dimensions differ: {0}")]
    DimensionMismatch(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid matrix document: {0}")]
    InvalidDocument(String),
}

/// Why a single property evaluation could not produce a truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalErrorKind {
    /// The body panicked (division by zero, failed unwrap, ...).
    Panic,
    /// A recursion or iteration limit was exceeded.
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Error)]
#[error("{message}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub message: String,
}

impl EvalError {
    pub fn panic(message: impl Into<String>) -> Self {
        let message = non_empty(message.into());
        EvalError { kind: EvalErrorKind::Panic, message }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        let message = non_empty(message.into());
        EvalError { kind: EvalErrorKind::Resource, message }
    }

    pub fn is_resource(&self) -> bool {
        self.kind == EvalErrorKind::Resource
    }
}

fn non_empty(message: String) -> String {
    if message.is_empty() {
        "evaluation failed".to_owned()
    } else {
        message
    }
}
