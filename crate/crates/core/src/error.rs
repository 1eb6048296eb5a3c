use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relations contain a cycle through {0:?} and {1:?}")]
    CycleDetected(String, String),
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("gamma expects {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("brace of an arity-{arity} element with {args} arguments")]
    TooManyArguments { arity: usize, args: usize },
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("circle product of two arity-0 elements has no target component")]
    NegativeArity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("scalar rings differ between operands")]
    RingMismatch,
    #[error(
        "full Hochschild complex up to degree {max_n} needs {tuples} basis tuples (limit {limit})"
    )]
    TooLarge {
        max_n: usize,
        tuples: usize,
        limit: usize,
    },
    #[error("evaluation needs at least one argument")]
    EmptyArguments,
    #[error("cochain of arity {expected} applied to {got} arguments")]
    ArgumentCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("Witt coboundary is only defined here in degrees 1 and 2, got {0}")]
    UnsupportedDegree(usize),
    #[error("element {0} is not a Maurer-Cartan element")]
    NotMC(&'static str),
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("expected a 2-cochain, got degree {0}")]
    NotTwoCochain(usize),
}

/// Errors surfaced when reading or writing the JSON file formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: line {line}, column {column}: {msg}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Num(#[from] NumError),
}
