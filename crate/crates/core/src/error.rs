use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid discriminant {0}: must be negative and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(String),

    #[error("invalid form {0}")]
    InvalidForm(String),

    #[error("class number target {0} is outside the certified range (at most 32)")]
    UnsupportedTarget(u64),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("discriminant {delta} has class number {h}, expected {expected}")]
    WrongClassNumber { delta: i64, h: u64, expected: u64 },

    #[error("discriminant {0} has conductor 1, there is no smaller conductor")]
    NoSmallerConductor(i64),

    #[error("interval subdivision exhausted at depth {0}")]
    DepthExhausted(u32),

    #[error("unknown inequality id {0:?}")]
    UnknownInequality(String),

    #[error("inequality {id:?} with arguments {args:?} is indeterminate at {precision_bits} bits")]
    Indeterminate { id: String, args: Vec<u64>, precision_bits: u32 },

    #[error("inequality {id:?} expects {expected} arguments, got {got}")]
    Arity { id: String, expected: usize, got: usize },

    #[error("value of a real class has an imaginary part bounded away from zero: {0}")]
    NonRealValue(String),

    #[error("could not isolate the squarefree kernel of {0}")]
    KernelUnresolved(String),

    #[error("coefficient cache: {0}")]
    Cache(String),

    #[error("unknown check id {0:?}")]
    UnknownCheck(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
