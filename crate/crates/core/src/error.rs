use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle syntax error at offset {offset}: {message}")]
    CycleSyntax { offset: usize, message: String },

    #[error("group of order {order} exceeds the enumeration cap of {cap} elements")]
    CapExceeded { order: u64, cap: u64 },

    #[error("element {0} is not in the group")]
    NotMember(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("characters belong to different groups")]
    OwnerMismatch,

    #[error("{0} does not normalize the subgroup")]
    NotNormalizing(String),

    #[error("galois exponent {r} is not coprime to conductor {conductor}")]
    NotCoprime { r: i64, conductor: u64 },

    #[error("expected a subgroup of index 2, found index {0}")]
    WrongIndex(u64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unknown group spec `{0}`")]
    UnknownSpec(String),

    #[error("{path}:{line}: {message}")]
    GroupFile {
        path: String,
        line: usize,
        message: String,
    },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    /// An exact identity that must hold failed; this always points at a bug
    /// upstream and aborts the computation.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
