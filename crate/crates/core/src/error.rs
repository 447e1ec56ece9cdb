use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },

    #[error("jet space of {size} monomials (n = {nvars}, order {order}) exceeds the cap of {cap}")]
    ResourceCap {
        nvars: usize,
        order: u32,
        size: u128,
        cap: usize,
    },

    #[error("non-isolated or uncertified: no power of the maximal ideal lies in the Jacobian ideal up to jet order {last_order}")]
    NotCertified { last_order: u32 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("inadmissible (n, m) = ({n}, {m}): {}", violated.join("; "))]
    Inadmissible {
        n: usize,
        m: u32,
        violated: Vec<String>,
    },

    #[error("not regular: {0}")]
    NotRegular(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownIdentifier { .. }
            | Error::ZeroDenominator { .. }
            | Error::InvalidWeights(_)
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. } => 2,
            Error::Hypothesis(_) | Error::Inadmissible { .. } | Error::NotRegular(_) => 3,
            Error::ResourceCap { .. } | Error::NotCertified { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
