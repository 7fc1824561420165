use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{p} is not prime")]
    NotPrime { p: u32 },

    #[error("unsupported field: p = {p}, m = {m} (q must be one of 2,3,4,5,7,8,9,11,13,16)")]
    UnsupportedField { p: u32, m: u32 },

    #[error("{0} is not a supported prime power q")]
    UnsupportedQ(u32),

    #[error("element {0} does not lie in the subfield GF(q)")]
    NotInSubfield(String),

    #[error("the zero element has no multiplicative order or inverse")]
    ZeroElement,

    #[error("cannot parse field element {0:?}")]
    ParseElement(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is rank deficient: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("budget exceeded: {needed} > {budget} ({what})")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("{context}: {message}")]
    Precondition {
        context: &'static str,
        message: String,
    },

    #[error("residue at point {index} ({value}) is not a (q+1)-st power; the evaluation set violates the twist hypothesis")]
    ResidueNotNorm { index: usize, value: String },

    #[error("document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(context: &'static str, message: impl Into<String>) -> Error {
    Error::Precondition {
        context,
        message: message.into(),
    }
}
