use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "parse error at position {position}: unexpected character {found:?} (expected 'a' or 'b')"
    )]
    InvalidSymbol { position: usize, found: char },

    #[error("word of length {len} exceeds the capacity of {capacity} symbols")]
    TooLong { len: usize, capacity: usize },

    #[error("factor length {k} exceeds the set-representation bound {max}")]
    SpectrumTooLarge { k: usize, max: usize },

    #[error("family {family}: {constraint}")]
    FamilyParameter {
        family: &'static str,
        constraint: String,
    },

    #[error("{op}: {constraint}")]
    OutOfRange {
        op: &'static str,
        constraint: String,
    },

    #[error("invalid deleting sequence: {0}")]
    InvalidDeletingSequence(String),

    #[error("word {0} is not a prefix of (ab)^ω")]
    NotAlternating(String),

    #[error(
        "k = {k} exceeds the desk-scale limit {max} ({estimate}); set SCATFACT_MAX_K to override"
    )]
    DeskScale {
        k: usize,
        max: usize,
        estimate: String,
    },

    #[error("query {query} rejected: only strictly balanced queries are answered")]
    UnbalancedQuery { query: String },

    #[error("query {query} has length {len}, oracle answers length {expected}")]
    QueryLength {
        query: String,
        len: usize,
        expected: usize,
    },

    #[error("oracle answers are inconsistent with every candidate word: {0}")]
    InconsistentOracle(String),

    #[error("hidden word is outside a*b*a*b*a*: {0}")]
    NotInFamily(String),
}
