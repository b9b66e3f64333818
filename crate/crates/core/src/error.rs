use thiserror::Error;

/// Failure modes shared by every layer of the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("requested depth {requested} exceeds the enumeration limit {limit}")]
    DepthExceeded { requested: usize, limit: usize },
    #[error("word {0:?} is not in the language")]
    NotInLanguage(String),
    #[error("the language is empty: every symbol is stranded")]
    EmptyLanguage,
    #[error("expansion digit {index} cannot be resolved within tolerance")]
    ExpansionUncertain { index: usize },
    #[error("no periodic points of period at most {0}")]
    NoPeriodicPoints(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not synchronising: witness v={v:?}, w={w:?}")]
    NotSynchronising { v: String, w: String },
    #[error("synchronisation cannot be certified at depth {0}")]
    CertExhausted(usize),
    #[error("the gluing precondition fails: {0}")]
    NotSpecified(String),
    #[error("every good word lies on a single periodic orbit")]
    PeriodicG,
    #[error("no parameter pair meets the margin rule at depth {0}")]
    NoValidParameters(usize),
    #[error("loop sums disagree at n={n}: graph {graph} vs words {words}")]
    InconsistentDecipherability { n: usize, graph: f64, words: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
