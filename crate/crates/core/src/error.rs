use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// Some letter occurs more than three times. LSRS+(d) and FT(d) are
    /// NP-complete from d = 4 on, so no polynomial solver is offered.
    #[error(
        "occurrence bound exceeded: letter {letter:?} occurs {count} times (at most 3 supported; \
         FT(4) is NP-complete)"
    )]
    OccurrenceBound { letter: String, count: usize },

    #[error("budget exceeded: {what} allows n <= {max}, got {n}")]
    Budget { what: &'static str, n: usize, max: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid SAT instance: {0}")]
    InvalidInstance(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
}
