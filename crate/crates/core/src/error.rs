use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("reflection needs a class of self-intersection -2, got {0}")]
    NotARoot(i64),

    #[error("class search needs a hyperbolic lattice (lambda > 0), got lambda = {0}")]
    NotHyperbolic(i64),

    #[error("self-intersection target must be even, got {0}")]
    OddSelfIntersection(i64),

    #[error("infinitely many solutions: {0}")]
    Unbounded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
