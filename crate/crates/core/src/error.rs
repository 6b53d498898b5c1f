use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("Euler check failed: component {component} traces {faces} faces but {crossings} crossings require {expected}")]
    NonRealizable {
        component: usize,
        faces: usize,
        crossings: usize,
        expected: usize,
    },
    #[error("outer face: {0}")]
    Outer(String),
    #[error("base edge: {0}")]
    BaseEdge(String),
    #[error("diagram has {0} strands, a single closed curve is required")]
    MultiStrand(usize),
    #[error("Alexander numbering inconsistent: {0}")]
    Inconsistent(String),
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("movie: {0}")]
    Movie(String),
    #[error("sampling: {0}")]
    Sampling(String),
    #[error("degree mismatch: cochain of degree {cochain} evaluated on chain of degree {chain}")]
    DegreeMismatch { cochain: usize, chain: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
