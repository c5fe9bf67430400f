use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("classes belong to different rings")]
    Ownership,
    #[error("unbound bundle atom `{0}`")]
    UnboundAtom(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("negative expected dimension {0}")]
    NegativeDimension(i64),
    #[error("partition {0} does not fit the {1}x{2} box")]
    OutOfBox(String, usize, usize),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("no admissible branch: {0}")]
    Branch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate lattice")]
    Degenerate,
    #[error("glue rejected: {0}")]
    GlueRejected(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
