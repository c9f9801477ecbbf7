use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("endomorphism ring has dimension {dim} over F_{p}, beyond the search bound p^{bound}")]
    EndTooLarge { dim: usize, p: u32, bound: u32 },
    #[error("module {0} is not isomorphic to a sum of the listed indecomposables")]
    UnknownSummand(String),
    #[error("budget exceeded after {classes} classes ({reason})")]
    BudgetExceeded { classes: usize, reason: String },
    #[error("closure audit failed: {0}")]
    AuditFailed(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
