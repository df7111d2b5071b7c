use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring elements or matrices over different rings")]
    RingMismatch,
    #[error("element is not a unit (valuation {valuation:?})")]
    NotAUnit { valuation: Option<u32> },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precision exhausted: pivot of valuation {valuation} at precision {precision} (guard {guard})")]
    PrecisionExhausted { valuation: u32, precision: u32, guard: u32 },
    #[error("no solution: obstruction at Smith index {index}")]
    NoSolution { index: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid subgroup index {index} for a group of order p^{n}")]
    InvalidSubgroup { index: usize, n: u32 },
    #[error("residue matrix is not unipotent")]
    NotUnipotent,
    #[error("idempotent lifting did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("residue idempotent has no equivariant lift: {0}")]
    NoEquivariantLift(String),
    #[error("restriction is not a permutation module: {0}")]
    NotPermutationRestriction(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("permutation basis extraction failed: {0}")]
    ExtractionFailed(String),
    #[error("lattice does not lift to precision {precision}: {reason}")]
    NoLift { precision: u32, reason: String },
    #[error("result changed between precision {low} and {high}: {what}")]
    Unstable { low: u32, high: u32, what: String },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
