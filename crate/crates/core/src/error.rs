use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("W has a nonzero constant term {0}")]
    NonzeroConstant(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("Groebner budget exhausted after {reductions} reductions (limit {limit})")]
    BudgetExceeded { reductions: u64, limit: u64 },

    #[error("d_out * d_in is nonzero at entry ({row}, {col}): {value}")]
    NonzeroComposition { row: usize, col: usize, value: String },

    #[error("curvature mismatch in {product} at entry ({row}, {col}): expected {expected}, found {found}")]
    CurvatureMismatch { product: String, row: usize, col: usize, expected: String, found: String },

    #[error("morphism is not closed: {0}")]
    NotClosed(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("lift failed: {0}")]
    LiftFailed(String),

    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),

    #[error("variable collision: {0}")]
    VariableCollision(String),

    #[error("denominators do not generate the unit ideal")]
    NotACover,

    #[error("incompatible restrictions: {0}")]
    IncompatibleRestrictions(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True when the error comes from a resource guard rather than from the input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    /// True when the input was well formed but a mathematical check failed.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::CurvatureMismatch { .. }
                | Error::NonzeroComposition { .. }
                | Error::NotClosed(_)
                | Error::NotCocycle(_)
                | Error::LiftFailed(_)
                | Error::PresentationMismatch(_)
                | Error::NotACover
                | Error::IncompatibleRestrictions(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
