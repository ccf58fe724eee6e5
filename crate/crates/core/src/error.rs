use thiserror::Error;

/// Errors raised by the exact and floating-point routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("field mismatch: sqrt({left}) vs sqrt({right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element is not integral in Z[sqrt(D)]: {0}")]
    NotIntegral(String),

    #[error("element is a rational integer (b = 0); it has no quadratic companion matrix")]
    RationalElement,

    #[error("singular curve: x^3+ax^2+bx+c has a repeated root")]
    SingularCurve,

    #[error("not an endomorphism of this pseudo-lattice: {0}")]
    NotEndomorphism(String),

    #[error("doubling lands at the point at infinity (y = 0)")]
    PointAtInfinity,

    #[error("point is not on the curve (residual {0})")]
    OffCurve(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for malformed textual input as opposed to a domain failure.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
