use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QesError {
    /// A coefficient of an x-space operator has the wrong parity for the
    /// substitution x² = −a²z.
    #[error("coefficient of d^{order} has a term of degree {degree} with the wrong parity for x^2 = -a^2 z")]
    OddCoefficient { order: usize, degree: usize },

    #[error("operator composition produces order {0}, only order <= 2 is supported")]
    OrderTooHigh(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("quantization constraint not satisfied at level {level}: residual {residual}")]
    ConstraintViolated { level: usize, residual: String },

    #[error("recursion denominator vanishes at k = {k}: {denominator}")]
    SingularDenominator { k: usize, denominator: String },

    #[error("eigenvalue {index} did not converge after {iterations} iterations (bracket width {width:e})")]
    ConvergenceFailure {
        index: usize,
        iterations: usize,
        width: f64,
    },

    #[error("expression is not a rational constant: {0}")]
    NotConstant(String),

    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QesError>;
