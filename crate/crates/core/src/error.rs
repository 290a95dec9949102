use alloc::boxed::Box;
use core::fmt;

use crate::glm::FitResult;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A Cholesky pivot was not positive: the matrix is singular or indefinite.
    NotPositiveDefinite { pivot: usize },
    /// The selected design columns are linearly dependent.
    Collinear,
    /// Fisher scoring did not reach the deviance tolerance. The last iterate is kept.
    NotConverged { fit: Box<FitResult> },
    /// A likelihood was evaluated at an invalid boundary (for example a zero residual sum of squares).
    Domain(&'static str),
    /// `loglik_ratio` was called with a reference fit that is not the full model.
    InvalidComparison,
    /// Exhaustive search was requested for more predictors than supported.
    TooManyPredictors { p: usize, max: usize },
    /// FIR or FAR would divide by zero.
    DegenerateDenominator,
    /// Input shapes or values violate a documented precondition.
    InvalidInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot})")
            }
            Error::Collinear => f.write_str("design columns are collinear"),
            Error::NotConverged { fit } => write!(
                f,
                "fisher scoring did not converge after {} iterations",
                fit.iterations
            ),
            Error::Domain(what) => write!(f, "likelihood domain error: {what}"),
            Error::InvalidComparison => {
                f.write_str("log-likelihood ratio needs the full model as reference")
            }
            Error::TooManyPredictors { p, max } => {
                write!(
                    f,
                    "{p} predictors exceed the exhaustive-search limit of {max}"
                )
            }
            Error::DegenerateDenominator => {
                f.write_str("error rates need at least one active and one inactive predictor")
            }
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
        }
    }
}

impl core::error::Error for Error {}
