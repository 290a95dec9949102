//! Dense linear algebra and special functions used by fitting and by the
//! χ² thresholds of the constrained minimum criterion.

mod cholesky;
mod gamma;

pub use cholesky::{solve_spd, Cholesky, SpdMatrix};
pub use gamma::{chisq_cdf, chisq_pdf, chisq_quantile, regularized_gamma_p, std_normal_quantile};
