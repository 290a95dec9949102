use core::f64::consts::PI;

use super::{log1pexp, Family, FitResult};
use crate::error::{Error, Result};

/// Sum of the response-only terms of the log density: `Σ log C(m, yᵢ)` for
/// the binomial, `−Σ log yᵢ!` for the Poisson, zero for the Gaussian.
pub fn response_constant(family: Family, y: &[f64]) -> f64 {
    match family {
        Family::Gaussian | Family::Binomial { trials: 1 } => 0.0,
        Family::Binomial { trials } => {
            let m = f64::from(trials);
            let lm = libm::lgamma(m + 1.0);
            y.iter()
                .map(|&v| lm - libm::lgamma(v + 1.0) - libm::lgamma(m - v + 1.0))
                .sum()
        }
        Family::Poisson => -y.iter().map(|&v| libm::lgamma(v + 1.0)).sum::<f64>(),
    }
}

/// Log-likelihood at linear predictors `eta`, constants included.
///
/// The Gaussian variance is profiled at its maximum `RSS / n`. Binomial and
/// Poisson terms are evaluated on the natural-parameter scale, so fitted
/// probabilities of exactly 0 or 1 never arise from finite `eta`.
pub fn loglik_from_eta(family: Family, y: &[f64], eta: &[f64]) -> Result<f64> {
    if y.len() != eta.len() || y.is_empty() {
        return Err(Error::InvalidInput(
            "response and linear predictor lengths differ",
        ));
    }
    let ll = match family {
        Family::Gaussian => {
            let rss: f64 = y.iter().zip(eta).map(|(a, b)| (a - b) * (a - b)).sum();
            if !(rss > 0.0) {
                return Err(Error::Domain("residual sum of squares is zero"));
            }
            let n = y.len() as f64;
            -0.5 * n * (libm::log(2.0 * PI * rss / n) + 1.0)
        }
        Family::Binomial { trials } => {
            let m = f64::from(trials);
            let kernel: f64 = y
                .iter()
                .zip(eta)
                .map(|(&v, &e)| v * e - m * log1pexp(e))
                .sum();
            kernel + response_constant(family, y)
        }
        Family::Poisson => {
            let kernel: f64 = y.iter().zip(eta).map(|(&v, &e)| v * e - libm::exp(e)).sum();
            kernel + response_constant(family, y)
        }
    };
    if ll.is_finite() {
        Ok(ll)
    } else {
        Err(Error::Domain("fitted mean reached an invalid boundary"))
    }
}

/// Log-likelihood of coefficients `beta` (intercept first) for the model
/// with design `columns`; `beta.len()` must be `columns.len() + 1`.
pub fn log_likelihood(family: Family, y: &[f64], columns: &[&[f64]], beta: &[f64]) -> Result<f64> {
    if beta.len() != columns.len() + 1 || columns.iter().any(|c| c.len() != y.len()) {
        return Err(Error::InvalidInput(
            "coefficient and design dimensions differ",
        ));
    }
    let mut eta = alloc::vec![beta[0]; y.len()];
    for (col, &b) in columns.iter().zip(&beta[1..]) {
        for (e, &x) in eta.iter_mut().zip(col.iter()) {
            *e += b * x;
        }
    }
    loglik_from_eta(family, y, &eta)
}

/// Maximum log-likelihood ratio `λ = −2 (l_sub − l_full)` against the full model.
///
/// Negative values, which only arise from rounding or from a full-model fit
/// stopped short of its maximum, are reported as zero.
pub fn loglik_ratio(sub: &FitResult, full: &FitResult) -> Result<f64> {
    if !full.is_full() || sub.beta_aug.len() != full.beta_aug.len() {
        return Err(Error::InvalidComparison);
    }
    Ok((-2.0 * (sub.loglik - full.loglik)).max(0.0))
}
