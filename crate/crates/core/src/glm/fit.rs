use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::likelihood::loglik_from_eta;
use super::{log1pexp, logistic, Dataset, Family, FitResult, SubsetMask};
use crate::error::{Error, Result};
use crate::numerics::SpdMatrix;

/// Fisher scoring stops once `|D_new − D_old| / (|D_new| + 0.1)` falls below this.
pub const DEVIANCE_TOL: f64 = 1e-8;
pub const MAX_ITERATIONS: u32 = 50;
const MAX_HALVINGS: u32 = 30;

/// Maximum-likelihood fit of the subset model `mask` (intercept always included).
///
/// Gaussian models are solved in closed form. Binomial and Poisson models use
/// Fisher scoring (IRLS) started from the usual adjusted responses
/// `(y + 1/2) / (m + 1)` and `y + 1/10`. A fit that misses the deviance
/// tolerance within [`MAX_ITERATIONS`] is returned as
/// [`Error::NotConverged`] carrying the last iterate.
pub fn fit(data: &Dataset, mask: SubsetMask) -> Result<FitResult> {
    if !mask.is_subset_of(data.full_mask()) {
        return Err(Error::InvalidInput(
            "mask selects predictors outside the dataset",
        ));
    }
    let design = Design {
        cols: data.columns_of(mask),
        n: data.n(),
    };
    let (beta, iterations, converged) = match data.family() {
        Family::Gaussian => (least_squares(&design, data.y())?, 1, true),
        family => scoring(&design, data.y(), family)?,
    };
    let eta = design.linear_predictor(&beta);
    let loglik = loglik_from_eta(data.family(), data.y(), &eta)?;

    let mut beta_aug = vec![0.0; data.p() + 1];
    beta_aug[0] = beta[0];
    for (j, b) in mask.iter().zip(&beta[1..]) {
        beta_aug[j + 1] = *b;
    }
    let result = FitResult {
        mask,
        beta_aug,
        loglik,
        iterations,
        converged,
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::NotConverged {
            fit: Box::new(result),
        })
    }
}

struct Design<'a> {
    cols: Vec<&'a [f64]>,
    n: usize,
}

impl Design<'_> {
    fn width(&self) -> usize {
        self.cols.len() + 1
    }

    fn linear_predictor(&self, beta: &[f64]) -> Vec<f64> {
        let mut eta = vec![beta[0]; self.n];
        for (col, &b) in self.cols.iter().zip(&beta[1..]) {
            for (e, &x) in eta.iter_mut().zip(col.iter()) {
                *e += b * x;
            }
        }
        eta
    }

    /// Solves the weighted normal equations `XᵀWX β = XᵀW z`.
    fn weighted_solve(&self, w: &[f64], z: &[f64]) -> Result<Vec<f64>> {
        let k = self.width();
        let mut gram = SpdMatrix::zeros(k);
        let mut rhs = vec![0.0; k];
        // column a of W X, with the intercept column first
        let mut wcol = vec![0.0; self.n];
        for a in 0..k {
            if a == 0 {
                wcol.copy_from_slice(w);
            } else {
                for ((t, &wi), &x) in wcol.iter_mut().zip(w).zip(self.cols[a - 1].iter()) {
                    *t = wi * x;
                }
            }
            gram.set_sym(a, 0, wcol.iter().sum());
            for b in 1..=a {
                gram.set_sym(a, b, dot(&wcol, self.cols[b - 1]));
            }
            rhs[a] = dot(&wcol, z);
        }
        match gram.cholesky() {
            Ok(chol) => Ok(chol.solve(&rhs)),
            Err(Error::NotPositiveDefinite { .. }) => Err(Error::Collinear),
            Err(e) => Err(e),
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

fn least_squares(design: &Design<'_>, y: &[f64]) -> Result<Vec<f64>> {
    let ones = vec![1.0; design.n];
    design.weighted_solve(&ones, y)
}

/// Per-observation quantities for one scoring step.
struct Working {
    weight: Vec<f64>,
    response: Vec<f64>,
}

fn working(family: Family, y: &[f64], eta: &[f64]) -> Working {
    let mut weight = Vec::with_capacity(y.len());
    let mut response = Vec::with_capacity(y.len());
    for (&v, &e) in y.iter().zip(eta) {
        let (mu, var) = match family {
            Family::Binomial { trials } => {
                let m = f64::from(trials);
                let pi = logistic(e);
                (m * pi, m * (pi * (1.0 - pi)).max(f64::EPSILON))
            }
            Family::Poisson => {
                let mu = libm::exp(e);
                (mu, mu.max(f64::EPSILON))
            }
            Family::Gaussian => (e, 1.0),
        };
        weight.push(var);
        response.push(e + (v - mu) / var);
    }
    Working { weight, response }
}

/// `x log x` with the convention `0 log 0 = 0`.
#[inline]
fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * libm::log(x)
    } else {
        0.0
    }
}

/// Residual deviance on the natural-parameter scale, split into a
/// response-only constant and a part that varies with `eta`.
struct Deviance {
    family: Family,
    saturated: f64,
}

impl Deviance {
    fn new(family: Family, y: &[f64]) -> Self {
        let saturated = match family {
            Family::Binomial { trials } => {
                let m = f64::from(trials);
                let mlogm = m * libm::log(m);
                y.iter().map(|&v| xlogx(v) + xlogx(m - v) - mlogm).sum()
            }
            Family::Poisson => y.iter().map(|&v| xlogx(v) - v).sum(),
            Family::Gaussian => 0.0,
        };
        Self { family, saturated }
    }

    fn at(&self, y: &[f64], eta: &[f64]) -> f64 {
        let varying: f64 = match self.family {
            Family::Binomial { trials } => {
                let m = f64::from(trials);
                y.iter()
                    .zip(eta)
                    .map(|(&v, &e)| m * log1pexp(e) - v * e)
                    .sum()
            }
            Family::Poisson => y.iter().zip(eta).map(|(&v, &e)| libm::exp(e) - v * e).sum(),
            Family::Gaussian => return y.iter().zip(eta).map(|(a, b)| (a - b) * (a - b)).sum(),
        };
        2.0 * (self.saturated + varying)
    }
}

fn starting_eta(family: Family, y: &[f64]) -> Vec<f64> {
    y.iter()
        .map(|&v| match family {
            Family::Binomial { trials } => {
                let pi = (v + 0.5) / (f64::from(trials) + 1.0);
                libm::log(pi / (1.0 - pi))
            }
            Family::Poisson => libm::log(v + 0.1),
            Family::Gaussian => v,
        })
        .collect()
}

/// Fisher scoring. Returns `(beta, iterations, converged)`.
fn scoring(design: &Design<'_>, y: &[f64], family: Family) -> Result<(Vec<f64>, u32, bool)> {
    let deviance = Deviance::new(family, y);
    let mut eta = starting_eta(family, y);
    let mut dev = deviance.at(y, &eta);
    let mut beta: Option<Vec<f64>> = None;

    for iter in 1..=MAX_ITERATIONS {
        let wk = working(family, y, &eta);
        let mut candidate = match design.weighted_solve(&wk.weight, &wk.response) {
            Ok(b) => b,
            // Weights collapsed after a first successful step: keep the last iterate.
            Err(Error::Collinear) if beta.is_some() => {
                return Ok((beta.unwrap_or_default(), iter - 1, false));
            }
            Err(e) => return Err(e),
        };
        let mut cand_eta = design.linear_predictor(&candidate);
        let mut cand_dev = deviance.at(y, &cand_eta);

        if let Some(prev) = &beta {
            let mut halvings = 0;
            while (!cand_dev.is_finite() || cand_dev > dev + 1e-12 * (dev.abs() + 1.0))
                && halvings < MAX_HALVINGS
            {
                for (c, p) in candidate.iter_mut().zip(prev) {
                    *c = 0.5 * (*c + *p);
                }
                cand_eta = design.linear_predictor(&candidate);
                cand_dev = deviance.at(y, &cand_eta);
                halvings += 1;
            }
        }
        if !cand_dev.is_finite() {
            return match beta {
                Some(b) => Ok((b, iter - 1, false)),
                None => Err(Error::Domain(
                    "deviance is not finite at the first scoring step",
                )),
            };
        }

        let change = (cand_dev - dev).abs() / (cand_dev.abs() + 0.1);
        eta = cand_eta;
        dev = cand_dev;
        beta = Some(candidate);
        if change < DEVIANCE_TOL {
            return Ok((beta.unwrap_or_default(), iter, true));
        }
    }
    Ok((beta.unwrap_or_default(), MAX_ITERATIONS, false))
}
