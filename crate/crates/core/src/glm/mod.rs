//! Regression families, datasets, subset masks and maximum-likelihood fits.
//!
//! Coefficient vectors use position 0 for the intercept and positions
//! `1..=p` for the predictors in dataset column order. The intercept is
//! always part of a model and is never represented in a [`SubsetMask`].

mod fit;
mod likelihood;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use fit::{fit, DEVIANCE_TOL, MAX_ITERATIONS};
pub use likelihood::{log_likelihood, loglik_from_eta, loglik_ratio, response_constant};

/// Widest predictor set a [`SubsetMask`] can describe.
pub const MAX_MASK_BITS: usize = 32;

/// Response distribution with its canonical link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Normal errors, identity link, variance profiled at RSS/n.
    Gaussian,
    /// `Binomial(trials, π)` counts with logit link.
    Binomial { trials: u32 },
    /// Poisson counts with log link.
    Poisson,
}

impl Family {
    pub fn binomial(trials: u32) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidInput(
                "binomial trial count must be at least 1",
            ));
        }
        Ok(Family::Binomial { trials })
    }

    pub fn trials(&self) -> Option<u32> {
        match self {
            Family::Binomial { trials } => Some(*trials),
            _ => None,
        }
    }

    /// Mean response for a linear predictor `eta` (inverse canonical link).
    pub fn mean(&self, eta: f64) -> f64 {
        match self {
            Family::Gaussian => eta,
            Family::Binomial { trials } => f64::from(*trials) * logistic(eta),
            Family::Poisson => libm::exp(eta),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Binomial { .. } => "binomial",
            Family::Poisson => "poisson",
        }
    }

    fn check_response(&self, y: f64) -> Result<()> {
        if !y.is_finite() {
            return Err(Error::InvalidInput("responses must be finite"));
        }
        match self {
            Family::Gaussian => Ok(()),
            Family::Binomial { trials } => {
                if y < 0.0 || y > f64::from(*trials) || libm::trunc(y) != y {
                    Err(Error::InvalidInput(
                        "binomial responses must be integers in [0, trials]",
                    ))
                } else {
                    Ok(())
                }
            }
            Family::Poisson => {
                if y < 0.0 || libm::trunc(y) != y {
                    Err(Error::InvalidInput(
                        "poisson responses must be nonnegative integers",
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Binomial { trials } => write!(f, "binomial(m={trials})"),
            other => f.write_str(other.name()),
        }
    }
}

#[inline]
pub(crate) fn logistic(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + libm::exp(-eta))
    } else {
        let e = libm::exp(eta);
        e / (1.0 + e)
    }
}

/// `log(1 + e^x)` without overflow.
#[inline]
pub(crate) fn log1pexp(x: f64) -> f64 {
    if x > 0.0 {
        x + libm::log1p(libm::exp(-x))
    } else {
        libm::log1p(libm::exp(x))
    }
}

/// Responses plus an `n × p` predictor matrix; the intercept column is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    family: Family,
    n: usize,
    p: usize,
    /// column-major predictor matrix
    x: Vec<f64>,
    y: Vec<f64>,
    names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from predictor columns. Predictors are named `x1..xp`
    /// until [`Dataset::with_names`] is called.
    pub fn from_columns(family: Family, columns: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self> {
        let n = y.len();
        let p = columns.len();
        if p > MAX_MASK_BITS {
            return Err(Error::TooManyPredictors {
                p,
                max: MAX_MASK_BITS,
            });
        }
        if n <= p + 1 {
            return Err(Error::InvalidInput(
                "sample size must exceed the number of predictors plus one",
            ));
        }
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidInput(
                "predictor column length differs from response length",
            ));
        }
        if let Family::Binomial { trials: 0 } = family {
            return Err(Error::InvalidInput(
                "binomial trial count must be at least 1",
            ));
        }
        for &v in &y {
            family.check_response(v)?;
        }
        let mut x = Vec::with_capacity(n * p);
        for c in &columns {
            if c.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("predictor values must be finite"));
            }
            x.extend_from_slice(c);
        }
        let names = (1..=p).map(|j| format!("x{j}")).collect();
        Ok(Self {
            family,
            n,
            p,
            x,
            y,
            names,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.p {
            return Err(Error::InvalidInput("one name per predictor is required"));
        }
        self.names = names;
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn family(&self) -> Family {
        self.family
    }

    #[inline]
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Predictor column `j` (zero-based, intercept excluded).
    #[inline]
    pub fn column(&self, j: usize) -> &[f64] {
        &self.x[j * self.n..(j + 1) * self.n]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.p)
    }

    /// Columns selected by `mask`, in dataset order.
    pub fn columns_of(&self, mask: SubsetMask) -> Vec<&[f64]> {
        mask.iter().map(|j| self.column(j)).collect()
    }
}

/// Set of included predictors; bit `i` stands for predictor column `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    #[inline]
    pub const fn new(bits: u32) -> Self {
        Self(bits)
    }

    #[inline]
    pub const fn empty() -> Self {
        Self(0)
    }

    /// All of the first `p` predictors.
    #[inline]
    pub const fn full(p: usize) -> Self {
        if p >= 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << p) - 1)
        }
    }

    /// The first `k` predictors.
    #[inline]
    pub const fn first(k: usize) -> Self {
        Self::full(k)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().fold(0u32, |m, &i| m | (1 << i)))
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Number of included predictors (the intercept is not counted).
    #[inline]
    pub const fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    #[inline]
    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Predictors in `self` but not in `other`.
    #[inline]
    pub const fn minus(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// Maximum-likelihood fit of one subset model.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub mask: SubsetMask,
    /// `p + 1` coefficients, exactly zero for excluded predictors.
    pub beta_aug: Vec<f64>,
    /// Maximized log-likelihood including all normalizing constants.
    pub loglik: f64,
    pub iterations: u32,
    pub converged: bool,
}

impl FitResult {
    /// Number of candidate predictors the fit was made against.
    pub fn p(&self) -> usize {
        self.beta_aug.len() - 1
    }

    pub fn size(&self) -> usize {
        self.mask.size()
    }

    pub fn is_full(&self) -> bool {
        self.mask == SubsetMask::full(self.p())
    }
}
