//! AIC, BIC and the constrained minimum criterion over per-size best models.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::glm::{FitResult, SubsetMask};
use crate::numerics::chisq_quantile;
use crate::search::PerSizeBests;

/// A selection rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriterionSpec {
    Aic,
    Bic,
    /// Smallest model whose log-likelihood ratio is within the `1 − alpha` χ² quantile.
    Cmc {
        alpha: f64,
    },
}

impl CriterionSpec {
    /// The recommended default, CMC at level 0.5.
    pub const DEFAULT: CriterionSpec = CriterionSpec::Cmc { alpha: 0.5 };

    pub fn cmc(alpha: f64) -> Result<Self, Error> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(CriterionSpec::Cmc { alpha })
        } else {
            Err(Error::InvalidInput(
                "cmc level must lie strictly between 0 and 1",
            ))
        }
    }

    /// AIC, BIC, CMC₀.₉, CMC₀.₅, CMC₀.₁: the five rules compared in the simulation tables.
    pub fn standard_five() -> [CriterionSpec; 5] {
        [
            CriterionSpec::Aic,
            CriterionSpec::Bic,
            CriterionSpec::Cmc { alpha: 0.9 },
            CriterionSpec::Cmc { alpha: 0.5 },
            CriterionSpec::Cmc { alpha: 0.1 },
        ]
    }
}

impl fmt::Display for CriterionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionSpec::Aic => f.write_str("aic"),
            CriterionSpec::Bic => f.write_str("bic"),
            CriterionSpec::Cmc { alpha } => write!(f, "cmc:{alpha}"),
        }
    }
}

impl FromStr for CriterionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "aic" => Ok(CriterionSpec::Aic),
            "bic" => Ok(CriterionSpec::Bic),
            "cmc" => Ok(CriterionSpec::DEFAULT),
            other => {
                let alpha = other
                    .strip_prefix("cmc:")
                    .ok_or(Error::InvalidInput(
                        "criterion must be aic, bic or cmc:ALPHA",
                    ))?
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidInput("cmc level is not a number"))?;
                CriterionSpec::cmc(alpha)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfoCriterion {
    Aic,
    Bic,
}

/// `−2 l + 2 d`, where `d` counts predictors only.
pub fn aic(fit: &FitResult) -> f64 {
    -2.0 * fit.loglik + 2.0 * fit.size() as f64
}

/// `−2 l + d log n`.
pub fn bic(fit: &FitResult, n: usize) -> f64 {
    -2.0 * fit.loglik + fit.size() as f64 * libm::log(n as f64)
}

/// χ² quantile at `1 − alpha` with `p + 1` degrees of freedom.
pub fn cmc_threshold(alpha: f64, p: usize) -> f64 {
    chisq_quantile(1.0 - alpha, p as u32 + 1)
}

/// Row minimizing AIC or BIC; ties go to the smaller model.
pub fn select_info_criterion(bests: &PerSizeBests, kind: InfoCriterion) -> SubsetMask {
    let score = |f: &FitResult| match kind {
        InfoCriterion::Aic => aic(f),
        InfoCriterion::Bic => bic(f, bests.n),
    };
    let mut chosen = &bests.entries[0];
    let mut best = score(chosen);
    for e in &bests.entries[1..] {
        let s = score(e);
        if s < best {
            best = s;
            chosen = e;
        }
    }
    chosen.mask
}

/// Smallest per-size best model with `λ ≤ χ²₁₋α,ₚ₊₁`.
///
/// Within a size the per-size best already has the highest likelihood, so no
/// further tie-break is needed. The full model has `λ = 0` and is always feasible.
pub fn select_cmc(bests: &PerSizeBests, alpha: f64) -> SubsetMask {
    let threshold = cmc_threshold(alpha, bests.p);
    let lambdas = bests.lambdas();
    bests
        .entries
        .iter()
        .zip(&lambdas)
        .find(|(_, &l)| l <= threshold)
        .map_or(bests.full().mask, |(e, _)| e.mask)
}

/// Applies one rule.
pub fn select(bests: &PerSizeBests, spec: CriterionSpec) -> SubsetMask {
    match spec {
        CriterionSpec::Aic => select_info_criterion(bests, InfoCriterion::Aic),
        CriterionSpec::Bic => select_info_criterion(bests, InfoCriterion::Bic),
        CriterionSpec::Cmc { alpha } => select_cmc(bests, alpha),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub mask: SubsetMask,
    pub size: usize,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub lambda: f64,
    pub converged: bool,
}

/// Per-size table with the model chosen by each rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub n: usize,
    pub p: usize,
    /// Ordered by size.
    pub rows: Vec<ReportRow>,
    pub chosen: Vec<(CriterionSpec, SubsetMask)>,
    /// `(alpha, χ²₁₋α,ₚ₊₁)` for each CMC rule requested.
    pub thresholds: Vec<(f64, f64)>,
}

impl SelectionReport {
    pub fn chosen_for(&self, spec: CriterionSpec) -> Option<SubsetMask> {
        self.chosen
            .iter()
            .find(|(s, _)| *s == spec)
            .map(|(_, m)| *m)
    }

    pub fn row_for(&self, mask: SubsetMask) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.mask == mask)
    }
}

pub fn build_report(bests: &PerSizeBests, specs: &[CriterionSpec]) -> SelectionReport {
    let lambdas = bests.lambdas();
    let rows = bests
        .entries
        .iter()
        .zip(lambdas)
        .map(|(e, lambda)| ReportRow {
            mask: e.mask,
            size: e.size(),
            loglik: e.loglik,
            aic: aic(e),
            bic: bic(e, bests.n),
            lambda,
            converged: e.converged,
        })
        .collect();
    let chosen = specs.iter().map(|&s| (s, select(bests, s))).collect();
    let mut thresholds: Vec<(f64, f64)> = Vec::new();
    for spec in specs {
        if let CriterionSpec::Cmc { alpha } = *spec {
            if !thresholds.iter().any(|(a, _)| *a == alpha) {
                thresholds.push((alpha, cmc_threshold(alpha, bests.p)));
            }
        }
    }
    SelectionReport {
        n: bests.n,
        p: bests.p,
        rows,
        chosen,
        thresholds,
    }
}
