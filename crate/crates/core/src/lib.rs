//! Best-subset model selection for Gaussian, logistic and Poisson regression.
//!
//! Every subset of the candidate predictors is fitted by maximum likelihood,
//! the highest-likelihood model of each size is retained, and the retained
//! models are ranked by AIC, BIC and the constrained minimum criterion (CMC).
//! CMC keeps the models whose log-likelihood ratio against the full model
//! stays under a χ² quantile with `p + 1` degrees of freedom and picks the
//! smallest of them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and multi-threaded simulation live in the `cmcsel` crate.
//!
//! # Modules
//!
//! - [`numerics`] - Cholesky solves, regularized incomplete gamma, χ² quantiles
//! - [`glm`] - families, datasets, subset masks and maximum-likelihood fitting
//! - [`search`] - exhaustive enumeration keeping the best model per size
//! - [`criteria`] - AIC, BIC, CMC and selection reports
//! - [`simulation`] - data generation and FIR/FAR error rates
//!
//! ```
//! use cmcsel_core::{best_per_size, build_report, CriterionSpec, Dataset, Family};
//!
//! let x1 = [0.1, -1.2, 0.7, 1.9, -0.4, 0.3, -2.0, 1.1];
//! let x2 = [1.0, 0.2, -0.3, 0.5, -1.1, 0.8, 0.4, -0.6];
//! let y: Vec<f64> = x1.iter().zip(&x2).enumerate()
//!     .map(|(i, (a, b))| 1.0 + 2.0 * a + 0.05 * b + 0.1 * ((i % 3) as f64 - 1.0))
//!     .collect();
//! let data = Dataset::from_columns(Family::Gaussian, vec![x1.to_vec(), x2.to_vec()], y)?;
//! let bests = best_per_size(&data)?;
//! let report = build_report(&bests, &[CriterionSpec::Aic, CriterionSpec::Cmc { alpha: 0.5 }]);
//! assert_eq!(report.rows.len(), 3);
//! # Ok::<(), cmcsel_core::Error>(())
//! ```

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod criteria;
pub mod error;
pub mod glm;
pub mod numerics;
pub mod search;
pub mod simulation;

pub use criteria::{
    aic, bic, build_report, select_cmc, select_info_criterion, CriterionSpec, InfoCriterion,
    ReportRow, SelectionReport,
};
pub use error::{Error, Result};
pub use glm::{fit, log_likelihood, loglik_ratio, Dataset, Family, FitResult, SubsetMask};
pub use numerics::{chisq_cdf, chisq_quantile, regularized_gamma_p, solve_spd, SpdMatrix};
pub use search::{best_per_size, PerSizeBests, MAX_PREDICTORS};
pub use simulation::{error_rates, generate, run_scenario, ErrorRates, Scenario};
