//! Monte Carlo comparison of selection rules by false inactive and false
//! active rates.
//!
//! Each replication draws a fresh design and response from its own ChaCha8
//! stream (`seed`, stream = replication index), so results do not depend on
//! the order or the thread in which replications run.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson, StandardNormal};

use crate::criteria::{select, CriterionSpec};
use crate::error::{Error, Result};
use crate::glm::{logistic, Dataset, Family, SubsetMask};
use crate::search::{best_per_size, MAX_PREDICTORS};

/// One simulation design: `p` standard normal predictors of which the first
/// `p_star` carry coefficient `coef`, intercept `intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub family: Family,
    pub n: usize,
    pub p: usize,
    pub p_star: usize,
    pub coef: f64,
    pub intercept: f64,
    /// Gaussian noise variance.
    pub sigma2: f64,
    /// Common pairwise correlation of the predictors (0 for independent columns).
    pub correlation: f64,
    pub replications: usize,
    pub seed: u64,
}

impl Scenario {
    /// Independent predictors, intercept 1, unit noise variance and `p* = p / 2`.
    pub fn new(family: Family, n: usize, p: usize, coef: f64) -> Self {
        Self {
            family,
            n,
            p,
            p_star: p / 2,
            coef,
            intercept: 1.0,
            sigma2: 1.0,
            correlation: 0.0,
            replications: 1000,
            seed: 0,
        }
    }

    pub fn with_p_star(mut self, p_star: usize) -> Self {
        self.p_star = p_star;
        self
    }

    pub fn with_replications(mut self, replications: usize) -> Self {
        self.replications = replications;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_star == 0 || self.p_star > self.p {
            return Err(Error::InvalidInput(
                "active count must satisfy 1 <= p_star <= p",
            ));
        }
        if !self.coef.is_finite() || !self.intercept.is_finite() {
            return Err(Error::InvalidInput("coefficients must be finite"));
        }
        if self.family == Family::Gaussian && !(self.sigma2 > 0.0) {
            return Err(Error::InvalidInput("noise variance must be positive"));
        }
        if !(0.0..1.0).contains(&self.correlation) {
            return Err(Error::InvalidInput(
                "predictor correlation must lie in [0, 1)",
            ));
        }
        if self.n <= self.p + 1 {
            return Err(Error::InvalidInput(
                "sample size must exceed the number of predictors plus one",
            ));
        }
        if self.replications == 0 {
            return Err(Error::InvalidInput("at least one replication is required"));
        }
        if let Family::Binomial { trials: 0 } = self.family {
            return Err(Error::InvalidInput(
                "binomial trial count must be at least 1",
            ));
        }
        Ok(())
    }

    /// Mask of the active predictors.
    pub fn truth(&self) -> SubsetMask {
        SubsetMask::first(self.p_star)
    }
}

/// Random stream for replication `index` of a scenario seeded with `seed`.
pub fn replication_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one `(X, y)` pair and returns it with the true mask.
pub fn generate<R: Rng + ?Sized>(scn: &Scenario, rng: &mut R) -> Result<(Dataset, SubsetMask)> {
    scn.validate()?;
    let (n, p) = (scn.n, scn.p);
    let shared: Vec<f64> = if scn.correlation > 0.0 {
        (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect()
    } else {
        Vec::new()
    };
    let (own, common) = (
        libm::sqrt(1.0 - scn.correlation),
        libm::sqrt(scn.correlation),
    );
    let columns: Vec<Vec<f64>> = (0..p)
        .map(|_| {
            (0..n)
                .map(|i| {
                    let z: f64 = rng.sample(StandardNormal);
                    if shared.is_empty() {
                        z
                    } else {
                        own * z + common * shared[i]
                    }
                })
                .collect()
        })
        .collect();

    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let eta =
            scn.intercept + scn.coef * columns[..scn.p_star].iter().map(|c| c[i]).sum::<f64>();
        let draw = match scn.family {
            Family::Gaussian => {
                let e: f64 = rng.sample(StandardNormal);
                eta + libm::sqrt(scn.sigma2) * e
            }
            Family::Binomial { trials } => {
                let dist = Binomial::new(u64::from(trials), logistic(eta))
                    .map_err(|_| Error::InvalidInput("invalid binomial success probability"))?;
                dist.sample(rng) as f64
            }
            Family::Poisson => {
                let dist = Poisson::new(libm::exp(eta))
                    .map_err(|_| Error::InvalidInput("invalid poisson mean"))?;
                dist.sample(rng)
            }
        };
        y.push(draw);
    }
    Ok((Dataset::from_columns(scn.family, columns, y)?, scn.truth()))
}

/// False inactive rate and false active rate of one selection.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorRates {
    /// Share of active predictors left out.
    pub fir: f64,
    /// Share of inactive predictors let in.
    pub far: f64,
}

pub fn error_rates(
    selected: SubsetMask,
    truth: SubsetMask,
    p: usize,
    p_star: usize,
) -> Result<ErrorRates> {
    if p_star == 0 || p_star >= p {
        return Err(Error::DegenerateDenominator);
    }
    Ok(ErrorRates {
        fir: truth.minus(selected).size() as f64 / p_star as f64,
        far: selected.minus(truth).size() as f64 / (p - p_star) as f64,
    })
}

/// What one replication produced for each requested rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutcome {
    pub index: u64,
    pub selected: Vec<SubsetMask>,
    pub rates: Vec<ErrorRates>,
    /// Some per-size best fit (possibly the full model) missed the convergence tolerance.
    pub flagged: bool,
    pub full_converged: bool,
}

pub fn run_replication(
    scn: &Scenario,
    specs: &[CriterionSpec],
    index: u64,
) -> Result<ReplicationOutcome> {
    if scn.p > MAX_PREDICTORS {
        return Err(Error::TooManyPredictors {
            p: scn.p,
            max: MAX_PREDICTORS,
        });
    }
    let mut rng = replication_rng(scn.seed, index);
    let (data, truth) = generate(scn, &mut rng)?;
    let bests = best_per_size(&data)?;
    let selected: Vec<SubsetMask> = specs.iter().map(|&s| select(&bests, s)).collect();
    let rates = selected
        .iter()
        .map(|&m| error_rates(m, truth, scn.p, scn.p_star))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplicationOutcome {
        index,
        selected,
        rates,
        flagged: bests.any_not_converged(),
        full_converged: bests.full().converged,
    })
}

/// Averages over replications for one scenario, in criterion order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSummary {
    pub specs: Vec<CriterionSpec>,
    pub replications: usize,
    pub mean: Vec<ErrorRates>,
    /// Fraction of replications whose selection equals the true model.
    pub exact_recovery: Vec<f64>,
    /// Replications with at least one non-converged per-size best.
    pub flagged: usize,
    /// Replications whose full-model fit did not converge.
    pub full_not_converged: usize,
}

/// Folds outcomes in replication-index order so the floating-point sums are
/// identical however the outcomes were produced.
pub fn summarize(
    scn: &Scenario,
    specs: &[CriterionSpec],
    outcomes: &[ReplicationOutcome],
) -> ScenarioSummary {
    let mut order: Vec<&ReplicationOutcome> = outcomes.iter().collect();
    order.sort_by_key(|o| o.index);
    let k = specs.len();
    let mut fir = alloc::vec![0.0; k];
    let mut far = alloc::vec![0.0; k];
    let mut hits = alloc::vec![0usize; k];
    let truth = scn.truth();
    for o in &order {
        for c in 0..k {
            fir[c] += o.rates[c].fir;
            far[c] += o.rates[c].far;
            if o.selected[c] == truth {
                hits[c] += 1;
            }
        }
    }
    let r = order.len().max(1) as f64;
    ScenarioSummary {
        specs: specs.to_vec(),
        replications: order.len(),
        mean: (0..k)
            .map(|c| ErrorRates {
                fir: fir[c] / r,
                far: far[c] / r,
            })
            .collect(),
        exact_recovery: hits.iter().map(|&h| h as f64 / r).collect(),
        flagged: order.iter().filter(|o| o.flagged).count(),
        full_not_converged: order.iter().filter(|o| !o.full_converged).count(),
    }
}

/// Runs every replication of `scn` sequentially.
pub fn run_scenario(scn: &Scenario, specs: &[CriterionSpec]) -> Result<ScenarioSummary> {
    scn.validate()?;
    if scn.p > MAX_PREDICTORS {
        return Err(Error::TooManyPredictors {
            p: scn.p,
            max: MAX_PREDICTORS,
        });
    }
    if scn.p_star >= scn.p {
        return Err(Error::DegenerateDenominator);
    }
    let outcomes = (0..scn.replications as u64)
        .map(|i| run_replication(scn, specs, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(scn, specs, &outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rates_edge_cases() {
        let truth = SubsetMask::first(5);
        assert_eq!(
            error_rates(truth, truth, 10, 5).unwrap(),
            ErrorRates { fir: 0.0, far: 0.0 }
        );
        assert_eq!(
            error_rates(SubsetMask::empty(), truth, 10, 5).unwrap(),
            ErrorRates { fir: 1.0, far: 0.0 }
        );
        assert_eq!(
            error_rates(SubsetMask::full(10), truth, 10, 5).unwrap(),
            ErrorRates { fir: 0.0, far: 1.0 }
        );
        assert_eq!(
            error_rates(truth, truth, 5, 5),
            Err(Error::DegenerateDenominator)
        );
        assert_eq!(
            error_rates(truth, SubsetMask::empty(), 5, 0),
            Err(Error::DegenerateDenominator)
        );
    }

    #[test]
    fn scenario_validation() {
        let s = Scenario::new(Family::Gaussian, 20, 10, 1.0);
        assert!(s.validate().is_ok());
        assert!(s.clone().with_p_star(0).validate().is_err());
        assert!(Scenario {
            coef: f64::NAN,
            ..s.clone()
        }
        .validate()
        .is_err());
        assert!(Scenario {
            coef: 0.0,
            ..s.clone()
        }
        .validate()
        .is_ok());
        assert!(Scenario {
            sigma2: 0.0,
            ..s.clone()
        }
        .validate()
        .is_err());
        assert!(Scenario { n: 11, ..s }.validate().is_err());
    }

    #[test]
    fn same_stream_same_data() {
        let s = Scenario::new(Family::Poisson, 30, 4, 0.5).with_seed(42);
        let (a, _) = generate(&s, &mut replication_rng(42, 7)).unwrap();
        let (b, _) = generate(&s, &mut replication_rng(42, 7)).unwrap();
        let (c, _) = generate(&s, &mut replication_rng(42, 8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn summary_is_order_independent() {
        let s = Scenario::new(Family::Gaussian, 20, 4, 1.0)
            .with_replications(6)
            .with_seed(3);
        let specs = CriterionSpec::standard_five();
        let mut outs: Vec<_> = (0..6)
            .map(|i| run_replication(&s, &specs, i).unwrap())
            .collect();
        let a = summarize(&s, &specs, &outs);
        outs.reverse();
        let b = summarize(&s, &specs, &outs);
        assert_eq!(a, b);
        assert_eq!(a, run_scenario(&s, &specs).unwrap());
    }
}
