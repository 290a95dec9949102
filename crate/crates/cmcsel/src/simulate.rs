//! Multi-threaded scenario runner and the TSV / JSON simulation outputs.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use cmcsel_core::simulation::{run_replication, summarize, ScenarioSummary};
use cmcsel_core::{CriterionSpec, Error, Scenario, MAX_PREDICTORS};
use serde::{Deserialize, Serialize};

use crate::scenario_file::NamedScenario;

/// Runs the replications of `scn` on `workers` threads. Replication `i`
/// always draws from the same random stream and the summary folds outcomes in
/// index order, so the result does not depend on `workers`.
pub fn run_scenario_parallel(
    scn: &Scenario,
    specs: &[CriterionSpec],
    workers: usize,
) -> Result<ScenarioSummary, Error> {
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
    let total = scn.replications as u64;
    let workers = workers.clamp(1, scn.replications);
    let next = AtomicU64::new(0);

    let per_worker: Vec<Vec<_>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= total {
                            break;
                        }
                        done.push((i, run_replication(scn, specs, i)));
                    }
                    done
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("replication worker panicked"))
            .collect()
    });

    let mut results: Vec<_> = per_worker.into_iter().flatten().collect();
    results.sort_by_key(|(i, _)| *i);
    let outcomes = results
        .into_iter()
        .map(|(_, r)| r)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(scn, specs, &outcomes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDoc {
    pub criterion: String,
    pub fir: f64,
    pub far: f64,
    pub exact_recovery: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioDoc {
    pub id: String,
    pub family: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    pub p: usize,
    pub p_star: usize,
    pub coef: f64,
    pub replications: usize,
    pub seed: u64,
    pub cells: Vec<CellDoc>,
    pub flagged: usize,
    pub full_not_converged: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SimulationDoc {
    pub scenarios: Vec<ScenarioDoc>,
}

impl SimulationDoc {
    pub fn push(&mut self, named: &NamedScenario, summary: &ScenarioSummary) {
        let scn = &named.scenario;
        let cells = summary
            .specs
            .iter()
            .zip(&summary.mean)
            .zip(&summary.exact_recovery)
            .map(|((spec, rates), &rec)| CellDoc {
                criterion: spec.to_string(),
                fir: rates.fir,
                far: rates.far,
                exact_recovery: rec,
            })
            .collect();
        self.scenarios.push(ScenarioDoc {
            id: named.id.clone(),
            family: scn.family.name().to_string(),
            n: scn.n,
            m: scn.family.trials(),
            p: scn.p,
            p_star: scn.p_star,
            coef: scn.coef,
            replications: summary.replications,
            seed: scn.seed,
            cells,
            flagged: summary.flagged,
            full_not_converged: summary.full_not_converged,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("simulation documents always serialize")
    }

    /// One row per scenario, `(FIR, FAR)` at two decimals per criterion, then
    /// the count of replications with a non-converged fit.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("scenario");
        if let Some(first) = self.scenarios.first() {
            for c in &first.cells {
                out.push('\t');
                out.push_str(&c.criterion);
            }
        }
        out.push_str("\tflagged\n");
        for s in &self.scenarios {
            out.push_str(&s.id);
            for c in &s.cells {
                let _ = write!(out, "\t({:.2}, {:.2})", c.fir, c.far);
            }
            let _ = writeln!(out, "\t{}", s.flagged);
        }
        out
    }
}
