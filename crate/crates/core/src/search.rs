//! Exhaustive best-subset search.
//!
//! AIC, BIC and CMC depend on a model only through its maximized
//! log-likelihood and its size, so keeping the highest-likelihood model of
//! every size is enough to apply all three rules.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::glm::{fit, Dataset, Family, FitResult, SubsetMask};

/// Largest predictor count accepted by [`best_per_size`].
pub const MAX_PREDICTORS: usize = 20;

/// Highest-likelihood model of each size `0..=p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerSizeBests {
    /// `entries[d]` is the best model with `d` predictors; `entries[p]` is the full model.
    pub entries: Vec<FitResult>,
    pub n: usize,
    pub p: usize,
    /// Number of subsets evaluated.
    pub visited: u64,
}

impl PerSizeBests {
    pub fn full(&self) -> &FitResult {
        &self.entries[self.p]
    }

    /// Per-size log-likelihood ratios against the full model.
    pub fn lambdas(&self) -> Vec<f64> {
        let full = self.full().loglik;
        self.entries
            .iter()
            .map(|e| (-2.0 * (e.loglik - full)).max(0.0))
            .collect()
    }

    pub fn any_not_converged(&self) -> bool {
        self.entries.iter().any(|e| !e.converged)
    }
}

/// Fits `mask`, accepting a non-converged last iterate as a flagged result.
pub fn fit_lenient(data: &Dataset, mask: SubsetMask) -> Result<FitResult> {
    match fit(data, mask) {
        Ok(f) => Ok(f),
        Err(Error::NotConverged { fit }) => Ok(*fit),
        Err(e) => Err(e),
    }
}

/// Keeps the running best fit per size. Accumulators over disjoint mask
/// ranges can be merged in any order with the same result.
#[derive(Debug, Clone)]
pub struct PerSizeAccumulator {
    best: Vec<Option<FitResult>>,
    visited: u64,
}

impl PerSizeAccumulator {
    pub fn new(p: usize) -> Self {
        Self {
            best: vec![None; p + 1],
            visited: 0,
        }
    }

    pub fn offer(&mut self, candidate: FitResult) {
        self.visited += 1;
        let slot = &mut self.best[candidate.mask.size()];
        if slot.as_ref().map_or(true, |b| beats(&candidate, b)) {
            *slot = Some(candidate);
        }
    }

    pub fn merge(&mut self, other: PerSizeAccumulator) {
        self.visited += other.visited;
        for (slot, theirs) in self.best.iter_mut().zip(other.best) {
            if let Some(t) = theirs {
                if slot.as_ref().map_or(true, |b| beats(&t, b)) {
                    *slot = Some(t);
                }
            }
        }
    }

    pub fn finish(self, n: usize) -> Result<PerSizeBests> {
        let p = self.best.len() - 1;
        let entries = self
            .best
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::InvalidInput("some model sizes were never evaluated"))?;
        Ok(PerSizeBests {
            entries,
            n,
            p,
            visited: self.visited,
        })
    }
}

/// Higher log-likelihood wins; exact ties go to the lower mask value.
fn beats(a: &FitResult, b: &FitResult) -> bool {
    a.loglik > b.loglik || (a.loglik == b.loglik && a.mask < b.mask)
}

fn check_size(data: &Dataset) -> Result<()> {
    if data.p() > MAX_PREDICTORS {
        return Err(Error::TooManyPredictors {
            p: data.p(),
            max: MAX_PREDICTORS,
        });
    }
    Ok(())
}

/// Fits every mask in `masks` and offers it to `acc`.
pub fn enumerate_range(
    data: &Dataset,
    masks: Range<u32>,
    acc: &mut PerSizeAccumulator,
) -> Result<()> {
    for bits in masks {
        acc.offer(fit_lenient(data, SubsetMask::new(bits))?);
    }
    Ok(())
}

/// Fits all `2^p` subsets one by one, for any family.
pub fn best_per_size_exhaustive(data: &Dataset) -> Result<PerSizeBests> {
    check_size(data)?;
    // a collinear full model is reported before any subset work
    fit_lenient(data, data.full_mask())?;
    let mut acc = PerSizeAccumulator::new(data.p());
    enumerate_range(data, 0..(1u32 << data.p()), &mut acc)?;
    acc.finish(data.n())
}

/// Best model of each size over all `2^p` subsets.
///
/// Gaussian data goes through a cross-product search that never touches the
/// `n` observations after the initial Gram matrix; other families fit every
/// subset by Fisher scoring.
pub fn best_per_size(data: &Dataset) -> Result<PerSizeBests> {
    check_size(data)?;
    match data.family() {
        Family::Gaussian => gaussian_best_per_size(data),
        _ => best_per_size_exhaustive(data),
    }
}

fn gaussian_best_per_size(data: &Dataset) -> Result<PerSizeBests> {
    let gram = CenteredGram::new(data);
    let mut state = DfsState::new(data.p());
    gram.visit(0, 0, 0, gram.yy, &mut state)?;

    let mut entries = Vec::with_capacity(data.p() + 1);
    for &(_, bits) in &state.best {
        entries.push(fit(data, SubsetMask::new(bits))?);
    }
    Ok(PerSizeBests {
        entries,
        n: data.n(),
        p: data.p(),
        visited: state.visited,
    })
}

/// Centered cross products; centering profiles out the intercept exactly.
struct CenteredGram {
    p: usize,
    /// row-major `p × p` of `Σ (x_a − x̄_a)(x_b − x̄_b)`
    xx: Vec<f64>,
    xy: Vec<f64>,
    yy: f64,
}

struct DfsState {
    /// lower Cholesky rows of the currently selected sub-Gram
    chol: [[f64; MAX_PREDICTORS]; MAX_PREDICTORS],
    /// `L⁻¹ (Xᵀy)` restricted to the selection
    proj: [f64; MAX_PREDICTORS],
    selected: [usize; MAX_PREDICTORS],
    best: Vec<(f64, u32)>,
    visited: u64,
}

impl DfsState {
    fn new(p: usize) -> Self {
        Self {
            chol: [[0.0; MAX_PREDICTORS]; MAX_PREDICTORS],
            proj: [0.0; MAX_PREDICTORS],
            selected: [0; MAX_PREDICTORS],
            best: vec![(f64::INFINITY, u32::MAX); p + 1],
            visited: 0,
        }
    }
}

impl CenteredGram {
    fn new(data: &Dataset) -> Self {
        let n = data.n() as f64;
        let p = data.p();
        let ybar = data.y().iter().sum::<f64>() / n;
        let yc: Vec<f64> = data.y().iter().map(|v| v - ybar).collect();
        let xc: Vec<Vec<f64>> = (0..p)
            .map(|j| {
                let col = data.column(j);
                let m = col.iter().sum::<f64>() / n;
                col.iter().map(|v| v - m).collect()
            })
            .collect();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(u, v)| u * v).sum::<f64>();
        let mut xx = vec![0.0; p * p];
        for a in 0..p {
            for b in 0..=a {
                let s = dot(&xc[a], &xc[b]);
                xx[a * p + b] = s;
                xx[b * p + a] = s;
            }
        }
        let xy = xc.iter().map(|c| dot(c, &yc)).collect();
        Self {
            p,
            xx,
            xy,
            yy: dot(&yc, &yc),
        }
    }

    /// Records the current selection, then extends it by each `j >= start`
    /// with one bordered Cholesky row (`O(depth²)` per subset).
    fn visit(
        &self,
        start: usize,
        depth: usize,
        bits: u32,
        rss: f64,
        st: &mut DfsState,
    ) -> Result<()> {
        st.visited += 1;
        let slot = &mut st.best[depth];
        if rss < slot.0 || (rss == slot.0 && bits < slot.1) {
            *slot = (rss, bits);
        }
        for j in start..self.p {
            let mut row = [0.0; MAX_PREDICTORS];
            let mut norm2 = 0.0;
            let mut cross = 0.0;
            for k in 0..depth {
                let mut s = self.xx[st.selected[k] * self.p + j];
                for t in 0..k {
                    s -= st.chol[k][t] * row[t];
                }
                let l = s / st.chol[k][k];
                row[k] = l;
                norm2 += l * l;
                cross += l * st.proj[k];
            }
            let gjj = self.xx[j * self.p + j];
            let pivot2 = gjj - norm2;
            if !(pivot2 > 1e-13 * gjj) {
                return Err(Error::Collinear);
            }
            let pivot = libm::sqrt(pivot2);
            let zj = (self.xy[j] - cross) / pivot;
            let next_rss = rss - zj * zj;
            if !(next_rss > 0.0) {
                return Err(Error::Domain("residual sum of squares is zero"));
            }
            st.chol[depth][..depth].copy_from_slice(&row[..depth]);
            st.chol[depth][depth] = pivot;
            st.proj[depth] = zj;
            st.selected[depth] = j;
            self.visit(j + 1, depth + 1, bits | (1 << j), next_rss, st)?;
        }
        Ok(())
    }
}
