//! Selection report documents: JSON with full precision and a fixed-width
//! table in the per-size layout (indicator grid, AIC, BIC, LogLR, markers).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cmcsel_core::{SelectionReport, SubsetMask};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowDoc {
    pub size: usize,
    /// One `0`/`1` per predictor, in dataset column order.
    pub mask: String,
    pub variables: Vec<String>,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub lambda: f64,
    pub converged: bool,
}

/// Serializable form of a [`SelectionReport`]. Tables are always rendered
/// from this document, so JSON re-read and re-rendered matches direct output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub rows: Vec<RowDoc>,
    /// criterion → mask string
    pub chosen: BTreeMap<String, String>,
    /// CMC level → χ² threshold
    pub thresholds: BTreeMap<String, f64>,
}

pub fn mask_string(mask: SubsetMask, p: usize) -> String {
    (0..p)
        .map(|j| if mask.contains(j) { '1' } else { '0' })
        .collect()
}

impl ReportDoc {
    pub fn from_report(report: &SelectionReport, names: &[String]) -> Self {
        let p = report.p;
        let rows = report
            .rows
            .iter()
            .map(|r| RowDoc {
                size: r.size,
                mask: mask_string(r.mask, p),
                variables: r.mask.iter().map(|j| names[j].clone()).collect(),
                loglik: r.loglik,
                aic: r.aic,
                bic: r.bic,
                lambda: r.lambda,
                converged: r.converged,
            })
            .collect();
        let chosen = report
            .chosen
            .iter()
            .map(|(s, m)| (s.to_string(), mask_string(*m, p)))
            .collect();
        let thresholds = report
            .thresholds
            .iter()
            .map(|(a, t)| (a.to_string(), *t))
            .collect();
        Self {
            rows,
            chosen,
            thresholds,
        }
    }

    /// Predictor names in column order, read off the full-model row.
    pub fn predictors(&self) -> Vec<String> {
        self.rows
            .iter()
            .max_by_key(|r| r.size)
            .map(|r| r.variables.clone())
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Fixed-width table with values at four decimals.
pub fn render_table(doc: &ReportDoc) -> String {
    let names = doc.predictors();
    let widths: Vec<usize> = names.iter().map(|n| n.len().max(1)).collect();
    let mut out = String::new();

    for (name, w) in names.iter().zip(&widths) {
        let _ = write!(out, "{name:>w$} ");
    }
    let _ = writeln!(
        out,
        "{:>10} {:>10} {:>10}  chosen by",
        "AIC", "BIC", "LogLR"
    );

    let mut any_flagged = false;
    for row in &doc.rows {
        for (bit, w) in row.mask.chars().zip(&widths) {
            let _ = write!(out, "{bit:>w$} ");
        }
        let markers: Vec<&str> = doc
            .chosen
            .iter()
            .filter(|(_, m)| **m == row.mask)
            .map(|(c, _)| c.as_str())
            .collect();
        let flag = if row.converged { "" } else { "*" };
        any_flagged |= !row.converged;
        let _ = writeln!(
            out,
            "{:>10.4} {:>10.4} {:>10.4}{flag:1} {}",
            row.aic,
            row.bic,
            row.lambda,
            markers.join(",")
        )
        .map(|_| ());
        // drop the trailing space left when no criterion chose this row
        if markers.is_empty() {
            let trimmed = out.trim_end_matches([' ', '\n']).len();
            out.truncate(trimmed);
            out.push('\n');
        }
    }

    if !doc.thresholds.is_empty() {
        let df = names.len() + 1;
        let _ = writeln!(out, "\nchi-square thresholds (df = {df}):");
        for (alpha, t) in &doc.thresholds {
            let _ = writeln!(out, "  cmc:{alpha:<6}{t:>10.4}");
        }
    }
    if any_flagged {
        let _ = writeln!(
            out,
            "\n* fit stopped before reaching the convergence tolerance"
        );
    }
    out
}
