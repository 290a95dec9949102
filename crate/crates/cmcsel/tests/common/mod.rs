#![allow(dead_code)]

use std::path::PathBuf;

use cmcsel::{load_csv, CsvSpec};
use cmcsel_core::{Dataset, Family};

pub fn heart_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/SAheart.csv")
}

pub fn heart() -> Dataset {
    let spec = CsvSpec::new(heart_path(), "chd", Family::Binomial { trials: 1 })
        .map_level("famhist", "Present", 1.0)
        .map_level("famhist", "Absent", 0.0);
    load_csv(&spec).expect("bundled heart-disease data loads")
}

/// Full logistic fit: intercept, sbp, tobacco, ldl, adiposity, famhist,
/// typea, obesity, alcohol, age.
pub const HEART_FULL_COEF: [f64; 10] = [
    -6.1507208650,
    0.0065040171,
    0.0793764457,
    0.1739238981,
    0.0185865682,
    0.9253704194,
    0.0395950250,
    -0.0629098693,
    0.0001216624,
    0.0452253496,
];

/// Per-size best models: indicator string, AIC, BIC, LogLR.
pub const HEART_BESTS: [(&str, f64, f64, f64); 10] = [
    ("000000000", 596.1084, 596.1084, 123.96),
    ("000000001", 527.5623, 531.6979, 53.422),
    ("000010001", 510.6582, 518.9293, 34.518),
    ("010010001", 501.3854, 513.7921, 23.245),
    ("010011001", 492.7143, 509.2566, 12.574),
    ("011011001", 485.6856, 506.3634, 3.5455),
    ("011011101", 485.9799, 510.7933, 1.8398),
    ("111011101", 486.5490, 515.4979, 0.4089),
    ("111111101", 488.1408, 521.2253, 0.0001),
    ("111111111", 490.1400, 527.3601, 0.0000),
];

pub type Cell = (f64, f64);

/// Published mean (FIR, FAR) for AIC, BIC, CMC 0.9, CMC 0.5, CMC 0.1.
pub struct SpotRow {
    pub family: Family,
    pub n: usize,
    pub p: usize,
    pub coef: f64,
    pub cells: [Cell; 5],
}

pub const GAUSSIAN_ROWS: [SpotRow; 3] = [
    SpotRow {
        family: Family::Gaussian,
        n: 20,
        p: 10,
        coef: 1.0,
        cells: [
            (0.04, 0.34),
            (0.05, 0.24),
            (0.05, 0.25),
            (0.09, 0.13),
            (0.21, 0.06),
        ],
    },
    SpotRow {
        family: Family::Gaussian,
        n: 50,
        p: 10,
        coef: 1.0,
        cells: [
            (0.00, 0.22),
            (0.00, 0.08),
            (0.00, 0.12),
            (0.00, 0.03),
            (0.01, 0.00),
        ],
    },
    SpotRow {
        family: Family::Gaussian,
        n: 100,
        p: 20,
        coef: 1.0,
        cells: [
            (0.00, 0.20),
            (0.00, 0.05),
            (0.00, 0.05),
            (0.00, 0.01),
            (0.00, 0.00),
        ],
    },
];

pub const BINOMIAL_ROWS: [SpotRow; 3] = [
    SpotRow {
        family: Family::Binomial { trials: 5 },
        n: 20,
        p: 6,
        coef: 1.0,
        cells: [
            (0.06, 0.20),
            (0.10, 0.11),
            (0.06, 0.20),
            (0.14, 0.07),
            (0.30, 0.03),
        ],
    },
    SpotRow {
        family: Family::Binomial { trials: 10 },
        n: 50,
        p: 6,
        coef: 1.0,
        cells: [
            (0.00, 0.16),
            (0.00, 0.05),
            (0.00, 0.16),
            (0.00, 0.03),
            (0.00, 0.00),
        ],
    },
    SpotRow {
        family: Family::Binomial { trials: 10 },
        n: 50,
        p: 10,
        coef: 1.0,
        cells: [
            (0.00, 0.14),
            (0.00, 0.05),
            (0.00, 0.07),
            (0.00, 0.02),
            (0.00, 0.00),
        ],
    },
];

pub const POISSON_ROWS: [SpotRow; 3] = [
    SpotRow {
        family: Family::Poisson,
        n: 20,
        p: 6,
        coef: 0.5,
        cells: [
            (0.06, 0.19),
            (0.09, 0.10),
            (0.05, 0.20),
            (0.12, 0.06),
            (0.28, 0.03),
        ],
    },
    SpotRow {
        family: Family::Poisson,
        n: 50,
        p: 10,
        coef: 0.5,
        cells: [
            (0.00, 0.16),
            (0.00, 0.05),
            (0.00, 0.08),
            (0.00, 0.01),
            (0.01, 0.00),
        ],
    },
    SpotRow {
        family: Family::Poisson,
        n: 100,
        p: 10,
        coef: 0.5,
        cells: [
            (0.00, 0.16),
            (0.00, 0.03),
            (0.00, 0.07),
            (0.00, 0.01),
            (0.00, 0.00),
        ],
    },
];

pub const SEED: u64 = 20240101;
