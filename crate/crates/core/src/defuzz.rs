//! CFCS defuzzification (Converting Fuzzy data into Crisp Scores) of expert
//! panels, plus the centroid baseline.
//!
//! For one cell with expert judgments `(l_k, m_k, r_k)`, let `L = min l_k`,
//! `R = max r_k` and `Δ = R - L`. Each judgment is standardized against `L`,
//! turned into left/right normalized scores, combined into a total normalized
//! value `x_k`, and mapped back to a crisp BNP (best non-fuzzy performance)
//! `L + x_k Δ`. The cell's crisp value is the mean BNP.

use std::fmt;
use std::str::FromStr;

use crate::dematel::{DirectRelationMatrix, FactorCatalog};
use crate::error::{Error, Result};
use crate::fuzzy::{fuzzy_mean, TriangularFuzzyNumber};
use crate::matrix::{order_independent_sum, Matrix};

/// The `K >= 1` expert judgments for a single `(i, j)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyCellPanel {
    samples: Vec<TriangularFuzzyNumber>,
}

impl FuzzyCellPanel {
    pub fn new(samples: Vec<TriangularFuzzyNumber>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyPanel);
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[TriangularFuzzyNumber] {
        &self.samples
    }
}

/// Intermediate CFCS values for one expert.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExpertTrace {
    pub xl: f64,
    pub xm: f64,
    pub xr: f64,
    pub xls: f64,
    pub xrs: f64,
    pub x: f64,
    pub bnp: f64,
}

/// Full audit trail of one [`cfcs_cell`] evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CfcsTrace {
    /// `min_k l_k`.
    pub lower: f64,
    /// `max_k r_k - min_k l_k`.
    pub delta: f64,
    pub experts: Vec<ExpertTrace>,
    pub crisp: f64,
}

pub fn cfcs_cell(panel: &FuzzyCellPanel) -> CfcsTrace {
    let samples = panel.samples();
    let lower = samples.iter().map(|s| s.l()).fold(f64::INFINITY, f64::min);
    let upper = samples.iter().map(|s| s.r()).fold(f64::NEG_INFINITY, f64::max);
    let delta = upper - lower;

    if delta == 0.0 {
        // Every expert gave the same point value.
        return CfcsTrace {
            lower,
            delta,
            experts: vec![ExpertTrace::default(); samples.len()],
            crisp: lower,
        };
    }

    let experts: Vec<ExpertTrace> = samples
        .iter()
        .map(|s| {
            let xl = (s.l() - lower) / delta;
            let xm = (s.m() - lower) / delta;
            let xr = (s.r() - lower) / delta;
            let xls = xm / (1.0 + xm - xl);
            let xrs = xr / (1.0 + xr - xm);
            let x = (xls * (1.0 - xls) + xrs * xrs) / (1.0 - xls + xrs);
            ExpertTrace { xl, xm, xr, xls, xrs, x, bnp: lower + x * delta }
        })
        .collect();

    let bnps: Vec<f64> = experts.iter().map(|e| e.bnp).collect();
    let crisp = order_independent_sum(&bnps) / bnps.len() as f64;
    CfcsTrace { lower, delta, experts, crisp }
}

/// `(l + m + r) / 3`.
pub fn centroid(a: &TriangularFuzzyNumber) -> f64 {
    (a.l() + a.m() + a.r()) / 3.0
}

/// Which route turns a panel of fuzzy matrices into a crisp one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DefuzzMode {
    /// CFCS over all K experts of each cell, averaging per-expert BNPs.
    #[default]
    PerExpertBnp,
    /// Average the fuzzy judgments first, then defuzzify the single mean.
    AggregateThenDefuzzify,
}

impl fmt::Display for DefuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefuzzMode::PerExpertBnp => "per-expert",
            DefuzzMode::AggregateThenDefuzzify => "aggregate",
        })
    }
}

impl FromStr for DefuzzMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "per-expert" | "per_expert" | "perexpertbnp" => Ok(DefuzzMode::PerExpertBnp),
            "aggregate" | "aggregatethendefuzzify" => Ok(DefuzzMode::AggregateThenDefuzzify),
            other => Err(Error::MalformedDocument(format!("unknown defuzzification mode `{other}`"))),
        }
    }
}

/// One expert's row-major `N × N` grid; `None` marks an unanswered cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpertGrid {
    pub expert: String,
    pub cells: Vec<Option<TriangularFuzzyNumber>>,
}

/// `K` experts × `N × N` fuzzy judgments over a shared catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyAssessmentPanel {
    pub catalog: FactorCatalog,
    pub experts: Vec<ExpertGrid>,
}

impl FuzzyAssessmentPanel {
    fn check_shape(&self) -> Result<()> {
        let n = self.catalog.len();
        if self.experts.is_empty() {
            return Err(Error::EmptyPanel);
        }
        for e in &self.experts {
            if e.cells.len() != n * n {
                return Err(Error::RaggedPanel { expert: e.expert.clone(), expected: n * n, found: e.cells.len() });
            }
        }
        Ok(())
    }

    /// All judgments for off-diagonal cell `(i, j)`, in expert order.
    fn cell_samples(&self, i: usize, j: usize) -> Result<Vec<TriangularFuzzyNumber>> {
        let n = self.catalog.len();
        self.experts
            .iter()
            .map(|e| {
                e.cells[i * n + j].ok_or_else(|| Error::MissingJudgment {
                    expert: e.expert.clone(),
                    from: self.catalog.id(i).to_string(),
                    to: self.catalog.id(j).to_string(),
                })
            })
            .collect()
    }
}

/// Defuzzify every off-diagonal cell; the diagonal is always zero.
pub fn defuzzify_matrix(panel: &FuzzyAssessmentPanel, mode: DefuzzMode) -> Result<DirectRelationMatrix> {
    panel.check_shape()?;
    let n = panel.catalog.len();
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let samples = panel.cell_samples(i, j)?;
            let cell = match mode {
                DefuzzMode::PerExpertBnp => FuzzyCellPanel::new(samples)?,
                DefuzzMode::AggregateThenDefuzzify => FuzzyCellPanel::new(vec![fuzzy_mean(&samples)?])?,
            };
            a[(i, j)] = cfcs_cell(&cell).crisp;
        }
    }
    DirectRelationMatrix::new(panel.catalog.clone(), a)
}
