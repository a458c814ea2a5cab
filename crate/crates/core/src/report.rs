//! End-to-end pipeline and the JSON analysis report.
//!
//! Numbers in a report are rounded to 12 significant digits. The only field
//! that changes between identical runs is `metadata.generated_at_unix`.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::defuzz::{defuzzify_matrix, DefuzzMode};
use crate::dematel::{
    analyze, compute_scores, Analysis, CsfRule, DematelResult, DirectRelationMatrix, Factor, FactorCatalog,
    FactorScore, Group, TotalRelationMatrix,
};
use crate::error::{Error, Result};
use crate::ingest::{parse_crisp_matrix, parse_survey};
use crate::matrix::Matrix;

/// Round to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    Survey,
    CrispMatrix,
}

impl InputKind {
    /// `.json` is a survey, `.csv` a crisp matrix.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(InputKind::Survey),
            "csv" => Some(InputKind::CrispMatrix),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub mode: DefuzzMode,
    pub zero_diagonal: bool,
    pub csf_rule: CsfRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub input: String,
    pub input_kind: InputKind,
    /// Number of experts for survey input.
    pub experts: Option<usize>,
    /// Defuzzification route; absent for crisp input.
    pub defuzzification_mode: Option<String>,
    pub zero_diagonal: bool,
    /// Largest row sum of the direct-relation matrix.
    pub scale_factor: f64,
    pub csf_rule: String,
    pub generated_at_unix: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMatrices {
    pub direct: Vec<Vec<f64>>,
    pub normalized: Vec<Vec<f64>>,
    pub total: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub id: String,
    pub name: String,
    pub r: f64,
    pub c: f64,
    pub prominence: f64,
    pub relation: f64,
    pub group: Group,
    pub near_neutral: bool,
    pub is_csf: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub metadata: ReportMetadata,
    pub matrices: ReportMatrices,
    pub scores: Vec<ScoreRecord>,
    pub csf: Vec<String>,
}

fn rounded_rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.rows().map(|r| r.iter().copied().map(round_sig12).collect()).collect()
}

/// Parse `bytes` as `kind`, defuzzify if needed, and run the crisp analysis.
pub fn run_pipeline(bytes: &[u8], kind: InputKind, options: &RunOptions) -> Result<(Analysis, Option<usize>)> {
    let (direct, experts) = match kind {
        InputKind::Survey => {
            let doc = parse_survey(bytes)?;
            let panel = doc.to_panel()?;
            (defuzzify_matrix(&panel, options.mode)?, Some(doc.expert_count()))
        }
        InputKind::CrispMatrix => (parse_crisp_matrix(bytes)?, None),
    };
    let direct = if options.zero_diagonal { direct.with_zero_diagonal() } else { direct };
    Ok((analyze(&direct, options.csf_rule)?, experts))
}

pub fn run_report(input: &str, bytes: &[u8], kind: InputKind, options: &RunOptions) -> Result<AnalysisReport> {
    let (analysis, experts) = run_pipeline(bytes, kind, options)?;
    Ok(AnalysisReport::from_analysis(input, kind, experts, options, &analysis))
}

impl AnalysisReport {
    pub fn from_analysis(
        input: &str,
        kind: InputKind,
        experts: Option<usize>,
        options: &RunOptions,
        analysis: &Analysis,
    ) -> Self {
        let generated_at_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let metadata = ReportMetadata {
            input: input.to_string(),
            input_kind: kind,
            experts,
            defuzzification_mode: (kind == InputKind::Survey).then(|| options.mode.to_string()),
            zero_diagonal: options.zero_diagonal,
            scale_factor: round_sig12(analysis.normalized.scale_factor),
            csf_rule: analysis.csf_rule.to_string(),
            generated_at_unix,
        };
        let matrices = ReportMatrices {
            direct: rounded_rows(analysis.direct.entries()),
            normalized: rounded_rows(&analysis.normalized.entries),
            total: rounded_rows(&analysis.total.entries),
        };
        let scores = analysis
            .result
            .scores
            .iter()
            .map(|s| ScoreRecord {
                id: s.id.clone(),
                name: s.name.clone(),
                r: round_sig12(s.r),
                c: round_sig12(s.c),
                prominence: round_sig12(s.prominence),
                relation: round_sig12(s.relation),
                group: s.group,
                near_neutral: s.near_neutral,
                is_csf: s.is_csf,
            })
            .collect();
        Self { metadata, matrices, scores, csf: analysis.csf.clone() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(format!("report: {e}")))
    }

    pub fn catalog(&self) -> Result<FactorCatalog> {
        FactorCatalog::new(self.scores.iter().map(|s| Factor { id: s.id.clone(), name: s.name.clone() }).collect())
    }

    /// Scores as a [`DematelResult`], values exactly as stored.
    pub fn to_result(&self) -> DematelResult {
        DematelResult {
            scores: self
                .scores
                .iter()
                .map(|s| FactorScore {
                    id: s.id.clone(),
                    name: s.name.clone(),
                    r: s.r,
                    c: s.c,
                    prominence: s.prominence,
                    relation: s.relation,
                    group: s.group,
                    near_neutral: s.near_neutral,
                    is_csf: s.is_csf,
                })
                .collect(),
        }
    }

    /// Largest deviation between the stored scores and scores recomputed from
    /// the stored total-relation matrix.
    pub fn score_consistency(&self) -> Result<f64> {
        let total = TotalRelationMatrix { entries: Matrix::from_rows(self.matrices.total.clone())? };
        let recomputed = compute_scores(&total, &self.catalog()?)?;
        Ok(max_score_deviation(&recomputed, &self.to_result()))
    }

    /// Re-run the crisp engine on the stored direct matrix and return the
    /// largest deviation from the stored total-relation matrix and scores.
    pub fn rerun_deviation(&self) -> Result<f64> {
        let direct = DirectRelationMatrix::new(self.catalog()?, Matrix::from_rows(self.matrices.direct.clone())?)?;
        let rule: CsfRule = self.metadata.csf_rule.parse()?;
        let analysis = analyze(&direct, rule)?;
        let stored_total = Matrix::from_rows(self.matrices.total.clone())?;
        Ok(analysis.total.entries.max_abs_diff(&stored_total).max(max_score_deviation(&analysis.result, &self.to_result())))
    }
}

fn max_score_deviation(a: &DematelResult, b: &DematelResult) -> f64 {
    a.scores
        .iter()
        .zip(&b.scores)
        .flat_map(|(x, y)| {
            [(x.r - y.r).abs(), (x.c - y.c).abs(), (x.prominence - y.prominence).abs(), (x.relation - y.relation).abs()]
        })
        .fold(0.0, f64::max)
}
