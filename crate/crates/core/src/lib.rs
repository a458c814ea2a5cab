//! Fuzzy DEMATEL analysis.
//!
//! Linguistic expert judgments become triangular fuzzy numbers
//! ([`fuzzy`]), are defuzzified with CFCS into a crisp direct-relation matrix
//! ([`defuzz`]), and feed the DEMATEL engine ([`dematel`]), which computes the
//! total-relation matrix `T = D (I - D)^-1`, per-factor prominence and
//! relation, the cause/effect split and the critical success factors.

pub mod defuzz;
pub mod dematel;
pub mod diagram;
pub mod error;
pub mod fixture;
pub mod fuzzy;
pub mod ingest;
pub mod matrix;
pub mod report;
pub mod reproduce;

pub use defuzz::{centroid, cfcs_cell, defuzzify_matrix, CfcsTrace, DefuzzMode, FuzzyAssessmentPanel, FuzzyCellPanel};
pub use dematel::{
    analyze, compute_scores, extract_csf, normalize, total_relation, Analysis, CsfRule, DematelResult,
    DirectRelationMatrix, Factor, FactorCatalog, FactorScore, Group, NormalizedMatrix, TotalRelationMatrix,
};
pub use diagram::{emit_diagram, DiagramFormat};
pub use error::{Error, Result};
pub use fixture::{load_paper_fixture, PaperFixture};
pub use fuzzy::{fuzzy_mean, LinguisticScale, LinguisticTerm, RawTriple, TriangularFuzzyNumber};
pub use ingest::{parse_crisp_matrix, parse_survey, SurveyDocument};
pub use matrix::Matrix;
pub use report::{run_report, AnalysisReport, InputKind, RunOptions};
pub use reproduce::{reproduce, Tolerances, Verification};
