//! Crisp DEMATEL: normalization, total-relation matrix, influence scores,
//! cause/effect grouping and critical-success-factor extraction.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{LuDecomposition, Matrix};

/// Relations above this are net causes; everything else is an effect.
pub const CAUSE_THRESHOLD: f64 = 1e-9;

/// Factors with `|r - c|` below this are flagged near-neutral.
pub const NEAR_NEUTRAL_BAND: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub id: String,
    pub name: String,
}

/// Ordered list of factors shared by every matrix of an analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCatalog {
    factors: Vec<Factor>,
}

impl FactorCatalog {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::InvalidCatalog(format!("need at least 2 factors, got {}", factors.len())));
        }
        let mut seen = HashSet::new();
        for f in &factors {
            if f.id.trim().is_empty() {
                return Err(Error::InvalidCatalog("empty factor id".into()));
            }
            if !seen.insert(f.id.as_str()) {
                return Err(Error::InvalidCatalog(format!("duplicate factor id `{}`", f.id)));
            }
        }
        Ok(Self { factors })
    }

    /// Catalog whose display names equal the ids.
    pub fn from_ids<S: AsRef<str>>(ids: &[S]) -> Result<Self> {
        Self::new(
            ids.iter()
                .map(|id| Factor { id: id.as_ref().to_string(), name: id.as_ref().to_string() })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.id == id)
    }

    pub fn id(&self, i: usize) -> &str {
        &self.factors[i].id
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        Self { factors: perm.iter().map(|&p| self.factors[p].clone()).collect() }
    }
}

/// Crisp non-negative `N × N` influence matrix; entry `(i, j)` is the direct
/// influence of factor `i` on factor `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectRelationMatrix {
    catalog: FactorCatalog,
    entries: Matrix,
}

impl DirectRelationMatrix {
    pub fn new(catalog: FactorCatalog, entries: Matrix) -> Result<Self> {
        if entries.dim() != catalog.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {0}x{0} but the catalog lists {1} factors",
                entries.dim(),
                catalog.len()
            )));
        }
        for i in 0..entries.dim() {
            for j in 0..entries.dim() {
                let v = entries[(i, j)];
                if !v.is_finite() {
                    return Err(Error::NonNumericField {
                        row: catalog.id(i).to_string(),
                        column: catalog.id(j).to_string(),
                        field: v.to_string(),
                    });
                }
                if v < 0.0 {
                    return Err(Error::NegativeEntry {
                        row: catalog.id(i).to_string(),
                        column: catalog.id(j).to_string(),
                        value: v,
                    });
                }
            }
        }
        Ok(Self { catalog, entries })
    }

    pub fn catalog(&self) -> &FactorCatalog {
        &self.catalog
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, from: &str, to: &str) -> Option<f64> {
        Some(self.entries[(self.catalog.index_of(from)?, self.catalog.index_of(to)?)])
    }

    pub fn with_zero_diagonal(&self) -> Self {
        let mut entries = self.entries.clone();
        for i in 0..entries.dim() {
            entries[(i, i)] = 0.0;
        }
        Self { catalog: self.catalog.clone(), entries }
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.catalog.clone(), self.entries.map(|x| x * s))
    }

    /// Reorder factors; factor `i` of the result is factor `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self { catalog: self.catalog.permute(perm), entries: self.entries.permute(perm) }
    }
}

/// `D = A / s` where `s` is the largest row sum of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix {
    pub entries: Matrix,
    pub scale_factor: f64,
}

pub fn normalize(a: &DirectRelationMatrix) -> Result<NormalizedMatrix> {
    let s = a.entries.row_sums().into_iter().fold(0.0, f64::max);
    if s.is_nan() || s <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(NormalizedMatrix { entries: a.entries.map(|x| x / s), scale_factor: s })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TotalRelationMatrix {
    pub entries: Matrix,
}

/// `T = D (I - D)^-1`.
///
/// Solved as `(I - D)^T T^T = D^T`: one LU factorization, then one solve per
/// row of `D`. No explicit inverse is formed.
pub fn total_relation(d: &NormalizedMatrix) -> Result<TotalRelationMatrix> {
    let n = d.entries.dim();
    let system = Matrix::identity(n).sub(&d.entries).transpose();
    let lu = LuDecomposition::factor(&system)?;
    let mut t = Matrix::zeros(n);
    for i in 0..n {
        let row = lu.solve(d.entries.row(i));
        for (j, v) in row.into_iter().enumerate() {
            t[(i, j)] = v;
        }
    }
    Ok(TotalRelationMatrix { entries: t })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    Cause,
    Effect,
}

impl Group {
    pub fn classify(relation: f64) -> Self {
        if relation > CAUSE_THRESHOLD {
            Group::Cause
        } else {
            Group::Effect
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Cause => "Cause",
            Group::Effect => "Effect",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorScore {
    pub id: String,
    pub name: String,
    /// Row sum of `T`: influence given.
    pub r: f64,
    /// Column sum of `T`: influence received.
    pub c: f64,
    pub prominence: f64,
    pub relation: f64,
    pub group: Group,
    pub near_neutral: bool,
    pub is_csf: bool,
}

impl FactorScore {
    pub fn from_sums(factor: &Factor, r: f64, c: f64) -> Self {
        let relation = r - c;
        Self {
            id: factor.id.clone(),
            name: factor.name.clone(),
            r,
            c,
            prominence: r + c,
            relation,
            group: Group::classify(relation),
            near_neutral: relation.abs() < NEAR_NEUTRAL_BAND,
            is_csf: false,
        }
    }
}

/// Per-factor scores in catalog order.
#[derive(Debug, Clone, PartialEq)]
pub struct DematelResult {
    pub scores: Vec<FactorScore>,
}

impl DematelResult {
    pub fn score(&self, id: &str) -> Option<&FactorScore> {
        self.scores.iter().find(|s| s.id == id)
    }

    pub fn cause_group(&self) -> impl Iterator<Item = &FactorScore> {
        self.scores.iter().filter(|s| s.group == Group::Cause)
    }

    /// Mark `is_csf` on exactly the factors selected by `rule`.
    pub fn apply_csf_rule(&mut self, rule: CsfRule) -> Result<Vec<String>> {
        let ids = extract_csf(self, rule)?;
        for s in &mut self.scores {
            s.is_csf = ids.contains(&s.id);
        }
        Ok(ids)
    }

    fn extreme_by(&self, key: impl Fn(&FactorScore) -> f64, want_max: bool) -> Option<&FactorScore> {
        // First occurrence wins on ties.
        self.scores.iter().fold(None, |best: Option<&FactorScore>, s| match best {
            Some(b) if (want_max && key(s) <= key(b)) || (!want_max && key(s) >= key(b)) => Some(b),
            _ => Some(s),
        })
    }

    pub fn max_relation(&self) -> Option<&FactorScore> {
        self.extreme_by(|s| s.relation, true)
    }

    pub fn min_relation(&self) -> Option<&FactorScore> {
        self.extreme_by(|s| s.relation, false)
    }

    pub fn max_prominence(&self) -> Option<&FactorScore> {
        self.extreme_by(|s| s.prominence, true)
    }
}

/// `r_i = Σ_j t_ij`, `c_j = Σ_i t_ij`, groups by the sign of `r - c`, and CSF
/// flags under the default [`CsfRule::CauseGroup`].
pub fn compute_scores(t: &TotalRelationMatrix, catalog: &FactorCatalog) -> Result<DematelResult> {
    if t.entries.dim() != catalog.len() {
        return Err(Error::DimensionMismatch(format!(
            "total-relation matrix is {0}x{0} but the catalog lists {1} factors",
            t.entries.dim(),
            catalog.len()
        )));
    }
    let r = t.entries.row_sums();
    let c = t.entries.column_sums();
    let scores = catalog
        .factors()
        .iter()
        .enumerate()
        .map(|(i, f)| FactorScore::from_sums(f, r[i], c[i]))
        .collect();
    let mut result = DematelResult { scores };
    result.apply_csf_rule(CsfRule::CauseGroup)?;
    Ok(result)
}

/// How critical success factors are picked from the scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CsfRule {
    /// Every net cause, by relation descending.
    #[default]
    CauseGroup,
    /// The `k` net causes with the largest prominence, by prominence descending.
    TopKByProminenceWithinCause(usize),
}

impl fmt::Display for CsfRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsfRule::CauseGroup => f.write_str("cause-group"),
            CsfRule::TopKByProminenceWithinCause(k) => write!(f, "top-{k}-by-prominence"),
        }
    }
}

impl FromStr for CsfRule {
    type Err = Error;

    /// `cause-group` or `top-<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "cause-group" || s == "cause" {
            return Ok(CsfRule::CauseGroup);
        }
        let k = s
            .strip_prefix("top-")
            .map(|rest| rest.trim_end_matches("-by-prominence"))
            .and_then(|k| k.parse().ok());
        k.map(CsfRule::TopKByProminenceWithinCause)
            .ok_or_else(|| Error::MalformedDocument(format!("unknown CSF rule `{s}`")))
    }
}

/// Ids of the critical success factors. Ties keep catalog order.
pub fn extract_csf(result: &DematelResult, rule: CsfRule) -> Result<Vec<String>> {
    let mut causes: Vec<&FactorScore> = result.cause_group().collect();
    match rule {
        CsfRule::CauseGroup => {
            // Stable sort keeps catalog order among equal keys.
            causes.sort_by(|a, b| b.relation.total_cmp(&a.relation));
        }
        CsfRule::TopKByProminenceWithinCause(k) => {
            if k > causes.len() {
                return Err(Error::KExceedsCauseGroup { k, available: causes.len() });
            }
            causes.sort_by(|a, b| b.prominence.total_cmp(&a.prominence));
            causes.truncate(k);
        }
    }
    Ok(causes.into_iter().map(|s| s.id.clone()).collect())
}

/// All intermediate products of one crisp DEMATEL run.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub direct: DirectRelationMatrix,
    pub normalized: NormalizedMatrix,
    pub total: TotalRelationMatrix,
    pub result: DematelResult,
    pub csf: Vec<String>,
    pub csf_rule: CsfRule,
}

pub fn analyze(direct: &DirectRelationMatrix, rule: CsfRule) -> Result<Analysis> {
    let normalized = normalize(direct)?;
    let total = total_relation(&normalized)?;
    let mut result = compute_scores(&total, direct.catalog())?;
    let csf = result.apply_csf_rule(rule)?;
    Ok(Analysis { direct: direct.clone(), normalized, total, result, csf, csf_rule: rule })
}
