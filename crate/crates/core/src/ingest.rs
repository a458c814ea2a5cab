//! Survey documents (JSON) and crisp matrices (CSV).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::defuzz::{ExpertGrid, FuzzyAssessmentPanel};
use crate::dematel::{DirectRelationMatrix, Factor, FactorCatalog};
use crate::error::{Error, Result};
use crate::fuzzy::{LinguisticScale, LinguisticTerm};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub from: String,
    pub to: String,
    pub term: LinguisticTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpertJudgments {
    pub id: String,
    pub judgments: Vec<Judgment>,
}

/// A validated questionnaire: every expert rates every ordered pair of
/// distinct factors exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyDocument {
    pub catalog: FactorCatalog,
    /// `None` means the default five-term scale.
    pub scale: Option<LinguisticScale>,
    pub experts: Vec<ExpertJudgments>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawJudgment {
    from: String,
    to: String,
    term: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawExpert {
    id: String,
    judgments: Vec<RawJudgment>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawSurvey {
    factors: Vec<Factor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<serde_json::Value>,
    experts: Vec<RawExpert>,
}

pub fn parse_survey(bytes: &[u8]) -> Result<SurveyDocument> {
    let raw: RawSurvey =
        serde_json::from_slice(bytes).map_err(|e| Error::MalformedDocument(format!("survey: {e}")))?;
    let catalog = FactorCatalog::new(raw.factors)?;
    let scale = raw.scale.map(LinguisticScale::from_json_value).transpose()?;
    let effective = scale.clone().unwrap_or_default();
    if raw.experts.is_empty() {
        return Err(Error::EmptyPanel);
    }

    let n = catalog.len();
    let mut experts = Vec::with_capacity(raw.experts.len());
    for e in raw.experts {
        let mut seen = HashSet::new();
        let mut judgments = Vec::with_capacity(e.judgments.len());
        for j in e.judgments {
            let resolve = |id: &str| {
                catalog
                    .index_of(id)
                    .ok_or_else(|| Error::UnknownFactor { expert: e.id.clone(), factor: id.to_string() })
            };
            let from = resolve(&j.from)?;
            let to = resolve(&j.to)?;
            if from == to {
                return Err(Error::SelfJudgment { expert: e.id.clone(), factor: j.from });
            }
            let location = format!(" (expert `{}`, {} -> {})", e.id, j.from, j.to);
            let term: LinguisticTerm = j.term.parse().map_err(|_| Error::UnknownTerm {
                term: j.term.clone(),
                location: location.clone(),
            })?;
            if effective.term_to_fuzzy(term).is_err() {
                return Err(Error::UnknownTerm { term: j.term, location: format!("{location} not in scale") });
            }
            if !seen.insert((from, to)) {
                return Err(Error::DuplicateJudgment { expert: e.id.clone(), from: j.from, to: j.to });
            }
            judgments.push(Judgment { from: j.from, to: j.to, term });
        }
        for i in 0..n {
            for k in 0..n {
                if i != k && !seen.contains(&(i, k)) {
                    return Err(Error::MissingJudgment {
                        expert: e.id.clone(),
                        from: catalog.id(i).to_string(),
                        to: catalog.id(k).to_string(),
                    });
                }
            }
        }
        experts.push(ExpertJudgments { id: e.id, judgments });
    }
    Ok(SurveyDocument { catalog, scale, experts })
}

impl SurveyDocument {
    pub fn effective_scale(&self) -> LinguisticScale {
        self.scale.clone().unwrap_or_default()
    }

    pub fn expert_count(&self) -> usize {
        self.experts.len()
    }

    /// Map every judgment to its fuzzy number under the document's scale.
    pub fn to_panel(&self) -> Result<FuzzyAssessmentPanel> {
        let scale = self.effective_scale();
        let n = self.catalog.len();
        let mut experts = Vec::with_capacity(self.experts.len());
        for e in &self.experts {
            let mut cells = vec![None; n * n];
            for j in &e.judgments {
                let (Some(from), Some(to)) = (self.catalog.index_of(&j.from), self.catalog.index_of(&j.to)) else {
                    return Err(Error::UnknownFactor { expert: e.id.clone(), factor: format!("{}/{}", j.from, j.to) });
                };
                cells[from * n + to] = Some(scale.term_to_fuzzy(j.term)?);
            }
            experts.push(ExpertGrid { expert: e.id.clone(), cells });
        }
        Ok(FuzzyAssessmentPanel { catalog: self.catalog.clone(), experts })
    }

    pub fn to_json(&self) -> String {
        let raw = RawSurvey {
            factors: self.catalog.factors().to_vec(),
            scale: self.scale.as_ref().map(LinguisticScale::to_json_value),
            experts: self
                .experts
                .iter()
                .map(|e| RawExpert {
                    id: e.id.clone(),
                    judgments: e
                        .judgments
                        .iter()
                        .map(|j| RawJudgment { from: j.from.clone(), to: j.to.clone(), term: j.term.label().into() })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("survey serializes")
    }
}

fn csv_reader(bytes: &[u8]) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes)
}

/// Parse the crisp matrix CSV: a header `id,<f1>,...,<fN>` followed by `N`
/// rows `<fi>,v1,...,vN`. Row labels must repeat the header ids in order.
pub fn parse_crisp_matrix(bytes: &[u8]) -> Result<DirectRelationMatrix> {
    let (ids, rows) = read_labelled_grid(bytes)?;
    let n = ids.len();
    let mut values = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(n);
        for (j, field) in row.iter().enumerate() {
            let v: f64 = field
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::NonNumericField {
                    row: ids[i].clone(),
                    column: ids[j].clone(),
                    field: field.clone(),
                })?;
            if v < 0.0 {
                return Err(Error::NegativeEntry { row: ids[i].clone(), column: ids[j].clone(), value: v });
            }
            parsed.push(v);
        }
        values.push(parsed);
    }
    let catalog = FactorCatalog::from_ids(&ids)?;
    DirectRelationMatrix::new(catalog, Matrix::from_rows(values)?)
}

/// Header ids and the raw (unparsed) value fields of each row.
fn read_labelled_grid(bytes: &[u8]) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::MalformedDocument(format!("not UTF-8: {e}")))?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut records = Vec::new();
    for rec in csv_reader(text.as_bytes()).records() {
        let rec = rec.map_err(|e| Error::MalformedDocument(format!("csv: {e}")))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
    }
    let mut it = records.into_iter();
    let header = it.next().ok_or_else(|| Error::MalformedDocument("empty matrix file".into()))?;
    if header.first().map(|h| h.eq_ignore_ascii_case("id")) != Some(true) {
        return Err(Error::MalformedDocument("first header cell must be `id`".into()));
    }
    let ids: Vec<String> = header[1..].to_vec();
    let n = ids.len();
    let rows: Vec<Vec<String>> = it.collect();
    if rows.len() != n {
        return Err(Error::NonSquare(format!("{n} column ids but {} data rows", rows.len())));
    }
    let mut fields = Vec::with_capacity(n);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != n + 1 {
            return Err(Error::NonSquare(format!(
                "row {} has {} values, expected {n}",
                row.first().map(String::as_str).unwrap_or("?"),
                row.len().saturating_sub(1)
            )));
        }
        if row[0] != ids[i] {
            return Err(Error::MalformedDocument(format!(
                "row {} is labelled `{}`, expected `{}`",
                i + 1,
                row[0],
                ids[i]
            )));
        }
        fields.push(row[1..].to_vec());
    }
    Ok((ids, fields))
}

/// Inverse of [`parse_crisp_matrix`]; values use Rust's shortest round-trip form.
pub fn write_crisp_matrix(a: &DirectRelationMatrix) -> String {
    let ids: Vec<&str> = a.catalog().factors().iter().map(|f| f.id.as_str()).collect();
    let mut out = format!("id,{}\n", ids.join(","));
    for (id, row) in ids.iter().zip(a.entries().rows()) {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{id},{}\n", vals.join(",")));
    }
    out
}
