//! The 29-factor 4G adoption case study, compiled in verbatim: the crisp
//! direct-relation matrix, the printed total-relation matrix (two decimals)
//! and the printed per-factor scores.

use serde::Deserialize;

use crate::dematel::{DirectRelationMatrix, Factor, FactorCatalog};
use crate::ingest::parse_crisp_matrix;
use crate::matrix::Matrix;

pub const TABLE5_CSV: &str = include_str!("../data/table5.csv");
pub const TABLE6_CSV: &str = include_str!("../data/table6.csv");
pub const TABLE7_CSV: &str = include_str!("../data/table7.csv");

/// One printed score row.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct PrintedScore {
    pub id: String,
    pub name: String,
    #[serde(rename = "ri_plus_cj")]
    pub prominence: f64,
    #[serde(rename = "ri_minus_cj")]
    pub relation: f64,
    #[serde(rename = "cj")]
    pub c: f64,
    #[serde(rename = "ri")]
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperFixture {
    pub direct: DirectRelationMatrix,
    pub expected_total: Matrix,
    pub expected_scores: Vec<PrintedScore>,
}

impl PaperFixture {
    pub fn expected_score(&self, id: &str) -> Option<&PrintedScore> {
        self.expected_scores.iter().find(|s| s.id == id)
    }
}

pub fn load_paper_fixture() -> PaperFixture {
    let expected_scores: Vec<PrintedScore> = csv::Reader::from_reader(TABLE7_CSV.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("embedded score table parses");

    let bare = parse_crisp_matrix(TABLE5_CSV.as_bytes()).expect("embedded direct matrix parses");
    let catalog = FactorCatalog::new(
        expected_scores.iter().map(|s| Factor { id: s.id.clone(), name: s.name.clone() }).collect(),
    )
    .expect("embedded catalog is valid");
    assert_eq!(bare.catalog().factors().len(), catalog.len());
    assert!(bare.catalog().factors().iter().zip(catalog.factors()).all(|(a, b)| a.id == b.id));
    let direct = DirectRelationMatrix::new(catalog, bare.entries().clone()).expect("embedded matrix is valid");

    let expected_total =
        parse_crisp_matrix(TABLE6_CSV.as_bytes()).expect("embedded total-relation matrix parses").entries().clone();

    PaperFixture { direct, expected_total, expected_scores }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_values() {
        let f = load_paper_fixture();
        assert_eq!(f.direct.catalog().len(), 29);
        assert_eq!(f.expected_total.dim(), 29);
        assert_eq!(f.expected_scores.len(), 29);
        for (i, s) in f.expected_scores.iter().enumerate() {
            assert_eq!(s.id, format!("X{}", i + 1));
        }

        assert_eq!(f.direct.get("X1", "X1"), Some(9.7));
        assert_eq!(f.direct.get("X16", "X20"), Some(20.93));
        assert_eq!(f.direct.get("X21", "X18"), Some(1.17));
        let total = |from: &str, to: &str| {
            let c = f.direct.catalog();
            f.expected_total[(c.index_of(from).unwrap(), c.index_of(to).unwrap())]
        };
        assert_eq!(total("X16", "X5"), 0.08);
        let x8 = f.expected_score("X8").unwrap();
        assert_eq!((x8.r, x8.c, x8.prominence, x8.relation), (1.619, 1.056, 2.675, 0.564));
        assert_eq!(f.expected_score("X16").unwrap().name, "-innovation itself (technical superiority)");
    }

    #[test]
    fn direct_matrix_extremes() {
        let f = load_paper_fixture();
        let entries = f.direct.entries();
        let min = entries.iter().copied().fold(f64::INFINITY, f64::min);
        let max = entries.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((min, max), (1.17, 20.93));

        // Independent plain left-to-right row sums.
        let sums: Vec<f64> = entries.rows().map(|r| r.iter().sum()).collect();
        let best = (0..29).max_by(|&a, &b| sums[a].total_cmp(&sums[b])).unwrap();
        assert_eq!(f.direct.catalog().id(best), "X16");
    }
}
