//! Recompute the case-study tables from the embedded direct-relation matrix
//! and compare them with the printed values.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::dematel::{analyze, Analysis, CsfRule, Group, NEAR_NEUTRAL_BAND};
use crate::fixture::{load_paper_fixture, PaperFixture};
use crate::matrix::Matrix;

/// Comparison tolerances. The printed total-relation matrix has two
/// decimals; the printed scores three.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Per-cell tolerance against the printed total-relation matrix.
    pub total: f64,
    /// Tolerance on `r` and `c`.
    pub sums: f64,
    /// Tolerance on `r + c` and `r - c`.
    pub combined: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { total: 0.015, sums: 0.03, combined: 0.05 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreComparison {
    pub id: String,
    pub r: (f64, f64),
    pub c: (f64, f64),
    pub prominence: (f64, f64),
    pub relation: (f64, f64),
    pub group: Group,
    pub near_neutral: bool,
}

/// Outcome for one diagonal treatment of the direct-relation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantCheck {
    pub zero_diagonal: bool,
    pub scale_factor: f64,
    pub max_total_deviation: f64,
    pub worst_cell: (String, String),
    /// Entrywise `|computed - printed|` for the total-relation matrix.
    pub total_deviations: Matrix,
    pub max_r_deviation: f64,
    pub max_c_deviation: f64,
    pub max_prominence_deviation: f64,
    pub max_relation_deviation: f64,
    /// Factors with printed `|r - c| >= 0.05` whose computed sign differs.
    pub sign_mismatches: Vec<String>,
    /// Factors with printed `|r - c| < 0.05` not flagged near-neutral.
    pub unflagged_near_neutral: Vec<String>,
    pub max_relation_id: String,
    pub min_relation_id: String,
    pub max_prominence_id: String,
    pub cause_group: Vec<String>,
    pub rows: Vec<ScoreComparison>,
}

impl VariantCheck {
    fn run(fixture: &PaperFixture, zero_diagonal: bool) -> Self {
        let direct = if zero_diagonal { fixture.direct.with_zero_diagonal() } else { fixture.direct.clone() };
        let analysis = analyze(&direct, CsfRule::CauseGroup).expect("case-study matrix analyses cleanly");
        Self::compare(fixture, zero_diagonal, &analysis)
    }

    fn compare(fixture: &PaperFixture, zero_diagonal: bool, analysis: &Analysis) -> Self {
        let catalog = fixture.direct.catalog();
        let n = catalog.len();
        let t = &analysis.total.entries;
        let mut max_total_deviation = 0.0;
        let mut worst = (0, 0);
        let total_deviations = Matrix::from_fn(n, |i, j| (t[(i, j)] - fixture.expected_total[(i, j)]).abs());
        for i in 0..n {
            for j in 0..n {
                if total_deviations[(i, j)] > max_total_deviation {
                    max_total_deviation = total_deviations[(i, j)];
                    worst = (i, j);
                }
            }
        }

        let mut rows = Vec::with_capacity(n);
        let mut sign_mismatches = Vec::new();
        let mut unflagged_near_neutral = Vec::new();
        for (s, p) in analysis.result.scores.iter().zip(&fixture.expected_scores) {
            debug_assert_eq!(s.id, p.id);
            if p.relation.abs() >= NEAR_NEUTRAL_BAND {
                if (p.relation > 0.0) != (s.group == Group::Cause) {
                    sign_mismatches.push(s.id.clone());
                }
            } else if !s.near_neutral {
                unflagged_near_neutral.push(s.id.clone());
            }
            rows.push(ScoreComparison {
                id: s.id.clone(),
                r: (s.r, p.r),
                c: (s.c, p.c),
                prominence: (s.prominence, p.prominence),
                relation: (s.relation, p.relation),
                group: s.group,
                near_neutral: s.near_neutral,
            });
        }
        let max_dev = |pick: fn(&ScoreComparison) -> (f64, f64)| {
            rows.iter().map(|r| {
                let (a, b) = pick(r);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
        };
        let result = &analysis.result;
        Self {
            zero_diagonal,
            scale_factor: analysis.normalized.scale_factor,
            max_total_deviation,
            worst_cell: (catalog.id(worst.0).to_string(), catalog.id(worst.1).to_string()),
            total_deviations,
            max_r_deviation: max_dev(|r| r.r),
            max_c_deviation: max_dev(|r| r.c),
            max_prominence_deviation: max_dev(|r| r.prominence),
            max_relation_deviation: max_dev(|r| r.relation),
            sign_mismatches,
            unflagged_near_neutral,
            max_relation_id: result.max_relation().map(|s| s.id.clone()).unwrap_or_default(),
            min_relation_id: result.min_relation().map(|s| s.id.clone()).unwrap_or_default(),
            max_prominence_id: result.max_prominence().map(|s| s.id.clone()).unwrap_or_default(),
            cause_group: result.cause_group().map(|s| s.id.clone()).collect(),
            rows,
        }
    }
}

/// One named pass/fail line.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub tolerances: Tolerances,
    pub variants: [VariantCheck; 2],
    /// Index into `variants` of the treatment closer to the printed matrix.
    pub better: usize,
    pub checks: Vec<CheckLine>,
}

impl Verification {
    pub fn best(&self) -> &VariantCheck {
        &self.variants[self.better]
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let tol = &self.tolerances;
        let _ = writeln!(out, "case-study reproduction");
        let _ = writeln!(
            out,
            "tolerances: total-relation {}, r/c {}, r+c/r-c {}",
            tol.total, tol.sums, tol.combined
        );
        out.push('\n');
        for v in &self.variants {
            let _ = writeln!(out, "diagonal {}:", if v.zero_diagonal { "zeroed" } else { "verbatim" });
            let _ = writeln!(out, "  scale factor s            {:.6}", v.scale_factor);
            let _ = writeln!(
                out,
                "  total-relation max |dev|  {:.6} at ({}, {}); {} of {} cells above {}",
                v.max_total_deviation,
                v.worst_cell.0,
                v.worst_cell.1,
                v.cells_outside(tol.total),
                v.rows.len() * v.rows.len(),
                tol.total
            );
            let _ = writeln!(
                out,
                "  score max |dev|           r {:.6}  c {:.6}  r+c {:.6}  r-c {:.6}",
                v.max_r_deviation, v.max_c_deviation, v.max_prominence_deviation, v.max_relation_deviation
            );
            let _ = writeln!(out, "  cause group ({})         {}", v.cause_group.len(), v.cause_group.join(" "));
        }
        out.push('\n');
        let best = self.best();
        let _ = writeln!(
            out,
            "closer treatment: diagonal {}",
            if best.zero_diagonal { "zeroed" } else { "verbatim" }
        );
        out.push('\n');
        let _ = writeln!(
            out,
            "{:<5} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}  {:<6} flags",
            "id", "r", "r*", "c", "c*", "r+c", "(r+c)*", "r-c", "(r-c)*", "group"
        );
        for row in &best.rows {
            let _ = writeln!(
                out,
                "{:<5} {:>9.4} {:>9.3} {:>9.4} {:>9.3} {:>9.4} {:>9.3} {:>9.4} {:>9.3}  {:<6} {}",
                row.id,
                row.r.0,
                row.r.1,
                row.c.0,
                row.c.1,
                row.prominence.0,
                row.prominence.1,
                row.relation.0,
                row.relation.1,
                row.group.to_string(),
                if row.near_neutral { "near-neutral" } else { "" }
            );
        }
        let _ = writeln!(out, "(* printed value)");
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let _ = writeln!(out, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

impl VariantCheck {
    pub fn cells_outside(&self, tol: f64) -> usize {
        self.total_deviations.iter().filter(|&&d| d > tol).count()
    }
}

pub fn reproduce(tolerances: Tolerances) -> Verification {
    let fixture = load_paper_fixture();
    let variants = [VariantCheck::run(&fixture, false), VariantCheck::run(&fixture, true)];
    let better = if variants[1].max_total_deviation < variants[0].max_total_deviation { 1 } else { 0 };
    let best = &variants[better];

    let printed_causes: BTreeSet<&str> =
        fixture.expected_scores.iter().filter(|p| p.relation > 0.0).map(|p| p.id.as_str()).collect();
    let computed_causes: BTreeSet<&str> = best.cause_group.iter().map(String::as_str).collect();

    let checks = vec![
        CheckLine {
            name: "total-relation matrix",
            passed: best.max_total_deviation <= tolerances.total,
            detail: format!("max |dev| {:.6} <= {}", best.max_total_deviation, tolerances.total),
        },
        CheckLine {
            name: "influence sums r, c",
            passed: best.max_r_deviation <= tolerances.sums && best.max_c_deviation <= tolerances.sums,
            detail: format!(
                "max |dev| r {:.6}, c {:.6} <= {}",
                best.max_r_deviation, best.max_c_deviation, tolerances.sums
            ),
        },
        CheckLine {
            name: "prominence and relation",
            passed: best.max_prominence_deviation <= tolerances.combined
                && best.max_relation_deviation <= tolerances.combined,
            detail: format!(
                "max |dev| r+c {:.6}, r-c {:.6} <= {}",
                best.max_prominence_deviation, best.max_relation_deviation, tolerances.combined
            ),
        },
        CheckLine {
            name: "relation signs",
            passed: best.sign_mismatches.is_empty() && best.unflagged_near_neutral.is_empty(),
            detail: format!(
                "mismatched [{}], unflagged near-neutral [{}]",
                best.sign_mismatches.join(" "),
                best.unflagged_near_neutral.join(" ")
            ),
        },
        CheckLine {
            name: "ordering",
            passed: best.max_relation_id == "X16" && best.min_relation_id == "X21" && best.max_prominence_id == "X16",
            detail: format!(
                "max r-c {}, min r-c {}, max r+c {}",
                best.max_relation_id, best.min_relation_id, best.max_prominence_id
            ),
        },
        CheckLine {
            name: "cause group",
            passed: computed_causes == printed_causes,
            detail: format!("{} computed, {} printed", computed_causes.len(), printed_causes.len()),
        },
    ];
    Verification { tolerances, variants, better, checks }
}
