//! Triangular fuzzy numbers and the five-term linguistic judgment scale.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A triangular fuzzy number `(l, m, r)` with `l <= m <= r`.
///
/// Membership rises linearly from `l` to a peak at `m` and falls back to zero
/// at `r`. The constructor rejects non-finite or misordered components, so a
/// value of this type always satisfies the ordering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangularFuzzyNumber {
    l: f64,
    m: f64,
    r: f64,
}

impl TriangularFuzzyNumber {
    pub const ZERO: Self = Self { l: 0.0, m: 0.0, r: 0.0 };

    pub fn new(l: f64, m: f64, r: f64) -> Result<Self> {
        if !(l.is_finite() && m.is_finite() && r.is_finite()) || l > m || m > r {
            return Err(Error::InvalidFuzzyNumber { l, m, r });
        }
        Ok(Self { l, m, r })
    }

    /// Crisp value `c` as the degenerate triangle `(c, c, c)`.
    pub fn point(c: f64) -> Result<Self> {
        Self::new(c, c, c)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn components(&self) -> [f64; 3] {
        [self.l, self.m, self.r]
    }

    /// `λ·(l, m, r)`. Negative multipliers would swap `l` and `r` and are rejected.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if lambda < 0.0 || lambda.is_nan() {
            return Err(Error::NegativeScalar(lambda));
        }
        Self::new(lambda * self.l, lambda * self.m, lambda * self.r)
    }

    pub fn sub(&self, other: &Self) -> RawTriple {
        RawTriple::new(self.l - other.l, self.m - other.m, self.r - other.r)
    }

    pub fn mul(&self, other: &Self) -> RawTriple {
        RawTriple::new(self.l * other.l, self.m * other.m, self.r * other.r)
    }

    pub fn div(&self, other: &Self) -> Result<RawTriple> {
        if other.l == 0.0 || other.m == 0.0 || other.r == 0.0 {
            return Err(Error::DivisionByZeroComponent { l: other.l, m: other.m, r: other.r });
        }
        Ok(RawTriple::new(self.l / other.l, self.m / other.m, self.r / other.r))
    }
}

impl Add for TriangularFuzzyNumber {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        // Sums of ordered triples stay ordered.
        Self { l: self.l + rhs.l, m: self.m + rhs.m, r: self.r + rhs.r }
    }
}

impl fmt::Display for TriangularFuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.m, self.r)
    }
}

impl<'de> Deserialize<'de> for TriangularFuzzyNumber {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Parts {
            l: f64,
            m: f64,
            r: f64,
        }
        let p = Parts::deserialize(deserializer)?;
        Self::new(p.l, p.m, p.r).map_err(serde::de::Error::custom)
    }
}

/// Unvalidated componentwise result of subtraction, multiplication or
/// division. These operations do not preserve `l <= m <= r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawTriple {
    pub l: f64,
    pub m: f64,
    pub r: f64,
}

impl RawTriple {
    pub fn new(l: f64, m: f64, r: f64) -> Self {
        Self { l, m, r }
    }

    pub fn validate(&self) -> Result<TriangularFuzzyNumber> {
        TriangularFuzzyNumber::new(self.l, self.m, self.r)
    }

    pub fn is_triangular(&self) -> bool {
        self.validate().is_ok()
    }
}

/// Componentwise mean of a nonempty sample.
///
/// Each component is summed in sorted order, so the result does not depend on
/// the order of the samples.
pub fn fuzzy_mean(samples: &[TriangularFuzzyNumber]) -> Result<TriangularFuzzyNumber> {
    if samples.is_empty() {
        return Err(Error::EmptyPanel);
    }
    let n = samples.len() as f64;
    let mean_of = |pick: fn(&TriangularFuzzyNumber) -> f64| {
        let mut v: Vec<f64> = samples.iter().map(pick).collect();
        v.sort_by(f64::total_cmp);
        v.iter().sum::<f64>() / n
    };
    let l = mean_of(TriangularFuzzyNumber::l);
    let m = mean_of(TriangularFuzzyNumber::m);
    let r = mean_of(TriangularFuzzyNumber::r);
    // Rounding can only reorder components that are equal in exact arithmetic.
    let m = m.max(l);
    let r = r.max(m);
    TriangularFuzzyNumber::new(l, m, r)
}

/// Verbal influence judgment, ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinguisticTerm {
    NoEffect,
    LittleEffect,
    MediumEffect,
    HighEffect,
    VeryHighEffect,
}

impl LinguisticTerm {
    pub const ALL: [LinguisticTerm; 5] = [
        LinguisticTerm::NoEffect,
        LinguisticTerm::LittleEffect,
        LinguisticTerm::MediumEffect,
        LinguisticTerm::HighEffect,
        LinguisticTerm::VeryHighEffect,
    ];

    /// Canonical lower-case label used in survey documents.
    pub fn label(&self) -> &'static str {
        match self {
            LinguisticTerm::NoEffect => "no effect",
            LinguisticTerm::LittleEffect => "little effect",
            LinguisticTerm::MediumEffect => "medium effect",
            LinguisticTerm::HighEffect => "high effect",
            LinguisticTerm::VeryHighEffect => "very high effect",
        }
    }
}

impl fmt::Display for LinguisticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for LinguisticTerm {
    type Err = Error;

    /// Case-insensitive; runs of whitespace, `_` and `-` are treated alike, and
    /// the CamelCase variant names are accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let squashed: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        LinguisticTerm::ALL
            .into_iter()
            .find(|t| t.label().replace(' ', "") == squashed)
            .ok_or_else(|| Error::UnknownTerm { term: s.to_string(), location: String::new() })
    }
}

impl Serialize for LinguisticTerm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for LinguisticTerm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Mapping from linguistic terms to triangular fuzzy numbers.
///
/// The default is the standard five-term scale. Custom scales may omit terms,
/// but the modes of the terms present must strictly increase with term order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticScale {
    entries: BTreeMap<LinguisticTerm, TriangularFuzzyNumber>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScaleEntry {
    label: String,
    l: f64,
    m: f64,
    r: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScaleFile {
    terms: Vec<ScaleEntry>,
}

impl Default for LinguisticScale {
    fn default() -> Self {
        let tfn = |l, m, r| TriangularFuzzyNumber { l, m, r };
        let entries = BTreeMap::from([
            (LinguisticTerm::NoEffect, tfn(0.0, 0.0, 0.25)),
            (LinguisticTerm::LittleEffect, tfn(0.0, 0.25, 0.5)),
            (LinguisticTerm::MediumEffect, tfn(0.25, 0.5, 0.75)),
            (LinguisticTerm::HighEffect, tfn(0.5, 0.75, 1.0)),
            (LinguisticTerm::VeryHighEffect, tfn(0.75, 1.0, 1.0)),
        ]);
        Self { entries }
    }
}

impl LinguisticScale {
    pub fn new(entries: impl IntoIterator<Item = (LinguisticTerm, TriangularFuzzyNumber)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (term, tfn) in entries {
            if map.insert(term, tfn).is_some() {
                return Err(Error::InvalidScale(format!("term `{term}` defined twice")));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidScale("scale defines no terms".into()));
        }
        let modes: Vec<(LinguisticTerm, f64)> = map.iter().map(|(t, v)| (*t, v.m)).collect();
        for pair in modes.windows(2) {
            if pair[1].1 <= pair[0].1 {
                return Err(Error::InvalidScale(format!(
                    "mode of `{}` ({}) does not exceed mode of `{}` ({})",
                    pair[1].0, pair[1].1, pair[0].0, pair[0].1
                )));
            }
        }
        Ok(Self { entries: map })
    }

    pub fn term_to_fuzzy(&self, term: LinguisticTerm) -> Result<TriangularFuzzyNumber> {
        self.entries
            .get(&term)
            .copied()
            .ok_or_else(|| Error::UnknownTerm { term: term.label().to_string(), location: " in this scale".into() })
    }

    /// Inverse lookup by exact component match.
    pub fn term_for(&self, value: &TriangularFuzzyNumber) -> Option<LinguisticTerm> {
        self.entries.iter().find(|(_, v)| *v == value).map(|(t, _)| *t)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (LinguisticTerm, TriangularFuzzyNumber)> + '_ {
        self.entries.iter().map(|(t, v)| (*t, *v))
    }

    /// Parse `{"terms": [{"label", "l", "m", "r"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScaleFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(format!("scale: {e}")))?;
        Self::from_value(file)
    }

    pub(crate) fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let file: ScaleFile =
            serde_json::from_value(value).map_err(|e| Error::MalformedDocument(format!("scale: {e}")))?;
        Self::from_value(file)
    }

    fn from_value(file: ScaleFile) -> Result<Self> {
        let mut entries = Vec::with_capacity(file.terms.len());
        for e in file.terms {
            let term: LinguisticTerm = e.label.parse()?;
            let tfn = TriangularFuzzyNumber::new(e.l, e.m, e.r)
                .map_err(|err| Error::InvalidScale(format!("term `{}`: {err}", e.label)))?;
            entries.push((term, tfn));
        }
        Self::new(entries)
    }

    pub(crate) fn to_json_value(&self) -> serde_json::Value {
        let file = ScaleFile {
            terms: self
                .entries
                .iter()
                .map(|(t, v)| ScaleEntry { label: t.label().to_string(), l: v.l, m: v.m, r: v.r })
                .collect(),
        };
        serde_json::to_value(file).expect("scale serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("scale serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tfn(l: f64, m: f64, r: f64) -> TriangularFuzzyNumber {
        TriangularFuzzyNumber::new(l, m, r).unwrap()
    }

    fn assert_close(a: &TriangularFuzzyNumber, b: &TriangularFuzzyNumber, tol: f64) {
        for (x, y) in a.components().iter().zip(b.components()) {
            assert!((x - y).abs() <= tol, "{a} vs {b}");
        }
    }

    #[test]
    fn default_scale_entries() {
        let scale = LinguisticScale::default();
        assert_eq!(scale.term_to_fuzzy(LinguisticTerm::HighEffect).unwrap(), tfn(0.5, 0.75, 1.0));
        assert_eq!(scale.term_to_fuzzy(LinguisticTerm::NoEffect).unwrap(), tfn(0.0, 0.0, 0.25));
        assert_eq!(scale.term_to_fuzzy(LinguisticTerm::VeryHighEffect).unwrap(), tfn(0.75, 1.0, 1.0));
        // The default must also satisfy the validated constructor.
        assert_eq!(LinguisticScale::new(scale.iter()).unwrap(), scale);
    }

    #[test]
    fn default_scale_round_trips_by_component_match() {
        let scale = LinguisticScale::default();
        for term in LinguisticTerm::ALL {
            let v = scale.term_to_fuzzy(term).unwrap();
            assert_eq!(scale.term_for(&v), Some(term));
        }
        assert_eq!(scale.term_for(&tfn(0.1, 0.2, 0.3)), None);
    }

    #[test]
    fn custom_scale_missing_term() {
        let scale = LinguisticScale::new(
            LinguisticScale::default().iter().filter(|(t, _)| *t != LinguisticTerm::HighEffect),
        )
        .unwrap();
        assert_eq!(scale.len(), 4);
        assert!(matches!(
            scale.term_to_fuzzy(LinguisticTerm::HighEffect),
            Err(Error::UnknownTerm { .. })
        ));
    }

    #[test]
    fn custom_scale_rejects_non_increasing_modes() {
        let err = LinguisticScale::new([
            (LinguisticTerm::NoEffect, tfn(0.0, 0.5, 1.0)),
            (LinguisticTerm::LittleEffect, tfn(0.0, 0.5, 1.0)),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidScale(_)));
    }

    #[test]
    fn scale_json_round_trip_and_validation() {
        let scale = LinguisticScale::default();
        assert_eq!(LinguisticScale::from_json(&scale.to_json()).unwrap(), scale);

        let bad = r#"{"terms":[{"label":"high effect","l":1,"m":0.5,"r":0.75}]}"#;
        assert!(matches!(LinguisticScale::from_json(bad), Err(Error::InvalidScale(_))));
        let unknown = r#"{"terms":[{"label":"huge effect","l":0,"m":0.5,"r":0.75}]}"#;
        assert!(matches!(LinguisticScale::from_json(unknown), Err(Error::UnknownTerm { .. })));
        assert!(matches!(LinguisticScale::from_json("{"), Err(Error::MalformedDocument(_))));
        assert!(matches!(LinguisticScale::from_json(r#"{"terms":[]}"#), Err(Error::InvalidScale(_))));
    }

    #[test]
    fn term_parsing_is_case_insensitive() {
        assert_eq!("Very high effect".parse::<LinguisticTerm>().unwrap(), LinguisticTerm::VeryHighEffect);
        assert_eq!("NO EFFECT".parse::<LinguisticTerm>().unwrap(), LinguisticTerm::NoEffect);
        assert_eq!("MediumEffect".parse::<LinguisticTerm>().unwrap(), LinguisticTerm::MediumEffect);
        assert_eq!("little  effect".parse::<LinguisticTerm>().unwrap(), LinguisticTerm::LittleEffect);
        assert!("strong".parse::<LinguisticTerm>().is_err());
    }

    #[test]
    fn construction_rejects_bad_triples() {
        assert!(TriangularFuzzyNumber::new(0.5, 0.25, 1.0).is_err());
        assert!(TriangularFuzzyNumber::new(0.0, 0.5, f64::NAN).is_err());
        assert!(TriangularFuzzyNumber::new(f64::NEG_INFINITY, 0.5, 1.0).is_err());
        assert!(TriangularFuzzyNumber::new(0.0, 0.0, 0.25).is_ok());
    }

    #[test]
    fn add_examples() {
        assert_eq!(tfn(0.0, 0.25, 0.5) + tfn(0.25, 0.5, 0.75), tfn(0.25, 0.75, 1.25));
        let a = tfn(0.1, 0.2, 0.4);
        assert_eq!(a + TriangularFuzzyNumber::ZERO, a);
        assert_eq!(tfn(0.75, 1.0, 1.0) + tfn(0.75, 1.0, 1.0), tfn(1.5, 2.0, 2.0));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(tfn(0.5, 0.75, 1.0).scale(0.5).unwrap(), tfn(0.25, 0.375, 0.5));
        let a = tfn(0.1, 0.2, 0.4);
        assert_eq!(a.scale(1.0).unwrap(), a);
        assert_eq!(a.scale(-1.0), Err(Error::NegativeScalar(-1.0)));
    }

    #[test]
    fn raw_operations() {
        let d = tfn(1.0, 2.0, 3.0).sub(&tfn(0.5, 1.0, 1.5));
        assert_eq!(d, RawTriple::new(0.5, 1.0, 1.5));
        assert!(d.is_triangular());

        let bad = tfn(0.0, 1.0, 2.0).sub(&tfn(0.0, 0.0, 2.0));
        assert_eq!(bad, RawTriple::new(0.0, 1.0, 0.0));
        assert!(matches!(bad.validate(), Err(Error::InvalidFuzzyNumber { .. })));

        assert_eq!(tfn(1.0, 2.0, 3.0).mul(&tfn(0.5, 1.0, 2.0)), RawTriple::new(0.5, 2.0, 6.0));
        assert_eq!(tfn(1.0, 2.0, 3.0).div(&tfn(0.5, 1.0, 2.0)).unwrap(), RawTriple::new(2.0, 2.0, 1.5));
        assert!(matches!(
            tfn(1.0, 2.0, 3.0).div(&tfn(0.0, 1.0, 2.0)),
            Err(Error::DivisionByZeroComponent { .. })
        ));
    }

    #[test]
    fn mean_examples() {
        assert_eq!(fuzzy_mean(&[tfn(0.0, 0.25, 0.5)]).unwrap(), tfn(0.0, 0.25, 0.5));
        assert_eq!(
            fuzzy_mean(&[tfn(0.0, 0.25, 0.5), tfn(0.5, 0.75, 1.0)]).unwrap(),
            tfn(0.25, 0.5, 0.75)
        );
        assert_eq!(fuzzy_mean(&[]), Err(Error::EmptyPanel));
    }

    fn arb_tfn() -> impl Strategy<Value = TriangularFuzzyNumber> {
        (-10.0f64..10.0, 0.0f64..5.0, 0.0f64..5.0).prop_map(|(l, a, b)| tfn(l, l + a, l + a + b))
    }

    proptest! {
        #[test]
        fn add_preserves_ordering_and_commutes(a in arb_tfn(), b in arb_tfn(), c in arb_tfn()) {
            let s = a + b;
            prop_assert!(TriangularFuzzyNumber::new(s.l(), s.m(), s.r()).is_ok());
            assert_close(&(a + b), &(b + a), 1e-12);
            assert_close(&((a + b) + c), &(a + (b + c)), 1e-12);
        }

        #[test]
        fn scale_distributes_over_add(lambda in 0.0f64..10.0, a in arb_tfn(), b in arb_tfn()) {
            let lhs = (a + b).scale(lambda).unwrap();
            let rhs = a.scale(lambda).unwrap() + b.scale(lambda).unwrap();
            assert_close(&lhs, &rhs, 1e-12);
        }

        #[test]
        fn mean_of_copies_is_identity(a in arb_tfn(), n in 1usize..40) {
            let copies = vec![a; n];
            assert_close(&fuzzy_mean(&copies).unwrap(), &a, 1e-12);
        }
    }
}
