use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant carries enough context
/// (expert id, cell, row) to locate the offending input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid triangular fuzzy number ({l}, {m}, {r}): components must be finite with l <= m <= r")]
    InvalidFuzzyNumber { l: f64, m: f64, r: f64 },

    #[error("negative scalar {0} would reverse the component order")]
    NegativeScalar(f64),

    #[error("division by a zero component of ({l}, {m}, {r})")]
    DivisionByZeroComponent { l: f64, m: f64, r: f64 },

    #[error("cannot aggregate an empty panel of judgments")]
    EmptyPanel,

    #[error("unknown linguistic term `{term}`{location}")]
    UnknownTerm { term: String, location: String },

    #[error("invalid linguistic scale: {0}")]
    InvalidScale(String),

    #[error("invalid factor catalog: {0}")]
    InvalidCatalog(String),

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("expert `{expert}` references unknown factor `{factor}`")]
    UnknownFactor { expert: String, factor: String },

    #[error("expert `{expert}` rates {from} -> {to} more than once")]
    DuplicateJudgment { expert: String, from: String, to: String },

    #[error("expert `{expert}` gives no judgment for {from} -> {to}")]
    MissingJudgment { expert: String, from: String, to: String },

    #[error("expert `{expert}` rates factor {factor} against itself")]
    SelfJudgment { expert: String, factor: String },

    #[error("expert `{expert}` supplies {found} cells, expected {expected}")]
    RaggedPanel { expert: String, expected: usize, found: usize },

    #[error("matrix is not square: {0}")]
    NonSquare(String),

    #[error("negative entry {value} at row {row}, column {column}")]
    NegativeEntry { row: String, column: String, value: f64 },

    #[error("non-numeric field `{field}` at row {row}, column {column}")]
    NonNumericField { row: String, column: String, field: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("direct-relation matrix has no positive entry")]
    ZeroMatrix,

    #[error("I - D is singular: pivot {pivot:e} in column {column} is below tolerance")]
    SingularSystem { column: usize, pivot: f64 },

    #[error("requested top {k} factors but the cause group has only {available}")]
    KExceedsCauseGroup { k: usize, available: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status for this error class. Distinct per variant so that
    /// scripts can branch on the failure kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MalformedDocument(_) => 10,
            Error::UnknownFactor { .. } => 11,
            Error::DuplicateJudgment { .. } => 12,
            Error::MissingJudgment { .. } => 13,
            Error::SelfJudgment { .. } => 14,
            Error::UnknownTerm { .. } => 15,
            Error::NonSquare(_) => 16,
            Error::NegativeEntry { .. } => 17,
            Error::NonNumericField { .. } => 18,
            Error::RaggedPanel { .. } => 19,
            Error::EmptyPanel => 20,
            Error::NegativeScalar(_) => 21,
            Error::DivisionByZeroComponent { .. } => 22,
            Error::InvalidFuzzyNumber { .. } => 23,
            Error::InvalidScale(_) => 24,
            Error::InvalidCatalog(_) => 25,
            Error::DimensionMismatch(_) => 26,
            Error::ZeroMatrix => 27,
            Error::SingularSystem { .. } => 28,
            Error::KExceedsCauseGroup { .. } => 29,
            Error::Io(_) => 30,
        }
    }

    /// Short stable name of the error class.
    pub fn class(&self) -> &'static str {
        match self {
            Error::MalformedDocument(_) => "MalformedDocument",
            Error::UnknownFactor { .. } => "UnknownFactor",
            Error::DuplicateJudgment { .. } => "DuplicateJudgment",
            Error::MissingJudgment { .. } => "MissingJudgment",
            Error::SelfJudgment { .. } => "SelfJudgment",
            Error::UnknownTerm { .. } => "UnknownTerm",
            Error::NonSquare(_) => "NonSquare",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NonNumericField { .. } => "NonNumericField",
            Error::RaggedPanel { .. } => "RaggedPanel",
            Error::EmptyPanel => "EmptyPanel",
            Error::NegativeScalar(_) => "NegativeScalar",
            Error::DivisionByZeroComponent { .. } => "DivisionByZeroComponent",
            Error::InvalidFuzzyNumber { .. } => "InvalidFuzzyNumber",
            Error::InvalidScale(_) => "InvalidScale",
            Error::InvalidCatalog(_) => "InvalidCatalog",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::KExceedsCauseGroup { .. } => "KExceedsCauseGroup",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let all = [
            Error::MalformedDocument(String::new()),
            Error::UnknownFactor { expert: String::new(), factor: String::new() },
            Error::DuplicateJudgment { expert: String::new(), from: String::new(), to: String::new() },
            Error::MissingJudgment { expert: String::new(), from: String::new(), to: String::new() },
            Error::SelfJudgment { expert: String::new(), factor: String::new() },
            Error::UnknownTerm { term: String::new(), location: String::new() },
            Error::NonSquare(String::new()),
            Error::NegativeEntry { row: String::new(), column: String::new(), value: -1.0 },
            Error::NonNumericField { row: String::new(), column: String::new(), field: String::new() },
            Error::RaggedPanel { expert: String::new(), expected: 4, found: 3 },
            Error::EmptyPanel,
            Error::NegativeScalar(-1.0),
            Error::DivisionByZeroComponent { l: 0.0, m: 1.0, r: 2.0 },
            Error::InvalidFuzzyNumber { l: 1.0, m: 0.0, r: 2.0 },
            Error::InvalidScale(String::new()),
            Error::InvalidCatalog(String::new()),
            Error::DimensionMismatch(String::new()),
            Error::ZeroMatrix,
            Error::SingularSystem { column: 0, pivot: 0.0 },
            Error::KExceedsCauseGroup { k: 2, available: 1 },
            Error::Io(String::new()),
        ];
        let mut codes: Vec<i32> = all.iter().map(Error::exit_code).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), all.len());
        assert!(codes.iter().all(|&c| c > 2));
    }
}
