use std::fmt;

use thiserror::Error;

/// A row or column of a matrix, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Col(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square")]
    NonSquare,
    #[error("entry ({0},{1}) is not in {{-1,0,1}}")]
    EntryOutOfRange(usize, usize),
    #[error("row {0} does not sum to 1")]
    RowSumViolation(usize),
    #[error("column {0} does not sum to 1")]
    ColSumViolation(usize),
    #[error("nonzero entries of {0} do not alternate starting and ending with 1")]
    AlternationViolation(Line),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("size {got} exceeds the bound {max}")]
    SizeBoundExceeded { got: usize, max: usize },
    #[error("index ({0},{1}) out of range")]
    IndexOutOfRange(usize, usize),
    #[error("witness does not realize the pattern")]
    InvalidWitness,
    #[error("the zero ideal has no proper minimal primes to report")]
    ZeroIdeal,
    #[error("the unit ideal has no primes")]
    UnitIdeal,
    #[error("cell set is not contained in the support of the ideal")]
    SupportViolation,
    #[error("word read from {0} is not reduced")]
    NonReducedWord(String),
    #[error("matrix does not match the badblock configuration at ({0},{1})")]
    NotBadblock(usize, usize),
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("complex has more than {0} faces")]
    FaceBudgetExceeded(usize),
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonSquare => "E_NON_SQUARE",
            Error::EntryOutOfRange(..) => "E_ENTRY_RANGE",
            Error::RowSumViolation(_) => "E_ROW_SUM",
            Error::ColSumViolation(_) => "E_COL_SUM",
            Error::AlternationViolation(_) => "E_ALTERNATION",
            Error::SizeMismatch(..) => "E_SIZE_MISMATCH",
            Error::SizeBoundExceeded { .. } => "E_SIZE_BOUND",
            Error::IndexOutOfRange(..) => "E_INDEX_RANGE",
            Error::InvalidWitness => "E_INVALID_WITNESS",
            Error::ZeroIdeal => "E_ZERO_IDEAL",
            Error::UnitIdeal => "E_UNIT_IDEAL",
            Error::SupportViolation => "E_SUPPORT",
            Error::NonReducedWord(_) => "E_NON_REDUCED",
            Error::NotBadblock(..) => "E_NOT_BADBLOCK",
            Error::NotAFace(_) => "E_NOT_A_FACE",
            Error::FaceBudgetExceeded(_) => "E_FACE_BUDGET",
            Error::UnknownStatement(_) => "E_UNKNOWN_STATEMENT",
            Error::Cache(_) => "E_CACHE",
            Error::Parse(_) => "E_PARSE",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
