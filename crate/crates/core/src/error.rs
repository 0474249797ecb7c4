use crate::model::LevelLabel;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Dressed quantities are undefined at zero coupling.
    #[error("dressed-state quantity undefined at zero coupling")]
    DegenerateCoupling,

    #[error("truncation too small: {what} needs photon/dressed index {needed}, cutoff is {cutoff}")]
    Truncation {
        what: String,
        needed: usize,
        cutoff: usize,
    },

    #[error("near-degenerate denominator {gap:e} between {level} and {other}")]
    NearDegeneracy {
        level: LevelLabel,
        other: LevelLabel,
        gap: f64,
    },

    #[error("perturbation series breakdown: max coupling ratio {ratio:.4} >= 1")]
    Breakdown { ratio: f64 },

    #[error("no convergence at n_max={n_max}: last delta {last_delta:e}")]
    NonConvergence { n_max: usize, last_delta: f64 },

    #[error("eigensolver failed at dim={dim}: worst residual {residual:e}")]
    Eigensolver { dim: usize, residual: f64 },

    #[error("ambiguous match for {label}: best overlap {overlap:.4}")]
    AmbiguousMatch { label: LevelLabel, overlap: f64 },

    #[error("invalid molecule record: {0}")]
    InvalidRecord(String),

    #[error("catalog i/o: {0}")]
    Catalog(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CSV error columns and CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::DegenerateCoupling => "degenerate_coupling",
            Error::Truncation { .. } => "truncation",
            Error::NearDegeneracy { .. } => "near_degeneracy",
            Error::Breakdown { .. } => "breakdown",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Eigensolver { .. } => "eigensolver",
            Error::AmbiguousMatch { .. } => "ambiguous_match",
            Error::InvalidRecord(_) => "invalid_record",
            Error::Catalog(_) => "catalog",
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Catalog(e.to_string())
    }
}
