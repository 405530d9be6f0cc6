use thiserror::Error;

/// Errors raised by the numerical kernels and the experiment runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(
        "matrix is rank deficient (pivot {pivot:e} at row {row} below threshold {threshold:e})"
    )]
    RankDeficient {
        row: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("inner projection system is numerically singular at row {row}")]
    SingularInner { row: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigenvalue {0:e} is not positive")]
    NotPositive(f64),

    #[error("moment order {0} exceeds the overflow guard")]
    Overflow(u32),

    #[error("normalising variance is not positive: sigma^2 = {0}")]
    NonPositiveVariance(f64),

    #[error("argument outside its domain: {0}")]
    Domain(String),

    #[error("too few samples: got {got}, need at least {need}")]
    TooFewSamples { got: usize, need: usize },

    #[error("linear map is singular (|det| = {0:e})")]
    SingularM(f64),

    #[error("Monte Carlo discard rate too high: {discarded} of {draws} draws")]
    DiscardRate { discarded: usize, draws: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("replicate {replicate} (seed {seed:#018x}) failed: {source}")]
    Replicate {
        replicate: u64,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures of the numerical kernels, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient { .. }
                | Error::SingularInner { .. }
                | Error::NotPositive(_)
                | Error::NonPositiveVariance(_)
                | Error::SingularM(_)
                | Error::DiscardRate { .. }
                | Error::Replicate { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
