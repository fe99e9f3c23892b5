use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coordinate at index {index}")]
    NonFiniteCoordinate { index: usize },

    #[error("dataset too small: need at least {min} points, got {actual}")]
    TooFewPoints { min: usize, actual: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("zero variance in {variable}")]
    ZeroVariance { variable: &'static str },

    #[error("grid {lx}x{ly} has no usable normalizer; both dimensions must be at least 2")]
    DegenerateGrid { lx: usize, ly: usize },

    #[error(
        "no admissible grid: n^{exponent} = {bound:.3} admits no shape with lx*ly >= 4; \
         use a larger exponent or more samples"
    )]
    NoAdmissibleGrid { exponent: f64, bound: f64 },

    #[error("smoothing half-width {epsilon} out of bounds for n = {n}")]
    WindowOutOfBounds { epsilon: usize, n: usize },

    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("unknown {0}")]
    UnknownKind(String),

    #[error("report is missing measure {0}")]
    MissingMeasure(&'static str),

    #[error("{count} report cell(s) errored; see the emitted report for details")]
    ReportCellErrors { count: usize },

    #[error("malformed CSV at line {line}: {message}")]
    MalformedCsv { line: usize, message: String },

    #[error("duplicate column name '{0}'")]
    DuplicateColumn(String),

    #[error("invalid probability distribution: sum is {sum}")]
    InvalidDistribution { sum: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Scoring/domain errors, as opposed to malformed input. The CLI maps
    /// input errors to exit code 2 and domain errors to exit code 3.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ZeroVariance { .. }
                | Error::DegenerateGrid { .. }
                | Error::NoAdmissibleGrid { .. }
                | Error::WindowOutOfBounds { .. }
                | Error::NonPositiveParameter { .. }
                | Error::TooFewPoints { .. }
                | Error::ReportCellErrors { .. }
        )
    }
}
