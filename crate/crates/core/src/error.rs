use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chart symbol {0} cannot be differentiated by the base derivation")]
    ChartSymbolInDerivation(String),

    #[error("theta derivative of atilde requested without a rate")]
    MissingAtildeRate,

    #[error("intersection matrix inconsistent at entry ({row},{col}): {detail}")]
    InconsistentIntersection { row: usize, col: usize, detail: String },

    #[error("operator is not self-dual: residual {index} = {residual}")]
    NotSelfDual { index: usize, residual: String },

    #[error("chart solver stuck with {remaining} unresolved entries: {entries}")]
    StuckSolver { remaining: usize, entries: String },

    #[error("chart verification failed at entry ({row},{col})")]
    ChartMismatch { row: usize, col: usize },

    #[error("base velocity mismatch: {0}")]
    ZdotMismatch(String),

    #[error("superdiagonal of the transformed connection does not vanish at ({row},{col})")]
    NonCompanionConnection { row: usize, col: usize },

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("integration stopped near a singular locus at t = {t}: |{what}| = {value:e}")]
    SingularityProximity { t: f64, what: String, value: f64 },

    #[error("non-finite state at t = {0}")]
    NonFinite(f64),

    #[error("singular transformation: {0}")]
    SingularTransform(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown preset {0}")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
