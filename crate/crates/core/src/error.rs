use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("x = {x} lies outside the domain [0, {ell}]")]
    OutOfDomain { x: f64, ell: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero pivot at elimination index {index} (|pivot| = {pivot:e})")]
    PivotFailure { index: usize, pivot: f64 },

    #[error("equidistribution did not converge after {iterations} sweeps (last update {final_update:e})")]
    NonConvergence {
        iterations: usize,
        final_update: f64,
    },

    #[error("sweep {sweep} produced a non-monotone grid at interval {interval}")]
    NonMonotoneGrid { sweep: usize, interval: usize },

    #[error("monitor value {value} on interval {interval} is not finite and positive")]
    DegenerateMonitor { interval: usize, value: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed csv: {0}")]
    Format(String),
}
