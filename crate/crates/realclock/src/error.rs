use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("dimension {dim} exceeds the dense-storage cap {cap}")]
    DimensionLimit { dim: usize, cap: usize },
    #[error("matrix is not Hermitian: max |A - A^dagger| entry = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("projector is not idempotent: max |P^2 - P| entry = {deviation:.3e}")]
    NotIdempotent { deviation: f64 },
    #[error("not a valid density matrix: {reason}")]
    InvalidDensity { reason: String },
    #[error("projection probability {prob:.3e} is below 1e-14; no post-state defined")]
    ZeroProbability { prob: f64 },
    #[error("time must be nonnegative, got {value}")]
    NegativeTime { value: f64 },
    #[error("clock moments are undefined at T = {value}; need T > 0")]
    NonpositiveTime { value: f64 },
    #[error(
        "integration window covers only {covered:.2} clock widths on the narrow side of T; \
         need at least {required}"
    )]
    WindowTooNarrow { covered: f64, required: f64 },
    #[error("clock never reads T0 on this window: denominator {value:.3e} below 1e-14")]
    ClockNeverReadsT0 { value: f64 },
    #[error("anti-damping: accumulated exponent {gamma:.3e} is negative; refusing to propagate")]
    AntiDamping { gamma: f64 },
    #[error("step {step:.3e} too large for the fastest phase; need step <= {max_step:.3e}")]
    StepTooLarge { step: f64, max_step: f64 },
    #[error("power-law rate is singular at start time {t_start}; start the run at T > 0")]
    SingularStart { t_start: f64 },
    #[error("envelope scaling assumes clock exponent 1/3, got {exponent}")]
    ScalingMismatch { exponent: f64 },
    #[error("no envelope/floor crossing found below N = {n_max}")]
    NoCrossing { n_max: u64 },
    #[error("empty grid")]
    EmptyGrid,
    #[error("index {index} out of range for {len} environment spins")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
