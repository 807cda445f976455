use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("background flow is not subsonic: u² + v² = {speed2} ≥ c² = {c2}")]
    SupersonicFlow { speed2: f64, c2: f64 },
    #[error("density and sound speed must be positive (rho = {rho}, c = {c})")]
    NonpositiveDensityOrSound { rho: f64, c: f64 },
    #[error("mode analysis divides by the normal velocity, which is zero")]
    ZeroNormalVelocity,
    #[error("depth {depth} lies outside the layer [0, {delta}]")]
    OutOfLayer { depth: f64, delta: f64 },
    #[error("degenerate frequency: {0}")]
    DegenerateFrequency(&'static str),
    #[error("polynomial matrix has identically zero determinant")]
    SingularMatrix,
    #[error("(omega, k) sits on the propagative/evanescent branch boundary")]
    BranchBoundary,
    #[error("factor F is numerically singular at a mode exponent (condition {0:e})")]
    SingularF(f64),
    #[error("interface system is numerically singular (condition {0:e})")]
    SingularInterfaceSystem(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid layer configuration: {0}")]
    InvalidLayer(String),
    #[error("layer of {n_delta} cells is too wide for a {cells}-cell axis")]
    LayerTooWide { n_delta: usize, cells: usize },
    #[error("state became unstable at step {step} (max |field| = {max:e})")]
    UnstableState { step: usize, max: f64 },
    #[error("reference contaminated: outer-wall reflection can re-enter after {limit_steps} steps, horizon is {horizon} steps")]
    ReflectedContamination { limit_steps: usize, horizon: usize },
    #[error("reference norm is zero")]
    ZeroReference,
    #[error("runs do not share a comparison region")]
    DisjointRuns,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
