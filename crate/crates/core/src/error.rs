use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error in field `{field}`: {detail}")]
    Schema { field: String, detail: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not plurisubharmonic: eigenvalue {eigenvalue:e} at {point:?}")]
    NotPsh { point: Vec<(f64, f64)>, eigenvalue: f64 },
    #[error("point is not interior (defining value {value:e})")]
    NotInterior { value: f64 },
    #[error("ray leaves the chart without meeting the boundary")]
    NoBoundaryHit,
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("pole of a Cayley-type map hit")]
    PoleHit,
    #[error("point outside the chart of the map: {0}")]
    ChartViolation(String),
    #[error("no bounded realization known for model `{0}`")]
    UnsupportedModel(String),
    #[error("domain `{0}` is unbounded")]
    Unbounded(String),
    #[error("coordinate {k} of the approach sequence vanishes")]
    ZeroCoordinate { k: usize },
    #[error("all normal-form coefficients vanish up to the declared type")]
    AllCoefficientsZero,
    #[error("non-positive value {value:e} at sample {index}")]
    NonPositiveValue { index: usize, value: f64 },
    #[error("not strongly pseudoconvex: minimal eigenvalue {min_eigenvalue:e}")]
    NotStronglyPseudoconvex { min_eigenvalue: f64 },
    #[error("per-j matrices do not converge (oscillation {oscillation:e})")]
    NotConverged { oscillation: f64 },
    #[error("center does not map to the origin (|f(p)| = {norm:e})")]
    CenterNotMapped { norm: f64 },
    #[error("pipeline mismatch: {0}")]
    PipelineMismatch(String),
    #[error("quantity not representable in the exact ring: {0}")]
    NotRepresentable(String),
    #[error("mismatch for {constant}: computed {computed}, expected {expected}")]
    ReproMismatch { constant: String, computed: String, expected: String },
}
