use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("scale must exceed 1 (got N = {0})")]
    ScaleTooSmall(f64),
    #[error("nothing to wire: the domain has no sites")]
    EmptyDomain,
    #[error("invalid polygon: {0}")]
    InvalidShape(String),
    #[error("partition requires l >= k (got k = {k}, l = {l})")]
    PartitionOrder { k: u32, l: u32 },
    #[error(
        "domain has {size} vertices, above the dense-solve cap of {cap}; \
         use per-column solves (green_column) instead"
    )]
    DenseCapExceeded { size: usize, cap: usize },
    #[error("point ({0}, {1}) is not an interior vertex")]
    NotInterior(i64, i64),
    #[error("factorization failed: matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("linear solve did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("ball B(({x}, {y}); {radius}) and its outer boundary are not contained in the domain")]
    BallOutsideDomain { x: i64, y: i64, radius: f64 },
    #[error("boundary time {t} is beyond the simulated horizon {horizon}")]
    BeyondHorizon { t: f64, horizon: f64 },
    #[error("V is not a subset of U")]
    NotSubset,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("set is not (r_n, n - r_n)-clustered")]
    NotClustered,
    #[error("statistical test input: {0}")]
    Statistics(String),
}

pub type Result<T> = std::result::Result<T, Error>;
