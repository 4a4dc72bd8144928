use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The truncated series cannot meet the tail criterion at this distance
    /// from its center; re-center and retry.
    #[error("|z - center| = {distance:.6e} exceeds the validity radius of the order-{order} series")]
    RadiusExceeded { distance: f64, order: usize },

    #[error("series for {what} did not converge within {terms} terms")]
    NoConvergence { what: String, terms: usize },

    #[error("{what} needs about {needed} digits, above the limit of {limit}")]
    PrecisionLimit { what: String, needed: u32, limit: u32 },

    #[error("quadrature stalled at error {achieved:.3e} (requested {requested:.3e})")]
    QuadratureFailure { achieved: f64, requested: f64 },

    #[error("Polya interval {k} contains no sign change")]
    IntervalMiss { k: usize },

    #[error("contour passes within the tolerance band of a zero (min |S| = {min_abs:.3e})")]
    ZeroOnContour { min_abs: f64 },

    #[error("not a simple zero: |derivative| = {deriv_abs:.3e}")]
    NotASimpleZero { deriv_abs: f64 },

    #[error("classification inconclusive: {0}")]
    Inconclusive(String),

    #[error("tail estimate {tail:.3e} exceeds target {target:.3e}; more zeros are needed")]
    InsufficientZeros { tail: f64, target: f64 },

    #[error("ratio sequence oscillates between {first} and {second}")]
    Oscillating { first: String, second: String },

    #[error("{what} not converged after {terms} terms")]
    NotConverged { what: String, terms: usize },

    #[error("transform with A = 0 requires the degenerate-projection flag")]
    DegenerateA,

    #[error("zero sets differ: max distance {max_distance:.3e} exceeds {tol:.3e}")]
    ZeroSetMismatch { max_distance: f64, tol: f64 },

    #[error("operation needs a series that solves the ODE (got a derived series)")]
    NotAnOdeSolution,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
