use thiserror::Error;

/// Errors raised by model construction, the graded-algebra kernel and the
/// coherent-state machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The arctanh argument relating the metric strength to `z` left (-1, 1).
    #[error("metric ansatz has no real solution at z = {z}: arctanh argument {argument} outside (-1, 1)")]
    Domain { z: f64, argument: f64 },

    #[error("degenerate metric relation at z = {z}: alpha + beta - omega*z vanishes")]
    Degenerate { z: f64 },

    /// Two independent routes to the same quantity disagree.
    #[error("consistency check '{what}' failed: residual {residual:e} > tolerance {tolerance:e}")]
    Consistency {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("matrix is not traceless (trace magnitude {0:e})")]
    NotTraceless(f64),

    #[error("coefficient has mixed fermion parity; split it into homogeneous parts")]
    MixedParity,

    #[error("exponent is not an even element of the graded algebra")]
    NotEven,

    #[error("boson truncation n_max = {0} out of range (2..={max})", max = crate::fock::MAX_BOSON_LEVELS)]
    Dimension(usize),

    #[error("amplitude |alpha| = {modulus} too large for n_max = {n_max}: Glauber tail {tail:e} >= {bound:e}")]
    AmplitudeOutOfRange {
        modulus: f64,
        n_max: usize,
        tail: f64,
        bound: f64,
    },

    #[error("coherent states belong to different amplitudes or families")]
    Mismatch,

    #[error("quadrature under-resolved: node doubling moved the residual from {coarse:e} to {fine:e}")]
    UnderResolved { coarse: f64, fine: f64 },

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
