use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("seed at x = {x}, z = {z} is unusable: {reason}")]
    SeedInvalid { x: f64, z: f64, reason: String },

    #[error("density vanishes on the sampling range")]
    ZeroDensityRange,

    #[error("grid layouts differ")]
    GridMismatch,

    #[error("amplitude is not positive at interior index {index}")]
    NonpositiveAmplitude { index: usize },

    #[error("density is not positive at interior index {index}")]
    NonpositiveDensity { index: usize },

    #[error("propagation distance must be positive, got {0}")]
    NonpositiveDistance(f64),

    #[error("field window too narrow: edge amplitude {edge:e} vs peak {peak:e}")]
    WindowTooNarrow { edge: f64, peak: f64 },

    #[error("lattice must be periodic along every axis")]
    NonPeriodicLattice,

    #[error("denominator vanishes ({0:e})")]
    VanishingDenominator(f64),

    #[error("divergence rms {rms:e} exceeds limit {limit:e}")]
    DivergenceTooLarge { rms: f64, limit: f64 },

    #[error("four-vector is not timelike (norm {norm:e})")]
    NotTimelike { norm: f64 },

    #[error("wave vector component {axis} is incommensurate with the periodic lattice")]
    IncommensurateWave { axis: usize },

    #[error("no nontrivial velocity: pi.pi = {norm:e}, expected {expected:e}")]
    NoNontrivialSolution { norm: f64, expected: f64 },
}
