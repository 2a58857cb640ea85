use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("physical constants must be finite and strictly positive (hbar={hbar}, mass={mass}, kappa={kappa})")]
    InvalidUnits { hbar: f64, mass: f64, kappa: f64 },
    #[error("shear parameter nu={nu} outside the accepted range ({min}, {max}]")]
    ShearOutOfRange { nu: f64, min: f64, max: f64 },
    #[error("energy must be strictly positive, got {0}")]
    NonPositiveEnergy(f64),
    #[error("argument {z} outside the supported range |z| <= {limit}")]
    OutOfRange { z: f64, limit: f64 },
    #[error("index {index} outside the supported range [{min}, {max}]")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("wavefunction overflowed near x={x}")]
    Overflow { x: f64 },
    #[error("could not bracket level {level} in energy range [{lo}, {hi}]")]
    BracketFailure { level: usize, lo: f64, hi: f64 },
    #[error("no convergence after {iterations} iterations (last estimate {estimate})")]
    ConvergenceFailure { iterations: usize, estimate: f64 },
    #[error("expected {expected} nodes, found {found}")]
    NodeCountMismatch { expected: usize, found: usize },
    #[error("node trajectory broke between nu={nu_from} and nu={nu_to}")]
    TrajectoryBreak { nu_from: f64, nu_to: f64 },
    #[error("invalid shear grid: {0}")]
    InvalidGrid(&'static str),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
}
