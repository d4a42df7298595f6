use alloc::boxed::Box;
use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction b must have zero mean (b0 = {b0})")]
    NotMeanZero { b0: f64 },

    #[error("exponent overflow guard: |t| * max|b| = {product} exceeds 500")]
    Overflow { product: f64 },

    #[error("circle map is not strictly increasing at node {index}")]
    NotMonotone { index: usize },

    #[error("circle map lift is not periodic: phi(2pi) - phi(0) = {span}")]
    NotPeriodic { span: f64 },

    #[error("circle map is not normalized: phi(0) = {phi0}")]
    NotNormalized { phi0: f64 },

    #[error("{what} out of range: |{what}| = {modulus}, limit {limit}")]
    OutOfDomain {
        what: &'static str,
        modulus: f64,
        limit: f64,
    },

    #[error("barycenter iteration did not converge at z = {z}: |F| = {residual:e}")]
    NonConvergence { z: Complex64, residual: f64 },

    #[error("degenerate Jacobian at z = {z}: |D| = {det:e}")]
    DegenerateJacobian { z: Complex64, det: f64 },

    #[error("critical point at z = {z}: |f'| = {modulus:e}")]
    CriticalPoint { z: Complex64, modulus: f64 },

    #[error("series is singular at the origin")]
    OriginSingularity,

    #[error("dilatation modulus {modulus} is not below 1")]
    InvalidDilatation { modulus: f64 },

    #[error("quadrature with {points} points is too coarse, need at least {required}")]
    QuadratureTooCoarse { points: usize, required: usize },

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    #[error("{failed} of {total} grid nodes failed; first: {first}")]
    Field {
        failed: usize,
        total: usize,
        first: Box<Error>,
    },
}

impl Error {
    /// True for failures of the numerical solver rather than of the input.
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::NonConvergence { .. } | Error::DegenerateJacobian { .. } => true,
            Error::Field { first, .. } => first.is_solver_failure(),
            _ => false,
        }
    }
}
