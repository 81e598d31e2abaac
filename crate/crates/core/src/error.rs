//! Error types shared across the crate.

use crate::environment::Ohmicity;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("adaptive quadrature did not converge after {subdivisions} subdivisions (estimated residual {residual:e})")]
    QuadratureNonConvergence { subdivisions: usize, residual: f64 },

    #[error("oscillatory tail did not converge after {chunks} chunks (last chunk magnitude {last_chunk:e})")]
    TailNonConvergence { chunks: usize, last_chunk: f64 },

    #[error("series did not converge after {terms} terms")]
    SeriesNonConvergence { terms: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("erfi({0}) would overflow f64 (|x| must be <= {bound})", bound = crate::special::ERFI_MAX_ARG)]
    ErfiOverflow(f64),

    #[error("closed form is valid only for {expected:?} spectral densities, got {actual:?}")]
    WrongOhmicity { expected: Ohmicity, actual: Ohmicity },

    #[error("Matsubara denominator 4 n^2 pi^2 T^2 - omega_c^2 within guard band of zero at n = {n}")]
    NearMatsubaraPole { n: u32 },

    #[error("degenerate covariance matrix: a*b - c^2 = {0:e} is not positive")]
    DegenerateState(f64),

    #[error("unphysical covariance matrix at t = {time}: min eigenvalue of sigma + i Omega is {min_eig:e}")]
    Unphysical { time: f64, min_eig: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
