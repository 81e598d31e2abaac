//! Non-Markovianity of the quantum Brownian motion channel, quantified by
//! backflows of Gaussian steerability.
//!
//! A two-mode squeezed vacuum probe sends one or both modes through a
//! weak-coupling damping channel driven by an Ohmic or sub-Ohmic bath. The
//! crate computes the channel's time-dependent damping and diffusion
//! coefficients, evolves the covariance matrix, tracks the A -> B Gaussian
//! steerability, and sums its rises into a non-Markovianity measure, for a
//! single parameter point or a coupling-constant sweep.
//!
//! Module map:
//! - [`special`]: erf/erfc/erfi, the cosine Fresnel integral, polylogarithms;
//! - [`quad`]: adaptive Gauss-Kronrod, oscillatory tails, series summation;
//! - [`gaussian`]: covariance matrices, physicality, steerability;
//! - [`environment`]: spectral density and the gamma/Delta coefficients;
//! - [`dynamics`]: channel action on the covariance triple, Lindblad witness;
//! - [`measure`]: backflow intervals, the measure, coupling sweeps;
//! - [`config`], [`output`]: CLI configuration and CSV rendering.

pub mod config;
pub mod dynamics;
pub mod environment;
pub mod error;
pub mod gaussian;
pub mod measure;
pub mod output;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
