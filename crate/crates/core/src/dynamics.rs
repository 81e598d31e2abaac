//! Covariance-matrix evolution through the local damping channel and the
//! master-equation-level non-Markovianity witness.
//!
//! In standard form the channel acts on the (a, b, c) triple. With
//! `E = e^{-Gamma(t)}` and `D = Delta_Gamma(t)`:
//!
//! ```text
//! channel on A:      a = E cosh 2r + D,  b = cosh 2r,        c = sqrt(E) sinh 2r
//! channel on B:      the label swap of the above
//! channel on both:   a = b = E cosh 2r + D,                  c = E sinh 2r
//! ```
//!
//! so t = 0 (E = 1, D = 0) reproduces the two-mode squeezed vacuum exactly.
//! An alternative convention scales c by cosh 2r instead of sinh 2r; it is
//! kept behind [`CorrelationConvention::CoshCorrelation`] for comparison but
//! makes the initial state unphysical (a b - c^2 = 0 in the both-modes case)
//! and is not the default.

use crate::environment::CoefficientTrace;
use crate::error::{Error, Result};
use crate::gaussian::{physicality_min_eigenvalue, TwoModeCovariance};

/// Which mode(s) the channel acts on, relative to the steering direction
/// A -> B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingScenario {
    /// Channel on the steering mode A.
    SteeringModeOnly,
    /// Channel on the steered mode B.
    SteeredModeOnly,
    /// Independent identical channels on both modes.
    BothModes,
}

impl CouplingScenario {
    pub const ALL: [CouplingScenario; 3] = [
        CouplingScenario::SteeringModeOnly,
        CouplingScenario::SteeredModeOnly,
        CouplingScenario::BothModes,
    ];

    /// Short label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            CouplingScenario::SteeringModeOnly => "right",
            CouplingScenario::SteeredModeOnly => "left",
            CouplingScenario::BothModes => "both",
        }
    }
}

/// Which accumulated-diffusion formula drives the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaGammaMode {
    /// `Delta_Gamma = e^{-Gamma} \int e^{Gamma} 2 Delta`.
    Exact,
    /// `Delta_Gamma ~ \int 2 Delta`, the weak-coupling shortcut (default).
    #[default]
    WeakCoupling,
}

/// Time dependence of the correlation block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrelationConvention {
    /// `c(t) = decay * sinh 2r`: pure state at t = 0 (default).
    #[default]
    SinhCorrelation,
    /// `c(t) = decay * cosh 2r`: kept for comparison only.
    CoshCorrelation,
}

/// Tolerance on the physicality check of evolved states; absorbs cumulative
/// quadrature noise.
pub const PHYSICALITY_TOL: f64 = 1e-8;

/// Evolved covariance triple at one grid index.
pub fn evolve_abc(
    r: f64,
    trace: &CoefficientTrace,
    scenario: CouplingScenario,
    mode: DeltaGammaMode,
    convention: CorrelationConvention,
    index: usize,
) -> Result<TwoModeCovariance> {
    if index >= trace.len() {
        return Err(Error::Domain(format!(
            "grid index {index} out of range (trace has {} samples)",
            trace.len()
        )));
    }
    let cosh2r = (2.0 * r).cosh();
    let corr = match convention {
        CorrelationConvention::SinhCorrelation => (2.0 * r).sinh(),
        CorrelationConvention::CoshCorrelation => cosh2r,
    };
    let decay = (-trace.big_gamma[index]).exp();
    let dg = match mode {
        DeltaGammaMode::Exact => trace.delta_gamma_exact[index],
        DeltaGammaMode::WeakCoupling => trace.delta_gamma_weak[index],
    };
    let damped = decay * cosh2r + dg;
    let cm = match scenario {
        CouplingScenario::SteeringModeOnly => TwoModeCovariance {
            a: damped,
            b: cosh2r,
            c: decay.sqrt() * corr,
        },
        CouplingScenario::SteeredModeOnly => TwoModeCovariance {
            a: cosh2r,
            b: damped,
            c: decay.sqrt() * corr,
        },
        CouplingScenario::BothModes => TwoModeCovariance {
            a: damped,
            b: damped,
            c: decay * corr,
        },
    };
    let min_eig = physicality_min_eigenvalue(&cm);
    if min_eig < -PHYSICALITY_TOL {
        return Err(Error::Unphysical { time: trace.times[index], min_eig });
    }
    Ok(cm)
}

/// Maximal grid intervals on which `Delta(t) < |gamma(t)|`, the
/// divisibility-breaking witness of the master equation. Empty means the
/// witness does not fire.
pub fn lindblad_witness(trace: &CoefficientTrace) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..trace.len() {
        let fires = trace.delta[i] < trace.gamma[i].abs();
        match (fires, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((trace.times[s], trace.times[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((trace.times[s], *trace.times.last().unwrap()));
    }
    out
}
