//! Steerability time traces, backflow-interval detection, the
//! non-Markovianity measure, and coupling-constant sweeps.
//!
//! The measure N is the total information backflow: the sum over maximal
//! rising intervals of the steerability trace (gated on S > 0) of the rise
//! `S(t_end) - S(t_start)`. Interval detection is monotone-run segmentation
//! on the sampled sequence, not numerical differentiation: the measure needs
//! only endpoint values.

use rayon::prelude::*;

use crate::dynamics::{evolve_abc, CorrelationConvention, CouplingScenario, DeltaGammaMode};
use crate::environment::{CoefficientBase, CoefficientTrace, EnvironmentSpec};
use crate::error::Result;
use crate::gaussian::{steerability_a_to_b, ProbeSpec, TwoModeCovariance};
use crate::quad::QuadratureConfig;

/// Default per-step rise threshold; suppresses quadrature jitter
/// masquerading as backflow.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Sampled steerability S(t) of mode A over mode B along the evolution.
#[derive(Debug, Clone)]
pub struct SteerabilityTrace {
    pub times: Vec<f64>,
    pub s_values: Vec<f64>,
    pub abc: Vec<TwoModeCovariance>,
    pub scenario: CouplingScenario,
}

/// One maximal rising interval of the steerability trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackflowInterval {
    pub t_start: f64,
    pub t_end: f64,
    /// `S(t_end) - S(interval start)`; a rise out of exact zero contributes
    /// its full endpoint value.
    pub rise: f64,
}

/// Non-Markovianity measure with its supporting intervals and the full
/// parameter echo.
#[derive(Debug, Clone)]
pub struct NonMarkovResult {
    pub measure: f64,
    pub intervals: Vec<BackflowInterval>,
    pub scenario: CouplingScenario,
    pub env: EnvironmentSpec,
    pub probe: ProbeSpec,
}

/// Steerability trace from an already computed coefficient trace.
pub fn steerability_from_coefficients(
    r: f64,
    coeffs: &CoefficientTrace,
    scenario: CouplingScenario,
    mode: DeltaGammaMode,
    convention: CorrelationConvention,
) -> Result<SteerabilityTrace> {
    let mut s_values = Vec::with_capacity(coeffs.len());
    let mut abc = Vec::with_capacity(coeffs.len());
    for i in 0..coeffs.len() {
        let cm = evolve_abc(r, coeffs, scenario, mode, convention, i)?;
        s_values.push(steerability_a_to_b(&cm)?);
        abc.push(cm);
    }
    Ok(SteerabilityTrace { times: coeffs.times.clone(), s_values, abc, scenario })
}

/// Full pipeline: coefficients, channel evolution, steerability per grid
/// point.
#[allow(clippy::too_many_arguments)]
pub fn steerability_trace(
    probe: &ProbeSpec,
    env: &EnvironmentSpec,
    scenario: CouplingScenario,
    grid: &[f64],
    cfg: &QuadratureConfig,
    mode: DeltaGammaMode,
    convention: CorrelationConvention,
) -> Result<SteerabilityTrace> {
    probe.validate()?;
    let coeffs = crate::environment::coefficient_trace(env, probe.omega0, grid, cfg)?;
    steerability_from_coefficients(probe.r, &coeffs, scenario, mode, convention)
}

/// Maximal grid intervals where S rises by more than `eps` per step and
/// stays positive.
///
/// A run that begins at an exactly-zero sample is reported from the first
/// strictly positive sample, but its rise counts from zero (the full
/// endpoint value).
pub fn backflow_intervals(trace: &SteerabilityTrace, eps: f64) -> Vec<BackflowInterval> {
    let s = &trace.s_values;
    let t = &trace.times;
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        if s[i + 1] - s[i] > eps && s[i + 1] > 0.0 {
            let start = i;
            let mut j = i;
            while j + 1 < n && s[j + 1] - s[j] > eps && s[j + 1] > 0.0 {
                j += 1;
            }
            let mut reported = start;
            while s[reported] == 0.0 && reported < j {
                reported += 1;
            }
            let rise = s[j] - s[start];
            if rise > 0.0 && s[j] > 0.0 {
                out.push(BackflowInterval { t_start: t[reported], t_end: t[j], rise });
            }
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

/// Sum of rises over all detected backflow intervals.
pub fn nonmarkov_measure(
    trace: &SteerabilityTrace,
    eps: f64,
    env: &EnvironmentSpec,
    probe: &ProbeSpec,
) -> NonMarkovResult {
    let intervals = backflow_intervals(trace, eps);
    NonMarkovResult {
        measure: intervals.iter().map(|iv| iv.rise).sum(),
        intervals,
        scenario: trace.scenario,
        env: *env,
        probe: *probe,
    }
}

/// One (alpha, scenario) cell of a coupling sweep; failures are captured
/// per cell so the sweep continues past them.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub alpha: f64,
    pub scenario: CouplingScenario,
    pub outcome: std::result::Result<NonMarkovResult, String>,
}

/// Non-Markovianity over a coupling grid for all three scenarios.
///
/// The unit-coupling coefficient base is computed once and rescaled per
/// alpha (gamma and Delta carry an exact alpha^2 prefactor); cells run in
/// parallel and are returned alpha-major, scenario-minor.
#[allow(clippy::too_many_arguments)]
pub fn alpha_sweep(
    probe: &ProbeSpec,
    env_template: &EnvironmentSpec,
    alphas: &[f64],
    grid: &[f64],
    cfg: &QuadratureConfig,
    mode: DeltaGammaMode,
    convention: CorrelationConvention,
    eps: f64,
) -> Result<Vec<SweepCell>> {
    probe.validate()?;
    let base = CoefficientBase::compute(env_template, probe.omega0, grid, cfg)?;
    let cells: Vec<SweepCell> = alphas
        .par_iter()
        .flat_map_iter(|&alpha| {
            let coeffs = base.realize(alpha);
            let env = EnvironmentSpec { alpha, ..*env_template };
            CouplingScenario::ALL.into_iter().map(move |scenario| {
                let outcome =
                    steerability_from_coefficients(probe.r, &coeffs, scenario, mode, convention)
                        .map(|trace| nonmarkov_measure(&trace, eps, &env, probe))
                        .map_err(|e| e.to_string());
                SweepCell { alpha, scenario, outcome }
            })
        })
        .collect();
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{uniform_grid, Ohmicity};

    fn synthetic(times: Vec<f64>, s_values: Vec<f64>) -> SteerabilityTrace {
        SteerabilityTrace {
            abc: vec![TwoModeCovariance { a: 1.0, b: 1.0, c: 0.0 }; times.len()],
            times,
            s_values,
            scenario: CouplingScenario::BothModes,
        }
    }

    fn ohmic(alpha: f64) -> EnvironmentSpec {
        EnvironmentSpec { s: Ohmicity::Ohmic, omega_c: 1.0, temperature: 1.5, alpha }
    }

    const PROBE: ProbeSpec = ProbeSpec { omega0: 7.0, r: 2.0 };

    #[test]
    fn monotone_decreasing_has_no_intervals() {
        let tr = synthetic(vec![0.0, 1.0, 2.0, 3.0], vec![3.0, 2.0, 1.0, 0.5]);
        assert!(backflow_intervals(&tr, DEFAULT_EPS).is_empty());
    }

    #[test]
    fn sine_trace_has_two_rises() {
        let n = 1000;
        let times: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let s: Vec<f64> = times
            .iter()
            .map(|t| 1.0 + 0.1 * (2.0 * std::f64::consts::PI * t).sin())
            .collect();
        let iv = backflow_intervals(&synthetic(times, s), DEFAULT_EPS);
        assert_eq!(iv.len(), 2);
        assert!(iv[0].t_start < 1e-9 && (iv[0].t_end - 0.25).abs() < 1e-2);
        assert!((iv[1].t_start - 0.75).abs() < 1e-2 && iv[1].t_end > 0.999);
        let total: f64 = iv.iter().map(|i| i.rise).sum();
        assert!((total - 0.2).abs() < 1e-4, "total rise {total}");
    }

    #[test]
    fn rise_out_of_clipped_zero() {
        // zero plateau, then a rise: only the post-clip rise counts, from the
        // first positive sample, with the full endpoint value
        let tr = synthetic(
            vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
            vec![1.0, 0.0, 0.0, 0.2, 0.5, 0.4],
        );
        let iv = backflow_intervals(&tr, DEFAULT_EPS);
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].t_start, 3.0);
        assert_eq!(iv[0].t_end, 4.0);
        assert!((iv[0].rise - 0.5).abs() < 1e-15);
    }

    #[test]
    fn measure_of_single_synthetic_rise() {
        let tr = synthetic(vec![0.0, 1.0, 2.0], vec![0.4, 0.7, 0.6]);
        let res = nonmarkov_measure(&tr, DEFAULT_EPS, &ohmic(0.1), &PROBE);
        assert!((res.measure - 0.3).abs() < 1e-15);
        assert_eq!(res.intervals.len(), 1);
    }

    #[test]
    fn zero_coupling_trace_is_constant() {
        let grid = uniform_grid(1.0, 1e-2).unwrap();
        let tr = steerability_trace(
            &PROBE,
            &ohmic(0.0),
            CouplingScenario::BothModes,
            &grid,
            &QuadratureConfig::default(),
            DeltaGammaMode::WeakCoupling,
            CorrelationConvention::SinhCorrelation,
        )
        .unwrap();
        let s0 = 4.0f64.cosh().ln();
        assert!(tr.s_values.iter().all(|&v| (v - s0).abs() < 1e-10));
        let res = nonmarkov_measure(&tr, DEFAULT_EPS, &ohmic(0.0), &PROBE);
        assert_eq!(res.measure, 0.0);
        assert!(res.intervals.is_empty());
    }

    #[test]
    fn vacuum_probe_has_no_steering() {
        let grid = uniform_grid(1.0, 1e-2).unwrap();
        let probe = ProbeSpec { omega0: 7.0, r: 0.0 };
        let tr = steerability_trace(
            &probe,
            &ohmic(0.2),
            CouplingScenario::BothModes,
            &grid,
            &QuadratureConfig::default(),
            DeltaGammaMode::WeakCoupling,
            CorrelationConvention::SinhCorrelation,
        )
        .unwrap();
        assert!(tr.s_values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn trace_starts_at_ln_cosh() {
        let grid = uniform_grid(1.0, 1e-2).unwrap();
        for scenario in CouplingScenario::ALL {
            let tr = steerability_trace(
                &PROBE,
                &ohmic(0.2),
                scenario,
                &grid,
                &QuadratureConfig::default(),
                DeltaGammaMode::WeakCoupling,
                CorrelationConvention::SinhCorrelation,
            )
            .unwrap();
            assert!((tr.s_values[0] - 4.0f64.cosh().ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn sweep_zero_alpha_gives_zero_measure() {
        let grid = uniform_grid(1.0, 1e-2).unwrap();
        let cells = alpha_sweep(
            &PROBE,
            &ohmic(0.0),
            &[0.0],
            &grid,
            &QuadratureConfig::default(),
            DeltaGammaMode::WeakCoupling,
            CorrelationConvention::SinhCorrelation,
            DEFAULT_EPS,
        )
        .unwrap();
        assert_eq!(cells.len(), 3);
        for cell in cells {
            assert_eq!(cell.outcome.unwrap().measure, 0.0);
        }
    }

    #[test]
    fn sweep_matches_direct_pipeline() {
        let grid = uniform_grid(2.0, 1e-3).unwrap();
        let cells = alpha_sweep(
            &PROBE,
            &ohmic(0.2),
            &[0.2],
            &grid,
            &QuadratureConfig::default(),
            DeltaGammaMode::WeakCoupling,
            CorrelationConvention::SinhCorrelation,
            DEFAULT_EPS,
        )
        .unwrap();
        let direct = steerability_trace(
            &PROBE,
            &ohmic(0.2),
            CouplingScenario::SteeringModeOnly,
            &grid,
            &QuadratureConfig::default(),
            DeltaGammaMode::WeakCoupling,
            CorrelationConvention::SinhCorrelation,
        )
        .unwrap();
        let direct_measure = nonmarkov_measure(&direct, DEFAULT_EPS, &ohmic(0.2), &PROBE).measure;
        let cell = cells
            .iter()
            .find(|c| c.scenario == CouplingScenario::SteeringModeOnly)
            .unwrap();
        let sweep_measure = cell.outcome.as_ref().unwrap().measure;
        assert!((sweep_measure - direct_measure).abs() < 1e-12);
    }
}
