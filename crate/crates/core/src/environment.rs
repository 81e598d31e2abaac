//! Bath spectral density and the time-dependent damping and diffusion
//! coefficients of the secular weak-coupling master equation.
//!
//! The bath has a Lorentz-Drude cutoff,
//!
//! ```text
//! J(omega) = (2 omega^s / pi) * omega_c^{3-s} / (omega_c^2 + omega^2),
//! ```
//!
//! with s = 1 (Ohmic) or s = 1/2 (sub-Ohmic). The coefficients are
//!
//! ```text
//! gamma(t) = alpha^2 \int_0^t dtau \int_0^inf domega J(omega) sin(omega tau) sin(omega0 tau)
//! Delta(t) = alpha^2 \int_0^t dtau \int_0^inf domega J(omega) coth(omega/2T) cos(omega tau) cos(omega0 tau)
//! ```
//!
//! together with the cumulative quantities `Gamma(t) = \int_0^t 2 gamma` and
//! `Delta_Gamma(t) = e^{-Gamma} \int_0^t e^{Gamma} Delta` (exact) or
//! `~ \int_0^t Delta` (weak coupling). Closed forms exist for the Ohmic
//! gamma and Delta and for the sub-Ohmic gamma; everything else falls back
//! to the double quadrature, which also serves as the oracle for every
//! closed form in the tests.
//!
//! The Ohmic Delta closed form carries a Matsubara-type series whose terms
//! decay only as 1/n^2 near t = 0; the 1/n^2 and 1/n^3 asymptotic pieces are
//! subtracted and resummed through Li_2 and Li_3, leaving a 1/n^4 remainder
//! that truncates quickly at any t.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::{adaptive_quad, cumulative_quadratic, oscillatory_tail_quad, sum_series, QuadratureConfig};
use crate::special::{dilog, erfc, erfi, fresnel_cf, trilog};

const PI: f64 = std::f64::consts::PI;

/// Spectral exponent of the bath.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ohmicity {
    /// s = 1.
    Ohmic,
    /// s = 1/2.
    SubOhmic,
}

impl Ohmicity {
    pub fn exponent(self) -> f64 {
        match self {
            Ohmicity::Ohmic => 1.0,
            Ohmicity::SubOhmic => 0.5,
        }
    }
}

impl fmt::Display for Ohmicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ohmicity::Ohmic => "ohmic",
            Ohmicity::SubOhmic => "subohmic",
        })
    }
}

impl FromStr for Ohmicity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ohmic" => Ok(Ohmicity::Ohmic),
            "subohmic" => Ok(Ohmicity::SubOhmic),
            other => Err(Error::Config(format!(
                "s must be `ohmic` or `subohmic`, got `{other}`"
            ))),
        }
    }
}

/// Bath parameters in natural units (hbar = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentSpec {
    pub s: Ohmicity,
    /// Cutoff angular frequency, > 0.
    pub omega_c: f64,
    /// Bath temperature, > 0.
    pub temperature: f64,
    /// Coupling constant, >= 0.
    pub alpha: f64,
}

impl EnvironmentSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_c > 0.0) || !self.omega_c.is_finite() {
            return Err(Error::Config(format!("omega_c must be positive, got {}", self.omega_c)));
        }
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::Config(format!(
                "temperature must be positive, got {}",
                self.temperature
            )));
        }
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return Err(Error::Config(format!("alpha must be >= 0, got {}", self.alpha)));
        }
        Ok(())
    }

    fn with_alpha(&self, alpha: f64) -> Self {
        Self { alpha, ..*self }
    }
}

/// How a coefficient series was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
        })
    }
}

/// `coth(x) = 1 + 2/(e^{2x} - 1)`, stable at both small and large x > 0.
pub(crate) fn coth(x: f64) -> f64 {
    1.0 + 2.0 / (2.0 * x).exp_m1()
}

/// Lorentz-Drude spectral density `(2 omega^s / pi) omega_c^{3-s} / (omega_c^2 + omega^2)`.
pub fn spectral_density(omega: f64, env: &EnvironmentSpec) -> f64 {
    let s = env.s.exponent();
    (2.0 * omega.powf(s) / PI) * env.omega_c.powf(3.0 - s)
        / (env.omega_c * env.omega_c + omega * omega)
}

/// Upper edge of the directly integrated low-frequency head; the oscillatory
/// tail engine takes over beyond it.
fn head_split(env: &EnvironmentSpec) -> f64 {
    10.0 * env.omega_c
}

/// `\int_0^inf J(omega) sin(omega tau) domega`, the damping memory kernel.
fn damping_kernel(tau: f64, env: &EnvironmentSpec, cfg: &QuadratureConfig) -> Result<f64> {
    if tau == 0.0 {
        return Ok(0.0);
    }
    let w = head_split(env);
    let f = |omega: f64| spectral_density(omega, env) * (omega * tau).sin();
    let head = match env.s {
        // sqrt(omega) has an infinite-slope origin; u = sqrt(omega) regularizes it
        Ohmicity::SubOhmic => adaptive_quad(|u: f64| 2.0 * u * f(u * u), 0.0, w.sqrt(), cfg)?,
        Ohmicity::Ohmic => adaptive_quad(f, 0.0, w, cfg)?,
    };
    let tail = oscillatory_tail_quad(f, w, 2.0 * PI / tau, cfg)?;
    Ok(head + tail)
}

/// `\int_0^inf J(omega) coth(omega/2T) cos(omega tau) domega`, the noise
/// (diffusion) memory kernel.
///
/// At tau = 0 the Ohmic integrand decays only as 1/omega and the kernel
/// diverges logarithmically; the sub-Ohmic one decays as omega^{-3/2} and
/// stays finite (handled by a 1/sqrt(omega) tail compression).
fn noise_kernel(tau: f64, env: &EnvironmentSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let w = head_split(env);
    let f = |omega: f64| {
        spectral_density(omega, env) * coth(omega / (2.0 * env.temperature)) * (omega * tau).cos()
    };
    let head = match env.s {
        // coth ~ 2T/omega makes the integrand ~ omega^{s-1}; u = sqrt(omega)
        // regularizes the s = 1/2 endpoint (the Ohmic one is already smooth)
        Ohmicity::SubOhmic => adaptive_quad(|u: f64| 2.0 * u * f(u * u), 0.0, w.sqrt(), cfg)?,
        Ohmicity::Ohmic => adaptive_quad(f, 0.0, w, cfg)?,
    };
    let tail = if tau == 0.0 {
        match env.s {
            Ohmicity::Ohmic => {
                return Err(Error::Domain(
                    "Ohmic noise kernel diverges logarithmically at tau = 0".into(),
                ))
            }
            Ohmicity::SubOhmic => {
                // omega = 1/v^2 maps the monotone omega^{-3/2} tail onto a
                // finite interval with a bounded integrand
                adaptive_quad(|v: f64| f(1.0 / (v * v)) * 2.0 / (v * v * v), 0.0, 1.0 / w.sqrt(), cfg)?
            }
        }
    } else {
        oscillatory_tail_quad(f, w, 2.0 * PI / tau, cfg)?
    };
    Ok(head + tail)
}

/// Outer (time) integration uses tolerances one order looser than the inner
/// kernel quadrature so that inner rounding noise is not mistaken for
/// structure.
fn outer_cfg(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: cfg.abs_tol * 10.0,
        rel_tol: cfg.rel_tol * 10.0,
        ..cfg.clone()
    }
}

/// Runs `adaptive_quad` with a fallible integrand, capturing the first inner
/// error and reporting it instead of a poisoned estimate.
fn adaptive_quad_fallible<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let captured = std::cell::RefCell::new(None);
    let value = adaptive_quad(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                captured.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        cfg,
    );
    if let Some(e) = captured.into_inner() {
        return Err(e);
    }
    value
}

/// Damping coefficient by brute-force double quadrature: the oracle for all
/// closed forms.
pub fn gamma_numeric(
    t: f64,
    env: &EnvironmentSpec,
    omega0: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("gamma_numeric requires t >= 0, got {t}")));
    }
    if t == 0.0 || env.alpha == 0.0 {
        return Ok(0.0);
    }
    let a2 = env.alpha * env.alpha;
    let v = adaptive_quad_fallible(
        |tau| Ok(damping_kernel(tau, env, cfg)? * (omega0 * tau).sin()),
        0.0,
        t,
        &outer_cfg(cfg),
    )?;
    Ok(a2 * v)
}

/// Diffusion coefficient by brute-force double quadrature.
///
/// The Ohmic inner kernel grows like ln(1/tau) towards tau = 0; the outer
/// rule never samples the endpoint and the singularity is integrable.
pub fn delta_numeric(
    t: f64,
    env: &EnvironmentSpec,
    omega0: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("delta_numeric requires t >= 0, got {t}")));
    }
    if t == 0.0 || env.alpha == 0.0 {
        return Ok(0.0);
    }
    let a2 = env.alpha * env.alpha;
    let v = adaptive_quad_fallible(
        |tau| Ok(noise_kernel(tau, env, cfg)? * (omega0 * tau).cos()),
        0.0,
        t,
        &outer_cfg(cfg),
    )?;
    Ok(a2 * v)
}

/// Closed-form Ohmic damping coefficient:
///
/// ```text
/// gamma(t) = alpha^2 omega_c^2/(omega0^2 + omega_c^2)
///            * [omega0 - e^{-omega_c t}(omega0 cos omega0 t + omega_c sin omega0 t)]
/// ```
pub fn gamma_closed_ohmic(t: f64, env: &EnvironmentSpec, omega0: f64) -> Result<f64> {
    if env.s != Ohmicity::Ohmic {
        return Err(Error::WrongOhmicity { expected: Ohmicity::Ohmic, actual: env.s });
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("gamma_closed_ohmic requires t >= 0, got {t}")));
    }
    let wc = env.omega_c;
    let pref = env.alpha * env.alpha * wc * wc / (omega0 * omega0 + wc * wc);
    let (sin0, cos0) = (omega0 * t).sin_cos();
    Ok(pref * (omega0 - (-wc * t).exp() * (omega0 * cos0 + wc * sin0)))
}

/// Guard band for the thermal-series denominators `(2 n pi T)^2 - omega_c^2`
/// (which also covers the `cot(omega_c / 2T)` pole at the same parameter
/// values). Returns the offending index if some denominator is within
/// `1e-6 omega_c^2` of zero.
fn matsubara_pole(env: &EnvironmentSpec) -> Option<u32> {
    let wc2 = env.omega_c * env.omega_c;
    let n_max = (env.omega_c / (2.0 * PI * env.temperature)).ceil() as u32 + 1;
    (1..=n_max).find(|&n| {
        let nu = 2.0 * n as f64 * PI * env.temperature;
        (nu * nu - wc2).abs() < 1e-6 * wc2
    })
}

/// Closed-form Ohmic diffusion coefficient: the stationary and transient
/// terms plus the accelerated thermal series. Returns the value and the
/// number of series terms consumed after acceleration.
pub fn delta_closed_ohmic(
    t: f64,
    env: &EnvironmentSpec,
    omega0: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, usize)> {
    if env.s != Ohmicity::Ohmic {
        return Err(Error::WrongOhmicity { expected: Ohmicity::Ohmic, actual: env.s });
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("delta_closed_ohmic requires t > 0, got {t}")));
    }
    if let Some(n) = matsubara_pole(env) {
        return Err(Error::NearMatsubaraPole { n });
    }
    let (wc, temp) = (env.omega_c, env.temperature);
    let a2wc2 = env.alpha * env.alpha * wc * wc;
    let pref = a2wc2 / (omega0 * omega0 + wc * wc);
    let (sin0, cos0) = (omega0 * t).sin_cos();
    let half_wc = wc / (2.0 * temp);
    let main = pref
        * (omega0 * coth(omega0 / (2.0 * temp))
            + (-wc * t).exp() * (half_wc.cos() / half_wc.sin()) * (omega0 * sin0 - wc * cos0));

    // Thermal series sum_n e^{-nu_n t} 8 n pi T^2 (omega0 sin - nu_n cos)
    // / ((nu_n^2 + omega0^2)(nu_n^2 - omega_c^2)), nu_n = 2 n pi T.
    // Large n: -cos/(pi^2 T) x^n/n^2 + omega0 sin/(2 pi^3 T^2) x^n/n^3 with
    // x = e^{-2 pi T t}; those pieces resum to polylogarithms and the
    // remainder decays as x^n/n^4.
    let x = (-2.0 * PI * temp * t).exp();
    let cos_coef = -cos0 / (PI * PI * temp);
    let sin_coef = omega0 * sin0 / (2.0 * PI * PI * PI * temp * temp);
    let accelerated = cos_coef * dilog(x) + sin_coef * trilog(x);
    let remainder = sum_series(
        |n| {
            let nf = n as f64;
            let nu = 2.0 * nf * PI * temp;
            let xn = x.powi(n as i32);
            let full = xn * 8.0 * nf * PI * temp * temp * (omega0 * sin0 - nu * cos0)
                / ((nu * nu + omega0 * omega0) * (nu * nu - wc * wc));
            full - cos_coef * xn / (nf * nf) - sin_coef * xn / (nf * nf * nf)
        },
        cfg,
    )?;
    Ok((main + a2wc2 * (accelerated + remainder.value), remainder.terms_used))
}

/// Closed-form sub-Ohmic damping coefficient in terms of the cosine Fresnel
/// integral and the erfc/erfi pair:
///
/// ```text
/// gamma(t) = alpha^2 omega_c^2 / (2 (omega0^2 + omega_c^2)) * [
///     4 sqrt(2 omega0 omega_c / pi) Cf(sqrt(omega0 t))
///   + sqrt(2) e^{omega_c t} Erfc(sqrt(omega_c t)) (omega0 cos omega0 t - omega_c sin omega0 t)
///   - sqrt(2) e^{-omega_c t} (1 + Erfi(sqrt(omega_c t))) (omega0 cos omega0 t + omega_c sin omega0 t) ]
/// ```
///
/// Errors for omega_c t beyond the erfi overflow bound; callers fall back to
/// [`gamma_numeric`] there.
pub fn gamma_closed_subohmic(t: f64, env: &EnvironmentSpec, omega0: f64) -> Result<f64> {
    if env.s != Ohmicity::SubOhmic {
        return Err(Error::WrongOhmicity { expected: Ohmicity::SubOhmic, actual: env.s });
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("gamma_closed_subohmic requires t >= 0, got {t}")));
    }
    let wc = env.omega_c;
    let pref = env.alpha * env.alpha * wc * wc / (2.0 * (omega0 * omega0 + wc * wc));
    let (sin0, cos0) = (omega0 * t).sin_cos();
    let sqrt2 = std::f64::consts::SQRT_2;
    let fres = 4.0 * (2.0 * omega0 * wc / PI).sqrt() * fresnel_cf((omega0 * t).sqrt())?;
    let up = sqrt2 * (wc * t).exp() * erfc((wc * t).sqrt()) * (omega0 * cos0 - wc * sin0);
    let down = sqrt2 * (-wc * t).exp() * (1.0 + erfi((wc * t).sqrt())?) * (omega0 * cos0 + wc * sin0);
    Ok(pref * (fres + up - down))
}

/// Coefficient samples over a time grid, with both the exact and the
/// weak-coupling accumulated diffusion.
#[derive(Debug, Clone)]
pub struct CoefficientTrace {
    pub times: Vec<f64>,
    pub gamma: Vec<f64>,
    pub delta: Vec<f64>,
    /// `Gamma(t) = \int_0^t 2 gamma(s) ds`.
    pub big_gamma: Vec<f64>,
    /// Weak-coupling `Delta_Gamma ~ \int_0^t 2 Delta(s) ds`.
    pub delta_gamma_weak: Vec<f64>,
    /// Exact `Delta_Gamma = e^{-Gamma(t)} \int_0^t e^{Gamma(s)} 2 Delta(s) ds`.
    pub delta_gamma_exact: Vec<f64>,
    pub method_gamma: Method,
    pub method_delta: Method,
}

/// Unit-coupling (alpha = 1) coefficient samples.
///
/// gamma and Delta carry an exact alpha^2 prefactor, so one base computed at
/// alpha = 1 serves a whole coupling sweep through [`CoefficientBase::realize`].
#[derive(Debug, Clone)]
pub struct CoefficientBase {
    times: Vec<f64>,
    gamma_unit: Vec<f64>,
    delta_unit: Vec<f64>,
    method_gamma: Method,
    method_delta: Method,
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid[0] != 0.0 {
        return Err(Error::Config("time grid must start at t = 0".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) || !w[1].is_finite() {
            return Err(Error::Config(format!(
                "time grid must be strictly increasing and finite, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Uniform grid `0, dt, 2 dt, ..., ~t_max`.
pub fn uniform_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || !(dt > 0.0) || !t_max.is_finite() || !dt.is_finite() {
        return Err(Error::Config(format!(
            "grid requires t_max > 0 and dt > 0, got t_max = {t_max}, dt = {dt}"
        )));
    }
    let n = (t_max / dt).round() as usize;
    if n < 2 {
        return Err(Error::Config(format!("grid has too few points: t_max = {t_max}, dt = {dt}")));
    }
    Ok((0..=n).map(|i| i as f64 * dt).collect())
}

impl CoefficientBase {
    /// Samples gamma and Delta at unit coupling over the grid, preferring
    /// closed forms and falling back to quadrature where none applies.
    pub fn compute(
        env: &EnvironmentSpec,
        omega0: f64,
        grid: &[f64],
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        env.validate()?;
        cfg.validate()?;
        validate_grid(grid)?;
        let unit = env.with_alpha(1.0);

        let mut method_gamma = Method::ClosedForm;
        let mut gamma_unit = Vec::with_capacity(grid.len());
        for &t in grid {
            let closed = match env.s {
                Ohmicity::Ohmic => gamma_closed_ohmic(t, &unit, omega0),
                Ohmicity::SubOhmic => gamma_closed_subohmic(t, &unit, omega0),
            };
            match closed {
                Ok(v) => gamma_unit.push(v),
                Err(Error::ErfiOverflow(_)) => {
                    method_gamma = Method::Quadrature;
                    gamma_unit.push(gamma_numeric(t, &unit, omega0, cfg)?);
                }
                Err(e) => return Err(e),
            }
        }

        let (delta_unit, method_delta) = match env.s {
            Ohmicity::Ohmic if matsubara_pole(env).is_none() => {
                let mut delta = Vec::with_capacity(grid.len());
                for &t in grid {
                    if t == 0.0 {
                        delta.push(0.0);
                    } else {
                        delta.push(delta_closed_ohmic(t, &unit, omega0, cfg)?.0);
                    }
                }
                (delta, Method::ClosedForm)
            }
            _ => (Self::delta_by_quadrature(&unit, omega0, grid, cfg)?, Method::Quadrature),
        };

        Ok(Self { times: grid.to_vec(), gamma_unit, delta_unit, method_gamma, method_delta })
    }

    /// Delta on the grid by sampling the diffusion rate
    /// `noise_kernel(tau) cos(omega0 tau)` and integrating cumulatively.
    ///
    /// The Ohmic rate diverges logarithmically at tau = 0 (integrably), so
    /// there the first cell is integrated adaptively instead of sampled.
    fn delta_by_quadrature(
        unit: &EnvironmentSpec,
        omega0: f64,
        grid: &[f64],
        cfg: &QuadratureConfig,
    ) -> Result<Vec<f64>> {
        let rate = |tau: f64| Ok(noise_kernel(tau, unit, cfg)? * (omega0 * tau).cos());
        match unit.s {
            Ohmicity::SubOhmic => {
                let samples: Vec<f64> = grid
                    .par_iter()
                    .map(|&tau| rate(tau))
                    .collect::<Result<_>>()?;
                Ok(cumulative_quadratic(grid, &samples))
            }
            Ohmicity::Ohmic => {
                let first = adaptive_quad_fallible(rate, 0.0, grid[1], &outer_cfg(cfg))?;
                let samples: Vec<f64> = grid[1..]
                    .par_iter()
                    .map(|&tau| rate(tau))
                    .collect::<Result<_>>()?;
                let mut delta = vec![0.0, first];
                let rest = cumulative_quadratic(&grid[1..], &samples);
                delta.extend(rest.iter().skip(1).map(|v| first + v));
                Ok(delta)
            }
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Scales the unit-coupling samples to a concrete alpha and builds the
    /// cumulative quantities.
    pub fn realize(&self, alpha: f64) -> CoefficientTrace {
        let a2 = alpha * alpha;
        let gamma: Vec<f64> = self.gamma_unit.iter().map(|g| a2 * g).collect();
        let delta: Vec<f64> = self.delta_unit.iter().map(|d| a2 * d).collect();
        let two_gamma: Vec<f64> = gamma.iter().map(|g| 2.0 * g).collect();
        let big_gamma = cumulative_quadratic(&self.times, &two_gamma);
        // The variance rate equation is da/dt = -2 gamma a + 2 Delta, so the
        // accumulated diffusion integrates 2 Delta; a stationary single mode
        // then reaches a = Delta/gamma = coth(omega0/2T), the thermal value.
        let two_delta: Vec<f64> = delta.iter().map(|d| 2.0 * d).collect();
        let delta_gamma_weak = cumulative_quadratic(&self.times, &two_delta);
        let weighted: Vec<f64> = two_delta
            .iter()
            .zip(&big_gamma)
            .map(|(d, g)| g.exp() * d)
            .collect();
        let delta_gamma_exact: Vec<f64> = cumulative_quadratic(&self.times, &weighted)
            .iter()
            .zip(&big_gamma)
            .map(|(w, g)| (-g).exp() * w)
            .collect();
        CoefficientTrace {
            times: self.times.clone(),
            gamma,
            delta,
            big_gamma,
            delta_gamma_weak,
            delta_gamma_exact,
            method_gamma: self.method_gamma,
            method_delta: self.method_delta,
        }
    }
}

impl CoefficientTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Full coefficient trace for a concrete environment over a grid.
pub fn coefficient_trace(
    env: &EnvironmentSpec,
    omega0: f64,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<CoefficientTrace> {
    Ok(CoefficientBase::compute(env, omega0, grid, cfg)?.realize(env.alpha))
}
