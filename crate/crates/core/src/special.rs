//! Real-argument special functions: error-function family, the cosine
//! Fresnel integral in the `cos(t^2)` convention, and the polylogarithms
//! Li_2, Li_3 on [0, 1] used to accelerate slowly converging thermal series.
//!
//! Each function uses a series for small arguments and a continued-fraction
//! or asymptotic form for large ones, switching at documented thresholds.
//! Every branch is validated against a quadrature oracle in the tests.

use crate::error::{Error, Result};
use crate::quad::kronrod15;

const FRAC_2_SQRT_PI: f64 = 1.128_379_167_095_512_6;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Largest |x| for which `erfi(x)` stays within f64 range.
///
/// erfi(x) grows like e^{x^2}/(x sqrt(pi)); x^2 must stay below
/// ln(f64::MAX) ~ 709.78, so the bound is sqrt(709) rounded down.
pub const ERFI_MAX_ARG: f64 = 26.6;

/// Threshold between the Taylor series and the continued fraction for erf/erfc.
const ERF_SERIES_CUTOFF: f64 = 2.0;

/// Maclaurin series of erf, accurate for |x| below [`ERF_SERIES_CUTOFF`].
fn erf_series(x: f64) -> f64 {
    // erf(x) = (2/sqrt(pi)) sum_k (-1)^k x^{2k+1} / (k! (2k+1))
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0u32;
    loop {
        let kf = k as f64;
        term *= -x2 * (2.0 * kf + 1.0) / ((kf + 1.0) * (2.0 * kf + 3.0));
        sum += term;
        k += 1;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) || k > 200 {
            return FRAC_2_SQRT_PI * sum;
        }
    }
}

/// Continued fraction for erfc(x), x >= [`ERF_SERIES_CUTOFF`], evaluated with
/// the modified Lentz algorithm. Avoids the 1 - erf(x) cancellation.
fn erfc_cf(x: f64) -> f64 {
    // erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..500 {
        let a = n as f64 / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (SQRT_PI * f)
}

/// Error function `(2/sqrt(pi)) \int_0^x e^{-t^2} dt`.
///
/// Odd, total on finite input; absolute error below 1e-14.
pub fn erf(x: f64) -> f64 {
    if x.abs() < ERF_SERIES_CUTOFF {
        erf_series(x)
    } else if x > 0.0 {
        1.0 - erfc_cf(x)
    } else {
        erfc_cf(-x) - 1.0
    }
}

/// Complementary error function `1 - erf(x)`, computed without cancellation
/// for large positive x via a continued fraction.
pub fn erfc(x: f64) -> f64 {
    if x >= ERF_SERIES_CUTOFF {
        erfc_cf(x)
    } else if x <= -ERF_SERIES_CUTOFF {
        2.0 - erfc_cf(-x)
    } else {
        1.0 - erf_series(x)
    }
}

/// Imaginary error function `(2/sqrt(pi)) \int_0^x e^{t^2} dt` by its real
/// power series.
///
/// Errors when |x| exceeds [`ERFI_MAX_ARG`], beyond which the result
/// overflows f64.
pub fn erfi(x: f64) -> Result<f64> {
    if !(x.abs() <= ERFI_MAX_ARG) {
        return Err(Error::ErfiOverflow(x));
    }
    // erfi(x) = (2/sqrt(pi)) sum_k x^{2k+1} / (k! (2k+1)); all terms positive.
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0u64;
    loop {
        let kf = k as f64;
        term *= x2 * (2.0 * kf + 1.0) / ((kf + 1.0) * (2.0 * kf + 3.0));
        sum += term;
        k += 1;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) || k > 10_000 {
            return Ok(FRAC_2_SQRT_PI * sum);
        }
    }
}

/// Threshold between the Maclaurin series and chunked quadrature for
/// [`fresnel_cf`].
const FRESNEL_SERIES_CUTOFF: f64 = 2.0;

/// Maclaurin series of `\int_0^z cos(t^2) dt`, accurate for z up to
/// [`FRESNEL_SERIES_CUTOFF`].
fn fresnel_series(z: f64) -> f64 {
    // sum_k (-1)^k z^{4k+1} / ((2k)! (4k+1))
    let z4 = z.powi(4);
    let mut term = z;
    let mut sum = z;
    let mut k = 0u32;
    loop {
        let kf = k as f64;
        term *= -z4 * (4.0 * kf + 1.0)
            / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0) * (4.0 * kf + 5.0));
        sum += term;
        k += 1;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) || k > 200 {
            return sum;
        }
    }
}

/// Cosine Fresnel integral `\int_0^z cos(t^2) dt`.
///
/// This is the `cos(t^2)` convention, not the common `cos(pi t^2 / 2)` one;
/// the two are related by `Cf(z) = sqrt(pi/2) C(z sqrt(2/pi))`. Tends to
/// `sqrt(pi/8)` as z grows. Absolute error below 1e-12.
pub fn fresnel_cf(z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("fresnel_cf requires z >= 0, got {z}")));
    }
    if z <= FRESNEL_SERIES_CUTOFF {
        return Ok(fresnel_series(z));
    }
    // Beyond the series range substitute u = t^2:
    //   \int_s^z cos(t^2) dt = \int_{s^2}^{z^2} cos(u) / (2 sqrt(u)) du,
    // a smooth slowly decaying oscillation; one Kronrod panel per pi-length
    // chunk resolves each half-lobe to machine precision.
    let s = FRESNEL_SERIES_CUTOFF;
    let integrand = |u: f64| u.cos() / (2.0 * u.sqrt());
    let mut lo = s * s;
    let hi_end = z * z;
    let mut tail = 0.0;
    while lo < hi_end {
        let hi = (lo + std::f64::consts::PI).min(hi_end);
        tail += kronrod15(&integrand, lo, hi).0;
        lo = hi;
    }
    Ok(fresnel_series(s) + tail)
}

const ZETA_2: f64 = 1.644_934_066_848_226_4;
const ZETA_3: f64 = 1.202_056_903_159_594_2;

/// Direct polylogarithm series `sum_k x^k / k^p`, adequate for x <= 1/2.
fn polylog_series(x: f64, p: i32) -> f64 {
    let mut sum = 0.0;
    let mut xk = 1.0;
    for k in 1..300 {
        xk *= x;
        let term = xk / (k as f64).powi(p);
        sum += term;
        if term < 1e-17 * sum.max(1e-300) {
            break;
        }
    }
    sum
}

/// Dilogarithm Li_2(x) on [0, 1].
///
/// Series for x <= 1/2, Euler reflection onto [0, 1/2) otherwise.
pub(crate) fn dilog(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x <= 0.5 {
        polylog_series(x, 2)
    } else if x == 1.0 {
        ZETA_2
    } else {
        ZETA_2 - x.ln() * (1.0 - x).ln() - polylog_series(1.0 - x, 2)
    }
}

/// Trilogarithm Li_3(x) on [0, 1].
///
/// Series for x <= 1/2; for x > 1/2 the expansion of Li_3(e^{-y}) in
/// y = -ln x, whose only non-analytic piece is the y^2 ln y term.
pub(crate) fn trilog(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x <= 0.5 {
        return polylog_series(x, 3);
    }
    if x == 1.0 {
        return ZETA_3;
    }
    let y = -x.ln(); // y in (0, ln 2]
    let y2 = y * y;
    // Li_3(e^{-y}) = zeta(3) - zeta(2) y + y^2/2 (3/2 - ln y)
    //               + y^3/12 - y^4/288 + y^6/86400 - y^8/10160640 + ...
    ZETA_3 - ZETA_2 * y + 0.5 * y2 * (1.5 - y.ln()) + y2 * y / 12.0 - y2 * y2 / 288.0
        + y2 * y2 * y2 / 86_400.0
        - y2 * y2 * y2 * y2 / 10_160_640.0
        + y2 * y2 * y2 * y2 * y2 / 870_912_000.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{adaptive_quad, QuadratureConfig};

    #[test]
    fn erf_at_zero_and_one() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(1.0) - 0.8427007929497149).abs() < 1e-14);
    }

    #[test]
    fn erf_is_odd() {
        for x in [0.37, 1.0, 2.5, 4.0] {
            assert_eq!(erf(-x), -erf(x));
        }
    }

    #[test]
    fn erf_matches_quadrature_oracle_on_both_branches() {
        let cfg = QuadratureConfig { abs_tol: 1e-14, rel_tol: 1e-13, ..Default::default() };
        for x in [0.2, 0.9, 1.7, 2.3, 3.1] {
            let oracle = FRAC_2_SQRT_PI * adaptive_quad(|t: f64| (-t * t).exp(), 0.0, x, &cfg).unwrap();
            assert!((erf(x) - oracle).abs() < 1e-13, "erf({x})");
        }
    }

    #[test]
    fn erfc_values() {
        assert_eq!(erfc(0.0), 1.0);
        assert!((erfc(3.0) - 2.2090496998585441e-5).abs() < 1e-19);
        // relative accuracy on the anti-cancellation branch
        assert!((erfc(5.0) / 1.5374597944280347e-12 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn erfc_complements_erf() {
        for i in 0..=100 {
            let x = -5.0 + 0.1 * i as f64;
            assert!((erf(x) + erfc(x) - 1.0).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn erfi_series_value() {
        assert_eq!(erfi(0.0).unwrap(), 0.0);
        assert!((erfi(1.0).unwrap() - 1.6504257587975429).abs() < 1e-14);
        assert!((erfi(-1.0).unwrap() + 1.6504257587975429).abs() < 1e-14);
    }

    #[test]
    fn erfi_matches_quadrature_oracle() {
        let cfg = QuadratureConfig { abs_tol: 1e-14, rel_tol: 1e-13, ..Default::default() };
        for x in [0.5, 1.5, 3.0] {
            let oracle = FRAC_2_SQRT_PI * adaptive_quad(|t: f64| (t * t).exp(), 0.0, x, &cfg).unwrap();
            assert!((erfi(x).unwrap() / oracle - 1.0).abs() < 1e-12, "erfi({x})");
        }
    }

    #[test]
    fn erfi_overflow_guard() {
        assert!(erfi(26.5).is_ok());
        assert!(matches!(erfi(26.7), Err(Error::ErfiOverflow(_))));
        assert!(matches!(erfi(-30.0), Err(Error::ErfiOverflow(_))));
    }

    #[test]
    fn fresnel_basic_values() {
        assert_eq!(fresnel_cf(0.0).unwrap(), 0.0);
        assert!((fresnel_cf(1.0).unwrap() - 0.9045242379002721).abs() < 1e-12);
        assert!((fresnel_cf(50.0).unwrap() - 0.6266570686577501).abs() < 1e-2);
    }

    #[test]
    fn fresnel_rejects_negative() {
        assert!(fresnel_cf(-0.1).is_err());
    }

    #[test]
    fn fresnel_matches_quadrature_oracle_on_both_branches() {
        let cfg = QuadratureConfig { abs_tol: 1e-13, rel_tol: 1e-12, ..Default::default() };
        for z in [0.5, 1.5, 2.5, 3.7, 6.0] {
            let oracle = adaptive_quad(|t: f64| (t * t).cos(), 0.0, z, &cfg).unwrap();
            assert!((fresnel_cf(z).unwrap() - oracle).abs() < 1e-11, "Cf({z})");
        }
    }

    #[test]
    fn fresnel_nondecreasing_on_first_lobe() {
        let end = (std::f64::consts::PI / 2.0).sqrt();
        let mut prev = 0.0;
        for i in 0..=100 {
            let z = end * i as f64 / 100.0;
            let v = fresnel_cf(z).unwrap();
            assert!(v >= prev, "decrease at z = {z}");
            prev = v;
        }
    }

    #[test]
    fn dilog_values() {
        assert_eq!(dilog(0.0), 0.0);
        assert!((dilog(1.0) - ZETA_2).abs() < 1e-15);
        // Li_2(1/2) = pi^2/12 - ln^2(2)/2
        let half = ZETA_2 / 2.0 - 0.5 * (2.0f64).ln().powi(2);
        assert!((dilog(0.5) - half).abs() < 1e-15);
    }

    #[test]
    fn dilog_branches_agree_with_term_sum() {
        // Direct series converges (slowly) for any x < 1; use it as the oracle
        // for the reflection branch.
        for x in [0.6, 0.8, 0.95] {
            let mut oracle = 0.0;
            let mut xk = 1.0;
            for k in 1..20_000 {
                xk *= x;
                oracle += xk / (k as f64 * k as f64);
            }
            assert!((dilog(x) - oracle).abs() < 1e-12, "Li2({x})");
        }
    }

    #[test]
    fn trilog_values() {
        assert_eq!(trilog(0.0), 0.0);
        assert!((trilog(1.0) - ZETA_3).abs() < 1e-15);
        // Li_3(1/2) = 7 zeta(3)/8 - pi^2 ln 2 / 12 + ln^3 2 / 6
        let ln2 = std::f64::consts::LN_2;
        let half = 0.875 * ZETA_3 - ZETA_2 * ln2 / 2.0 + ln2.powi(3) / 6.0;
        assert!((trilog(0.5) - half).abs() < 1e-15);
    }

    #[test]
    fn trilog_branches_agree_with_term_sum() {
        for x in [0.55, 0.7, 0.9, 0.99] {
            let mut oracle = 0.0;
            let mut xk = 1.0;
            for k in 1u64..20_000 {
                xk *= x;
                oracle += xk / (k as f64).powi(3);
            }
            assert!((trilog(x) - oracle).abs() < 1e-13, "Li3({x})");
        }
    }
}
