//! Quadrature engines: adaptive Gauss-Kronrod on finite intervals, chunked
//! semi-infinite oscillatory tails with Aitken acceleration, and truncated
//! series summation.
//!
//! All routines are pure: identical inputs produce bit-identical outputs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and budgets shared by the quadrature and series engines.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Absolute tolerance for integral estimates.
    pub abs_tol: f64,
    /// Relative tolerance for integral estimates.
    pub rel_tol: f64,
    /// Maximum number of interval bisections in [`adaptive_quad`].
    pub max_subdivisions: usize,
    /// Maximum number of half-period chunks in [`oscillatory_tail_quad`].
    pub tail_period_chunks: usize,
    /// Relative cutoff for series truncation in [`sum_series`].
    pub series_rel_cutoff: f64,
    /// Maximum number of series terms in [`sum_series`].
    pub series_max_terms: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        // Two orders tighter than any tolerance asserted downstream.
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
            tail_period_chunks: 256,
            series_rel_cutoff: 1e-12,
            series_max_terms: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::Config(
                "abs_tol and rel_tol must be positive".into(),
            ));
        }
        if self.max_subdivisions < 1 || self.series_max_terms < 1 || self.tail_period_chunks < 1 {
            return Err(Error::Config(
                "max_subdivisions, tail_period_chunks and series_max_terms must be >= 1".into(),
            ));
        }
        if !(self.series_rel_cutoff > 0.0) {
            return Err(Error::Config("series_rel_cutoff must be positive".into()));
        }
        Ok(())
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_64,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_67,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Single Gauss-Kronrod 7/15 application on `[a, b]`.
///
/// Returns the K15 estimate and `|K15 - G7|` as the error proxy.
pub(crate) fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    for j in 0..4 {
        // Kronrod-only abscissae (even indices).
        let x = half * XGK[2 * j];
        resk += WGK[2 * j] * (f(center - x) + f(center + x));
    }
    for j in 0..3 {
        // Shared Gauss abscissae (odd indices).
        let x = half * XGK[2 * j + 1];
        let fsum = f(center - x) + f(center + x);
        resk += WGK[2 * j + 1] * fsum;
        resg += WG[j] * fsum;
    }
    (resk * half, (resk - resg).abs() * half.abs())
}

#[derive(Debug)]
struct Interval {
    a: f64,
    b: f64,
    estimate: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on error; tie-break on the left endpoint for determinism.
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Bisects the interval with the worst error proxy until the accumulated
/// proxy falls below `max(abs_tol, rel_tol * |result|)`. Integrable endpoint
/// singularities (e.g. `x^{-1/2}` at 0) are resolved by geometric refinement
/// towards the endpoint; the rule never samples interval endpoints.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(a <= b) {
        return Err(Error::Domain(format!("adaptive_quad needs a <= b, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let (est, err) = kronrod15(&f, a, b);
    if !est.is_finite() {
        return Err(Error::Domain("integrand produced a non-finite value".into()));
    }
    let mut heap = BinaryHeap::new();
    heap.push(Interval { a, b, estimate: est, error: err });
    // Sum of error proxies on intervals too narrow to split further.
    let mut locked_sum = 0.0;
    let mut locked_err = 0.0;
    let mut subdivisions = 0usize;
    loop {
        let active_sum: f64 = heap.iter().map(|iv| iv.estimate).sum();
        let active_err: f64 = heap.iter().map(|iv| iv.error).sum();
        let total = active_sum + locked_sum;
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if active_err + locked_err <= tol {
            return Ok(total);
        }
        let worst = match heap.pop() {
            Some(iv) => iv,
            None => return Ok(total),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Cannot be refined at f64 resolution; accept as-is.
            locked_sum += worst.estimate;
            locked_err += worst.error;
            continue;
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                subdivisions,
                residual: active_err + worst.error + locked_err,
            });
        }
        subdivisions += 1;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (est, err) = kronrod15(&f, lo, hi);
            if !est.is_finite() {
                return Err(Error::Domain("integrand produced a non-finite value".into()));
            }
            heap.push(Interval { a: lo, b: hi, estimate: est, error: err });
        }
    }
}

/// One pass of iterated Aitken extrapolation over a partial-sum sequence.
fn aitken_accelerate(sums: &[f64]) -> f64 {
    let mut row = sums.to_vec();
    let mut depth = 0;
    while row.len() >= 3 && depth < 8 {
        let mut next = Vec::with_capacity(row.len() - 2);
        for i in 0..row.len() - 2 {
            let d2 = row[i + 2] - 2.0 * row[i + 1] + row[i];
            if d2.abs() < 1e-300 {
                next.push(row[i + 2]);
            } else {
                let d1 = row[i + 2] - row[i + 1];
                next.push(row[i + 2] - d1 * d1 / d2);
            }
        }
        row = next;
        depth += 1;
    }
    *row.last().expect("aitken needs a non-empty sequence")
}

/// Semi-infinite tail `\int_a^\infty f` of a decaying oscillation with the
/// given period.
///
/// Integrates half-period chunks with [`adaptive_quad`] and accelerates the
/// resulting (sign-alternating) partial sums by iterated Aitken
/// extrapolation; truncates early once a chunk magnitude drops below
/// `abs_tol`. Also handles monotonically decaying integrands, for which the
/// partial sums are geometric-like and Aitken is exact in the limit.
pub fn oscillatory_tail_quad<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    period: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::Domain(format!("oscillatory tail needs a positive finite period, got {period}")));
    }
    let half = 0.5 * period;
    let mut partial_sums = Vec::with_capacity(cfg.tail_period_chunks);
    let mut sum = 0.0;
    let mut prev_accel: Option<f64> = None;
    let mut last_chunk = f64::INFINITY;
    for k in 0..cfg.tail_period_chunks {
        let lo = a + k as f64 * half;
        let hi = lo + half;
        let chunk = adaptive_quad(&f, lo, hi, cfg)?;
        sum += chunk;
        partial_sums.push(sum);
        last_chunk = chunk.abs();
        if last_chunk <= cfg.abs_tol {
            return Ok(if partial_sums.len() >= 3 {
                aitken_accelerate(&partial_sums)
            } else {
                sum
            });
        }
        if partial_sums.len() >= 4 {
            let accel = aitken_accelerate(&partial_sums);
            if let Some(prev) = prev_accel {
                if (accel - prev).abs() <= cfg.abs_tol.max(cfg.rel_tol * accel.abs()) {
                    return Ok(accel);
                }
            }
            prev_accel = Some(accel);
        }
    }
    Err(Error::TailNonConvergence {
        chunks: cfg.tail_period_chunks,
        last_chunk,
    })
}

/// Exact integral over `[lo, hi]` of the quadratic through three samples.
fn lagrange_quadratic_integral(
    (xa, ya): (f64, f64),
    (xb, yb): (f64, f64),
    (xc, yc): (f64, f64),
    lo: f64,
    hi: f64,
) -> f64 {
    // \int (x - p)(x - q) dx over [lo, hi]
    let basis = |p: f64, q: f64| {
        (hi * hi * hi - lo * lo * lo) / 3.0 - (p + q) * 0.5 * (hi * hi - lo * lo)
            + p * q * (hi - lo)
    };
    ya / ((xa - xb) * (xa - xc)) * basis(xb, xc)
        + yb / ((xb - xa) * (xb - xc)) * basis(xa, xc)
        + yc / ((xc - xa) * (xc - xb)) * basis(xa, xb)
}

/// Cumulative integral of sampled data on a (possibly non-uniform) strictly
/// increasing grid.
///
/// Each cell is integrated by the quadratic through its three nearest
/// samples (averaging the left- and right-leaning fits in the interior),
/// matching composite-Simpson accuracy while staying cumulative.
pub fn cumulative_quadratic(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len(), "grid/sample length mismatch");
    let n = x.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * (y[0] + y[1]) * (x[1] - x[0]);
        return out;
    }
    let mut acc = 0.0;
    for i in 0..n - 1 {
        let (lo, hi) = (x[i], x[i + 1]);
        let left = if i >= 1 {
            Some(lagrange_quadratic_integral(
                (x[i - 1], y[i - 1]),
                (x[i], y[i]),
                (x[i + 1], y[i + 1]),
                lo,
                hi,
            ))
        } else {
            None
        };
        let right = if i + 2 < n {
            Some(lagrange_quadratic_integral(
                (x[i], y[i]),
                (x[i + 1], y[i + 1]),
                (x[i + 2], y[i + 2]),
                lo,
                hi,
            ))
        } else {
            None
        };
        acc += match (left, right) {
            (Some(l), Some(r)) => 0.5 * (l + r),
            (Some(l), None) => l,
            (None, Some(r)) => r,
            (None, None) => unreachable!("n >= 3"),
        };
        out[i + 1] = acc;
    }
    out
}

/// Result of a truncated series summation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    pub value: f64,
    pub terms_used: usize,
}

/// Sums `term(1) + term(2) + ...` until two consecutive terms fall below
/// `series_rel_cutoff` relative to the running sum.
///
/// The two-in-a-row requirement guards against oscillatory factors that make
/// a single term vanish accidentally.
pub fn sum_series<F: FnMut(usize) -> f64>(mut term: F, cfg: &QuadratureConfig) -> Result<SeriesSum> {
    cfg.validate()?;
    let mut sum = 0.0;
    let mut small_streak = 0;
    for n in 1..=cfg.series_max_terms {
        let t = term(n);
        sum += t;
        if t.abs() <= cfg.series_rel_cutoff * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 || (t == 0.0 && sum == 0.0) {
                return Ok(SeriesSum { value: sum, terms_used: n });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::SeriesNonConvergence { terms: cfg.series_max_terms })
}
