//! Two-mode Gaussian covariance-matrix algebra in standard block form.
//!
//! States handled here have covariance matrix
//!
//! ```text
//!         [ a I2      C   ]
//! sigma = [ C^T      b I2 ],    C = diag(c, -c),
//! ```
//!
//! the form closed under the local-damping channels of this crate. The
//! two-mode squeezed vacuum has a = b = cosh 2r, c = sinh 2r (vacuum a = 1).
//! The full 4x4 matrix is materialized only for the physicality check and
//! for cross-validation; all dynamics run on the (a, b, c) triple.

use nalgebra::{Matrix4, SMatrix};

use crate::error::{Error, Result};

/// Covariance matrix of a two-mode Gaussian state in standard form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCovariance {
    /// Variance of mode A: block `a I2`.
    pub a: f64,
    /// Variance of mode B: block `b I2`.
    pub b: f64,
    /// Cross correlation: block `diag(c, -c)`.
    pub c: f64,
}

/// Squeezing and frequency of the two-mode probe state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSpec {
    /// System mode angular frequency.
    pub omega0: f64,
    /// Two-mode squeezing parameter.
    pub r: f64,
}

impl ProbeSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return Err(Error::Config(format!("omega0 must be positive, got {}", self.omega0)));
        }
        if !(self.r >= 0.0) || !self.r.is_finite() {
            return Err(Error::Config(format!("r must be >= 0, got {}", self.r)));
        }
        Ok(())
    }
}

/// The fixed 4x4 symplectic form: antisymmetric, squares to -I.
pub fn symplectic_form() -> Matrix4<f64> {
    #[rustfmt::skip]
    let m = Matrix4::new(
        0.0,  1.0, 0.0,  0.0,
       -1.0,  0.0, 0.0,  0.0,
        0.0,  0.0, 0.0,  1.0,
        0.0,  0.0,-1.0,  0.0,
    );
    m
}

/// Two-mode squeezed vacuum: a = b = cosh 2r, c = sinh 2r.
///
/// Pure for every r: `a b - c^2 = 1` up to rounding.
pub fn twb_initial(r: f64) -> TwoModeCovariance {
    TwoModeCovariance {
        a: (2.0 * r).cosh(),
        b: (2.0 * r).cosh(),
        c: (2.0 * r).sinh(),
    }
}

impl TwoModeCovariance {
    /// Materializes the full 4x4 covariance matrix.
    pub fn matrix(&self) -> Matrix4<f64> {
        #[rustfmt::skip]
        let m = Matrix4::new(
            self.a, 0.0,     self.c,  0.0,
            0.0,    self.a,  0.0,    -self.c,
            self.c, 0.0,     self.b,  0.0,
            0.0,   -self.c,  0.0,     self.b,
        );
        m
    }

    /// Determinant of the full matrix: `(a b - c^2)^2` in standard form.
    pub fn det_sigma(&self) -> f64 {
        let d = self.a * self.b - self.c * self.c;
        d * d
    }
}

/// Minimum eigenvalue of the Hermitian matrix `sigma + i Omega`.
///
/// Computed through the real symmetric 8x8 embedding
/// `[[sigma, -Omega], [Omega, sigma]]`, whose spectrum is that of
/// `sigma + i Omega` doubled.
pub fn physicality_min_eigenvalue(cm: &TwoModeCovariance) -> f64 {
    let sigma = cm.matrix();
    let omega = symplectic_form();
    let mut m = SMatrix::<f64, 8, 8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = sigma[(i, j)];
            m[(i + 4, j + 4)] = sigma[(i, j)];
            m[(i, j + 4)] = -omega[(i, j)];
            m[(i + 4, j)] = omega[(i, j)];
        }
    }
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Uncertainty-relation check: true iff `sigma + i Omega >= -tol`.
pub fn physicality_check(cm: &TwoModeCovariance, tol: f64) -> bool {
    physicality_min_eigenvalue(cm) >= -tol
}

/// Steerability of mode B by Gaussian measurements on mode A:
/// `max{0, ln[a / (a b - c^2)]}`.
///
/// Equals `max{0, (1/2) ln(det A / det sigma)}` since `det A = a^2` and
/// `det sigma = (a b - c^2)^2`. The clamp to zero is exact.
pub fn steerability_a_to_b(cm: &TwoModeCovariance) -> Result<f64> {
    let det = cm.a * cm.b - cm.c * cm.c;
    if det <= 0.0 {
        return Err(Error::DegenerateState(det));
    }
    Ok((cm.a / det).ln().max(0.0))
}

/// Steerability of mode A by measurements on B: the label swap of
/// [`steerability_a_to_b`].
pub fn steerability_b_to_a(cm: &TwoModeCovariance) -> Result<f64> {
    let det = cm.a * cm.b - cm.c * cm.c;
    if det <= 0.0 {
        return Err(Error::DegenerateState(det));
    }
    Ok((cm.b / det).ln().max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_form_identities() {
        let o = symplectic_form();
        assert_eq!(o.transpose(), -o);
        assert_eq!(o * o, -Matrix4::identity());
    }

    #[test]
    fn twb_vacuum_limit() {
        let v = twb_initial(0.0);
        assert_eq!((v.a, v.b, v.c), (1.0, 1.0, 0.0));
    }

    #[test]
    fn twb_r2_values() {
        let s = twb_initial(2.0);
        assert!((s.a - 27.308232836016487).abs() < 1e-12);
        assert_eq!(s.a, s.b);
    }

    #[test]
    fn twb_purity() {
        for i in 0..=50 {
            let r = 0.1 * i as f64;
            let s = twb_initial(r);
            // hyperbolic identity a^2 - c^2 = 1; relative since a^2 grows fast
            assert!(
                (s.a * s.b - s.c * s.c - 1.0).abs() < 1e-12 * s.a * s.a,
                "r = {r}"
            );
        }
    }

    #[test]
    fn physicality_of_valid_states() {
        assert!(physicality_check(&TwoModeCovariance { a: 1.0, b: 1.0, c: 0.0 }, 1e-10));
        assert!(physicality_check(&twb_initial(2.0), 1e-10));
    }

    #[test]
    fn physicality_rejects_excess_correlation() {
        // correlations without excess variance violate the uncertainty bound
        assert!(!physicality_check(&TwoModeCovariance { a: 1.0, b: 1.0, c: 0.5 }, 1e-10));
    }

    #[test]
    fn vacuum_min_eigenvalue_is_zero() {
        let e = physicality_min_eigenvalue(&TwoModeCovariance { a: 1.0, b: 1.0, c: 0.0 });
        assert!(e.abs() < 1e-12, "got {e}");
    }

    #[test]
    fn steerability_of_twb() {
        let s = steerability_a_to_b(&twb_initial(2.0)).unwrap();
        assert!((s - 4.0f64.cosh().ln()).abs() < 1e-10);
        let s1 = steerability_b_to_a(&twb_initial(1.0)).unwrap();
        assert!((s1 - 2.0f64.cosh().ln()).abs() < 1e-12);
        assert!((s1 - 1.3250027473578644).abs() < 1e-12);
    }

    #[test]
    fn steerability_clamps_exactly() {
        let cm = TwoModeCovariance { a: 2.0, b: 2.0, c: 1.0 };
        assert_eq!(steerability_a_to_b(&cm).unwrap(), 0.0);
        let cm = TwoModeCovariance { a: 27.308, b: 1.0, c: 0.0 };
        assert_eq!(steerability_b_to_a(&cm).unwrap(), 0.0);
    }

    #[test]
    fn one_way_asymmetry() {
        let cm = TwoModeCovariance { a: 1.2, b: 3.0, c: 1.2 };
        assert_eq!(steerability_a_to_b(&cm).unwrap(), 0.0);
        let s = steerability_b_to_a(&cm).unwrap();
        assert!((s - (3.0f64 / 2.16).ln()).abs() < 1e-14);
        assert!((s - 0.3285040669720361).abs() < 1e-13);
    }

    #[test]
    fn degenerate_state_errors() {
        let cm = TwoModeCovariance { a: 1.0, b: 1.0, c: 1.0 };
        assert!(matches!(steerability_a_to_b(&cm), Err(Error::DegenerateState(_))));
    }
}
