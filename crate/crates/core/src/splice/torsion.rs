//! Reidemeister torsion of a twist-knot exterior from Fox calculus.
//!
//! With relator `r = z^q x z^-q y^-1` the torsion of the two-generator,
//! one-relator complex is `det ρ(∂r/∂y) / det(ρ(x) − I)`. The fundamental
//! identity gives `ρ(∂r/∂x)(X − I) = −ρ(∂r/∂y)(Y − I)` on representations, so
//! `det ρ(∂r/∂x) / det(ρ(y) − I)` is the same value and serves as a fallback.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::twistknot::TwistKnotModel;
use crate::words::{evaluate_group_ring, fox_derivative};

/// Points closer than this to `det(X − I) = 0` count as non-acyclic.
const DENOMINATOR_TOL: f64 = 1e-12;
const ON_CURVE_TOL: f64 = 1e-8;

/// `τ_ρ(E(K))` at the character `(s, t)`; 0 when the complex is not acyclic.
pub fn torsion_exterior(model: &TwistKnotModel, s: Complex64, t: Complex64) -> Result<Complex64> {
    if t.norm() <= 1e-12 {
        return Err(Error::DegenerateInput("t = 0 gives a reducible representation".into()));
    }
    let res = model.riley_residual(s, t);
    if res > ON_CURVE_TOL {
        return Err(Error::DegenerateInput(format!(
            "(s, t) is not on the Riley curve (relative residual {res:e})"
        )));
    }
    let a = model.numeric_assignment(s, t);
    let r = model.relator();
    let dx = a["x"].minus_identity().det();
    let dy = a["y"].minus_identity().det();
    let (num, den) = if dx.norm() > DENOMINATOR_TOL {
        (evaluate_group_ring(&fox_derivative(r, "y"), &a)?.det(), dx)
    } else if dy.norm() > DENOMINATOR_TOL {
        (evaluate_group_ring(&fox_derivative(r, "x"), &a)?.det(), dy)
    } else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_is_two_everywhere() {
        let m = TwistKnotModel::new(1).unwrap();
        for s in [
            Complex64::new(0.3, 0.9),
            Complex64::from_polar(1.0, 0.7),
            Complex64::new(-2.0, 0.1),
        ] {
            for (t, _) in m.t_branches(s) {
                let tau = torsion_exterior(&m, s, t).unwrap();
                assert!((tau - 2.0).norm() < 1e-9, "{tau}");
            }
        }
    }

    #[test]
    fn trefoil_at_s_one_is_not_acyclic() {
        let m = TwistKnotModel::new(1).unwrap();
        let s = Complex64::new(1.0, 0.0);
        assert_eq!(
            torsion_exterior(&m, s, Complex64::new(1.0, 0.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn figure_eight_is_two_minus_two_xi() {
        let m = TwistKnotModel::new(-1).unwrap();
        let s = Complex64::new(0.4, -1.3);
        let xi = s + 1.0 / s;
        for (t, _) in m.t_branches(s) {
            let tau = torsion_exterior(&m, s, t).unwrap();
            assert!((tau - (2.0 - 2.0 * xi)).norm() < 1e-9, "{tau}");
        }
    }

    #[test]
    fn off_curve_and_reducible_rejected() {
        let m = TwistKnotModel::new(1).unwrap();
        let s = Complex64::new(0.5, 0.5);
        assert!(torsion_exterior(&m, s, Complex64::new(3.0, 0.0)).is_err());
        assert!(torsion_exterior(&m, s, Complex64::new(0.0, 0.0)).is_err());
    }
}
