//! Bending a glued representation along the splicing torus.
//!
//! `A_a = (a, (a − 1/a)/(s₁ − 1/s₁); 0, 1/a)` commutes with `X₁`, hence with
//! every element of the torus image. Conjugating only the first side by `A_a`
//! keeps the gluing but changes `tr(Y₁X₂)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::MultiPoly;
use crate::words::Mat2;

#[derive(Clone, Debug, Serialize)]
pub struct Bending {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub a: Complex64,
    /// `tr(A_a Y₁ A_a⁻¹ X₂)`.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub trace: Complex64,
    /// The closed form `s₁s₂ + 1/(s₁s₂) + {((s₂ − 1/s₂)/(s₁ − 1/s₁))(1/a² − 1) − c²/a²} t₁`.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub closed_form: Complex64,
    /// `‖A X₁ A⁻¹ − X₁‖` and `‖A L₁ A⁻¹ − L₁‖`, with `L₁ = X₂ = (s₂, c²; 0, 1/s₂)`.
    pub commutes_x1: f64,
    pub commutes_l1: f64,
}

pub fn bending_matrix(s1: Complex64, a: Complex64) -> Result<Mat2<Complex64>> {
    let d = s1 - 1.0 / s1;
    if d.norm() < 1e-12 {
        return Err(Error::DegenerateCommutant);
    }
    if a.norm() == 0.0 {
        return Err(Error::DegenerateInput("bending parameter a must be nonzero".into()));
    }
    Ok(Mat2::new(a, (a - 1.0 / a) / d, Complex64::new(0.0, 0.0), 1.0 / a))
}

pub fn bending_family(
    s1: Complex64,
    s2: Complex64,
    t1: Complex64,
    c_squared: Complex64,
    a: Complex64,
) -> Result<Bending> {
    let am = bending_matrix(s1, a)?;
    let ai = am.inverse();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let x1 = Mat2::new(s1, one, zero, 1.0 / s1);
    let y1 = Mat2::new(s1, zero, -t1, 1.0 / s1);
    let x2 = Mat2::new(s2, c_squared, zero, 1.0 / s2);
    let conj = |m: &Mat2<Complex64>| am.mul(m).mul(&ai);
    let trace = conj(&y1).mul(&x2).trace();
    let d = s1 - 1.0 / s1;
    let closed_form =
        s1 * s2 + 1.0 / (s1 * s2) + ((s2 - 1.0 / s2) / d * (1.0 / (a * a) - 1.0) - c_squared / (a * a)) * t1;
    Ok(Bending {
        a,
        trace,
        closed_form,
        commutes_x1: conj(&x1).dist(&x1),
        commutes_l1: conj(&x2).dist(&x2),
    })
}

/// Exact check of the closed form over `ℚ[s₁^±, s₂^±, t₁, c2, a]`, after
/// clearing the denominator `a²D²` with `D = s₁ − 1/s₁`.
pub fn bending_identity_holds() -> bool {
    let v = ["s1", "s2", "t1", "c2", "a"];
    let p = |src: &str| MultiPoly::parse(src, &v).expect("literal");
    let d = p("s1 - s1^-1");
    let a2 = p("a^2");
    let a2m1 = p("a^2 - 1");
    // a·D·A_a and a·D·A_a⁻¹
    let at = Mat2::new(&a2 * &d, a2m1.clone(), p("0"), d.clone());
    let at_inv = Mat2::new(d.clone(), -&a2m1, p("0"), &a2 * &d);
    let y1 = Mat2::new(p("s1"), p("0"), p("-t1"), p("s1^-1"));
    let x2 = Mat2::new(p("s2"), p("c2"), p("0"), p("s2^-1"));
    let lhs = at.mul(&y1).mul(&at_inv).mul(&x2).trace();
    let d2 = &d * &d;
    let rhs = &(&(&a2 * &d2) * &p("s1*s2 + s1^-1*s2^-1")) + &(&(&(&d * &p("s2 - s2^-1")) * &p("1 - a^2")) * &p("t1"))
        - (&d2 * &p("c2*t1"));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_identity() {
        assert!(bending_identity_holds());
    }

    #[test]
    fn a_equal_one_is_plain_trace() {
        let s1 = Complex64::new(0.2, 0.9);
        let s2 = Complex64::new(-1.1, 0.3);
        let t1 = Complex64::new(0.5, -0.7);
        let c2 = Complex64::new(2.0, 1.0);
        let b = bending_family(s1, s2, t1, c2, Complex64::new(1.0, 0.0)).unwrap();
        let plain = s1 * s2 + 1.0 / (s1 * s2) - c2 * t1;
        assert!((b.trace - plain).norm() < 1e-12);
        assert!(b.commutes_x1 < 1e-12);
    }

    #[test]
    fn degenerate_commutant() {
        let one = Complex64::new(1.0, 0.0);
        assert!(matches!(
            bending_family(one, one, one, one, Complex64::new(2.0, 0.0)),
            Err(Error::DegenerateCommutant)
        ));
        assert!(matches!(
            bending_family(-one, one, one, one, Complex64::new(2.0, 0.0)),
            Err(Error::DegenerateCommutant)
        ));
    }
}
