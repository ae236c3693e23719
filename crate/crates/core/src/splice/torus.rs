//! Twisted homology of the torus with coefficients in a commuting pair.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::Mat2;

/// Images of the two boundary generators of a torus (meridian, longitude).
#[derive(Clone, Debug)]
pub struct TorusRep {
    pub x: Mat2<Complex64>,
    pub l: Mat2<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusHomology {
    pub acyclic: bool,
    /// `(dim H₀, dim H₁, dim H₂)`.
    pub dims: (usize, usize, usize),
    /// `tr X`, `tr L`, `tr XL` all within 1e-9 of 2.
    pub parabolic: bool,
    /// The rank verdict agrees with the parabolic test.
    pub consistent: bool,
}

const PARABOLIC_TOL: f64 = 1e-9;

fn block(m: &Mat2<Complex64>, out: &mut DMatrix<Complex64>, r: usize, c: usize, sign: f64) {
    for i in 0..2 {
        for j in 0..2 {
            out[(r + i, c + j)] = m.m[i][j] * sign;
        }
    }
}

pub(crate) fn numeric_rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let scale = sv.iter().copied().fold(1.0, f64::max);
    sv.iter().filter(|&&x| x > tol * scale).count()
}

impl TorusRep {
    pub fn new(x: Mat2<Complex64>, l: Mat2<Complex64>) -> Self {
        TorusRep { x, l }
    }

    pub fn commutator_defect(&self) -> f64 {
        self.x.mul(&self.l).dist(&self.l.mul(&self.x))
    }

    /// `∂₂ = (−(L − I), X − I)` (2×4) and `∂₁ = (X − I; L − I)` (4×2), acting on
    /// row vectors.
    pub fn boundary_maps(&self) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
        let xm = self.x.minus_identity();
        let lm = self.l.minus_identity();
        let mut d2 = DMatrix::zeros(2, 4);
        block(&lm, &mut d2, 0, 0, -1.0);
        block(&xm, &mut d2, 0, 2, 1.0);
        let mut d1 = DMatrix::zeros(4, 2);
        block(&xm, &mut d1, 0, 0, 1.0);
        block(&lm, &mut d1, 2, 0, 1.0);
        (d2, d1)
    }

    pub fn is_parabolic(&self) -> bool {
        let two = Complex64::new(2.0, 0.0);
        [self.x.trace(), self.l.trace(), self.x.mul(&self.l).trace()]
            .iter()
            .all(|t| (t - two).norm() <= PARABOLIC_TOL)
    }
}

/// Homology dimensions from numeric ranks (singular values above
/// `rank_tol` relative to the largest), cross-checked against the
/// parabolic trace test.
pub fn torus_acyclicity(rep: &TorusRep, rank_tol: f64) -> Result<TorusHomology> {
    let defect = rep.commutator_defect();
    let scale = rep.x.max_abs().max(rep.l.max_abs()).max(1.0);
    if defect > 1e-8 * scale * scale {
        return Err(Error::InvalidTorusRep(defect));
    }
    let (d2, d1) = rep.boundary_maps();
    let r2 = numeric_rank(&d2, rank_tol);
    let r1 = numeric_rank(&d1, rank_tol);
    let dims = (2 - r1, 4 - r1 - r2, 2 - r2);
    let acyclic = dims == (0, 0, 0);
    let parabolic = rep.is_parabolic();
    Ok(TorusHomology {
        acyclic,
        dims,
        parabolic,
        consistent: acyclic != parabolic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_rep() {
        let id = Mat2::from_f64(1.0, 0.0, 0.0, 1.0);
        let h = torus_acyclicity(&TorusRep::new(id.clone(), id), 1e-8).unwrap();
        assert_eq!(h.dims, (2, 4, 2));
        assert!(h.parabolic && h.consistent);
    }

    #[test]
    fn nontrivial_parabolic() {
        let x = Mat2::from_f64(1.0, 1.0, 0.0, 1.0);
        let l = Mat2::from_f64(1.0, -3.5, 0.0, 1.0);
        let h = torus_acyclicity(&TorusRep::new(x, l), 1e-8).unwrap();
        assert_eq!(h.dims, (1, 2, 1));
        assert!(!h.acyclic && h.consistent);
    }

    #[test]
    fn diagonal_is_acyclic() {
        let s = c(0.3, 1.1);
        let u = c(-2.0, 0.4);
        let z = c(0.0, 0.0);
        let x = Mat2::new(s, z, z, s.inv());
        let l = Mat2::new(u, z, z, u.inv());
        let h = torus_acyclicity(&TorusRep::new(x, l), 1e-8).unwrap();
        assert_eq!(h.dims, (0, 0, 0));
        assert!(h.acyclic && h.consistent);
    }

    #[test]
    fn non_commuting_rejected() {
        let x = Mat2::from_f64(1.0, 1.0, 0.0, 1.0);
        let l = Mat2::from_f64(1.0, 0.0, 1.0, 1.0);
        assert!(matches!(
            torus_acyclicity(&TorusRep::new(x, l), 1e-8),
            Err(Error::InvalidTorusRep(_))
        ));
    }
}
