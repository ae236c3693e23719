//! Torsion of the presentation 2-complex computed from its full chain complex.
//!
//! Independent of the Fox-calculus path: the boundary of the 2-cell is read
//! off the relator letter by letter, and the torsion is taken from a
//! determinant of the based complex `C₂ → C₁ → C₀` with a least-squares lift
//! of the `C₀` basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::words::{Assignment, GroupWord, Mat2};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn put(m: &Mat2<Complex64>, out: &mut DMatrix<Complex64>, r: usize, col: usize) {
    for i in 0..2 {
        for j in 0..2 {
            out[(r + i, col + j)] = m.m[i][j];
        }
    }
}

/// `J_g` for every generator: the image of the `g`-coordinate of the 2-cell
/// boundary, accumulated along the relator (`P` is the image of the prefix).
fn cell_boundary(relator: &GroupWord, rho: &Assignment<Complex64>) -> Option<Vec<(String, Mat2<Complex64>)>> {
    let gens: Vec<String> = rho.keys().cloned().collect();
    let zero = Mat2::from_f64(0.0, 0.0, 0.0, 0.0);
    let mut j: Vec<Mat2<Complex64>> = vec![zero; gens.len()];
    let mut prefix = Mat2::from_f64(1.0, 0.0, 0.0, 1.0);
    for (g, e) in relator.unit_letters() {
        let k = gens.iter().position(|h| h == g)?;
        let m = &rho[g];
        if e > 0 {
            j[k] = j[k].add(&prefix);
            prefix = prefix.mul(m);
        } else {
            let inv = m.inverse();
            prefix = prefix.mul(&inv);
            j[k] = j[k].sub(&prefix);
        }
    }
    Some(gens.into_iter().zip(j).collect())
}

/// Torsion of `⟨x, y | r⟩` at `ρ`, in the same normalization as the exterior
/// torsion: `det[∂₂; U]` where `U∂₁ = I`. Zero when the complex is not
/// acyclic at rank tolerance `1e-10`.
pub fn oracle_torsion(relator: &GroupWord, rho: &Assignment<Complex64>) -> Option<Complex64> {
    let blocks = cell_boundary(relator, rho)?;
    let n = blocks.len();
    if n != 2 {
        return None;
    }
    let mut d2 = DMatrix::<Complex64>::zeros(2, 2 * n);
    let mut d1 = DMatrix::<Complex64>::zeros(2 * n, 2);
    for (k, (g, jg)) in blocks.iter().enumerate() {
        put(jg, &mut d2, 0, 2 * k);
        put(&rho[g].minus_identity(), &mut d1, 2 * k, 0);
    }
    // acyclic iff ∂₁ is onto and ∂₂ injective (ranks 2 + 2 = dim C₁)
    let rank = |m: &DMatrix<Complex64>| {
        let sv = m.clone().svd(false, false).singular_values;
        let top = sv.iter().copied().fold(1.0, f64::max);
        sv.iter().filter(|&&x| x > 1e-10 * top).count()
    };
    if rank(&d1) < 2 || rank(&d2) < 2 {
        return Some(c(0.0));
    }
    let h = d1.adjoint();
    let gram = &h * &d1;
    let lift = gram.try_inverse()? * h;
    let mut b = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    b.view_mut((0, 0), (2, 2 * n)).copy_from(&d2);
    b.view_mut((2, 0), (2, 2 * n)).copy_from(&lift);
    Some(b.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twistknot::TwistKnotModel;

    #[test]
    fn trefoil_gives_two() {
        let m = TwistKnotModel::new(1).unwrap();
        let s = Complex64::new(0.4, 1.2);
        for (t, _) in m.t_branches(s) {
            let tau = oracle_torsion(m.relator(), &m.numeric_assignment(s, t)).unwrap();
            assert!((tau - 2.0).norm() < 1e-9, "{tau}");
        }
    }

    #[test]
    fn independent_of_conjugation() {
        let m = TwistKnotModel::new(-1).unwrap();
        let s = Complex64::new(-0.3, 0.8);
        let (t, _) = m.t_branches(s)[0];
        let a = m.numeric_assignment(s, t);
        let p = Mat2::from_f64(2.0, 1.0, 3.0, 2.0);
        let pi = p.inverse();
        let b: Assignment<Complex64> = a.iter().map(|(k, v)| (k.clone(), p.mul(v).mul(&pi))).collect();
        let ta = oracle_torsion(m.relator(), &a).unwrap();
        let tb = oracle_torsion(m.relator(), &b).unwrap();
        assert!((ta - tb).norm() < 1e-9 * ta.norm().max(1.0));
    }

    #[test]
    fn trivial_rep_is_not_acyclic() {
        let m = TwistKnotModel::new(1).unwrap();
        let id = Mat2::from_f64(1.0, 0.0, 0.0, 1.0);
        let a: Assignment<Complex64> = [("x".to_string(), id.clone()), ("y".to_string(), id)].into();
        assert_eq!(oracle_torsion(m.relator(), &a), Some(c(0.0)));
    }
}
