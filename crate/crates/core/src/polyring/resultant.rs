//! Resultants via fraction-free (Bareiss) elimination of the Sylvester matrix.

use super::MultiPoly;
use crate::error::{Error, Result};

/// Resultant of `p` and `q` with respect to `var`.
///
/// Negative exponents in the other variables are cleared first, which only
/// changes the result by a unit monomial. `var` itself must occur with
/// nonnegative exponents and positive degree in both inputs. The result keeps
/// the full variable list and is free of `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    if !p.same_vars(q) {
        return Err(Error::VarMismatch {
            left: p.vars().to_vec(),
            right: q.vars().to_vec(),
        });
    }
    let v = p.index_of(var)?;
    for f in [p, q] {
        if f.is_zero() || f.degree(v) <= 0 {
            return Err(Error::Elimination(format!("input has degree 0 in {var}: {f}")));
        }
        if f.min_degree(v) < 0 {
            return Err(Error::Elimination(format!("negative power of {var} in {f}")));
        }
    }
    let p = p.clear_laurent();
    let q = q.clear_laurent();
    let m = p.degree(v) as usize;
    let n = q.degree(v) as usize;
    let pc: Vec<MultiPoly> = (0..=m).rev().map(|k| p.coefficient_of(v, k as i32)).collect();
    let qc: Vec<MultiPoly> = (0..=n).rev().map(|k| q.coefficient_of(v, k as i32)).collect();
    let size = m + n;
    let zero = MultiPoly::zero(p.vars());
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in pc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in qc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss_det(rows))
}

/// Determinant of a square matrix of polynomials by Bareiss elimination.
pub(crate) fn bareiss_det(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    assert!(n > 0, "empty matrix");
    let vars = a[0][0].vars().to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
