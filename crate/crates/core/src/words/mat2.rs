//! 2×2 matrices over a ring of scalars.

use std::fmt;

use num_complex::Complex64;

use crate::polyring::MultiPoly;

/// Ring operations needed for matrix products. Constants are built "like"
/// an existing scalar so polynomial entries inherit its variable list.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact equality with 1 for exact scalars, within 1e-9 for floating point.
    fn is_unit_det(&self) -> bool;
}

impl Scalar for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.vars())
    }
    fn int_like(&self, n: i64) -> Self {
        MultiPoly::from_int(self.vars(), n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_unit_det(&self) -> bool {
        self.is_one()
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn int_like(&self, n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_unit_det(&self) -> bool {
        (self - Complex64::new(1.0, 0.0)).norm() <= 1e-9
    }
}

/// `[[a11, a12], [a21, a22]]`, row major.
#[derive(Clone, PartialEq)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Mat2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    pub fn identity_like(x: &T) -> Self {
        Self::new(x.one_like(), x.zero_like(), x.zero_like(), x.one_like())
    }

    pub fn zero_like(x: &T) -> Self {
        Self::new(x.zero_like(), x.zero_like(), x.zero_like(), x.zero_like())
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[i][j]
    }

    /// A representative scalar, used to build constants of the same kind.
    pub fn sample(&self) -> &T {
        &self.m[0][0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.m[i][0].mul(&o.m[0][j]).add(&self.m[i][1].mul(&o.m[1][j]));
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let c = self.sample().int_like(n);
        self.map(|a| a.mul(&c))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Self::new(f(&self.m[0][0]), f(&self.m[0][1]), f(&self.m[1][0]), f(&self.m[1][1]))
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self::new(
            f(&self.m[0][0], &o.m[0][0]),
            f(&self.m[0][1], &o.m[0][1]),
            f(&self.m[1][0], &o.m[1][0]),
            f(&self.m[1][1], &o.m[1][1]),
        )
    }

    pub fn det(&self) -> T {
        self.m[0][0].mul(&self.m[1][1]).sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn trace(&self) -> T {
        self.m[0][0].add(&self.m[1][1])
    }

    /// `(d, −b; −c, a)`, the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(
            self.m[1][1].clone(),
            self.m[0][1].neg(),
            self.m[1][0].neg(),
            self.m[0][0].clone(),
        )
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.adjugate() } else { self.clone() };
        let mut out = Self::identity_like(self.sample());
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn minus_identity(&self) -> Self {
        self.sub(&Self::identity_like(self.sample()))
    }
}

impl Mat2<Complex64> {
    pub fn from_f64(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        let c = |x| Complex64::new(x, 0.0);
        Self::new(c(a11), c(a12), c(a21), c(a22))
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        self.adjugate().map(|a| a / d)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }
}

impl Mat2<MultiPoly> {
    /// Numeric evaluation of every entry.
    pub fn eval(&self, point: &[Complex64]) -> Mat2<Complex64> {
        let e = |i: usize, j: usize| self.m[i][j].eval_complex(point);
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {}, {})",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_inverts_unimodular() {
        let v = ["s", "t"];
        let p = |x: &str| MultiPoly::parse(x, &v).unwrap();
        let y = Mat2::new(p("s"), p("0"), p("-t"), p("s^-1"));
        assert!(y.det().is_one());
        assert_eq!(y.mul(&y.adjugate()), Mat2::identity_like(&p("1")));
        assert_eq!(y.pow(-2).mul(&y.pow(2)), Mat2::identity_like(&p("1")));
    }

    #[test]
    fn numeric_inverse() {
        let a = Mat2::from_f64(2.0, 1.0, 3.0, 4.0);
        let i = a.mul(&a.inverse());
        assert!(i.dist(&Mat2::from_f64(1.0, 0.0, 0.0, 1.0)) < 1e-15);
    }
}
