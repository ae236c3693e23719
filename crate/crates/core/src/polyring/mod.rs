//! Exact sparse Laurent polynomials over the rationals.
//!
//! [`MultiPoly`] is the carrier for every symbolic object in the crate:
//! Riley polynomials, longitude entries, A-polynomials and the splice
//! equations. Terms live in a `BTreeMap` keyed by exponent vectors, so two
//! polynomials over the same variable list are equal iff their maps are.

mod display;
mod gcd;
mod json;
mod parse;
mod resultant;
pub mod roots;
mod trace;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use gcd::{gcd, reduce_modulo};
pub use resultant::resultant;
pub use roots::{solve_roots, solve_roots_with, ComplexRoot, RootSolverConfig};
pub use trace::{chebyshev, chebyshev_in};

/// Exponent vector, one entry per variable. Negative entries are Laurent powers.
pub type Exponents = Vec<i32>;

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, BigRational>,
}

/// The four ring operations exposed by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Checked ring arithmetic. `Pow` ignores `q`.
pub fn arith(p: &MultiPoly, q: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Sub => p.try_sub(q),
        ArithOp::Mul => p.try_mul(q),
        ArithOp::Pow(n) => Ok(p.pow(n)),
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn from_int<S: AsRef<str>>(vars: &[S], c: i64) -> Self {
        Self::constant(vars, rat(c))
    }

    /// The indeterminate `name` as a polynomial.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let p = Self::zero(vars);
        let i = p.index_of(name)?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        Ok(p.with_term(e, BigRational::one()))
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Exponents, c: BigRational) -> Self {
        let p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector length");
        p.with_term(exps, c)
    }

    /// Builds a polynomial from raw terms, summing duplicates and dropping zeros.
    pub fn from_terms<S: AsRef<str>, I>(vars: &[S], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::DegenerateInput(format!(
                    "exponent vector {e:?} does not match {} variables",
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn with_term(mut self, e: Exponents, c: BigRational) -> Self {
        self.add_term(e, c);
        self
    }

    fn empty_like(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVar(name.to_string()))
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, e: &[i32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn same_vars(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.empty_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return self.empty_like();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn degree(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(i32::MIN)
    }

    pub fn min_degree(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(i32::MAX)
    }

    pub fn degree_in(&self, name: &str) -> Result<i32> {
        Ok(self.degree(self.index_of(name)?))
    }

    /// True when no term involves `var`.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e[var] == 0)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    /// Componentwise minimum exponent vector (the largest monomial dividing
    /// `self` in the Laurent sense).
    pub fn min_exponents(&self) -> Exponents {
        let mut m = vec![i32::MAX; self.vars.len()];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        if self.is_zero() {
            m.iter_mut().for_each(|x| *x = 0);
        }
        m
    }

    /// Divides out the monomial content so every exponent is nonnegative and
    /// each variable occurs with exponent zero in some term.
    pub fn strip_monomial(&self) -> Self {
        let m: Vec<i32> = self.min_exponents().iter().map(|x| -x).collect();
        self.shift(&m)
    }

    /// Multiplies by the smallest monomial making all exponents nonnegative.
    pub fn clear_laurent(&self) -> Self {
        let m: Vec<i32> = self.min_exponents().iter().map(|&x| (-x).max(0)).collect();
        self.shift(&m)
    }

    /// Coefficients with respect to `var`: `self = Σ_k c_k var^k` where no `c_k`
    /// involves `var`. The `c_k` keep the full variable list.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<i32, MultiPoly> {
        let mut out: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            out.entry(e[var])
                .or_insert_with(|| self.empty_like())
                .add_term(e2, c.clone());
        }
        out
    }

    /// Coefficient of `var^k`.
    pub fn coefficient_of(&self, var: usize, k: i32) -> MultiPoly {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `var`.
    pub fn leading_coefficient_in(&self, var: usize) -> MultiPoly {
        self.coefficient_of(var, self.degree(var))
    }

    /// `x_var^k` over this variable list.
    pub fn var_power(&self, var: usize, k: i32) -> MultiPoly {
        let mut e = vec![0; self.vars.len()];
        e[var] = k;
        self.empty_like().with_term(e, BigRational::one())
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * rat(e[var] as i64));
            }
        }
        out
    }

    /// Exact substitution `var ↦ value`. `value` must share the variable list.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Result<Self> {
        self.check_vars(value)?;
        let k = self.index_of(var)?;
        let lo = self.min_degree(k).min(0);
        let hi = self.degree(k).max(0);
        let inverse = if lo < 0 {
            if !value.is_monomial() {
                return Err(Error::NonInvertibleSubstitution(var.to_string()));
            }
            let (e, c) = value.leading_term().expect("monomial");
            let e: Exponents = e.iter().map(|x| -x).collect();
            Some(self.empty_like().with_term(e, c.recip()))
        } else {
            None
        };
        let mut pos_pow = vec![Self::one(&self.vars)];
        for i in 1..=hi as usize {
            let next = &pos_pow[i - 1] * value;
            pos_pow.push(next);
        }
        let mut neg_pow = vec![Self::one(&self.vars)];
        if let Some(inv) = &inverse {
            for i in 1..=(-lo) as usize {
                let next = &neg_pow[i - 1] * inv;
                neg_pow.push(next);
            }
        }
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] = 0;
            let mono = self.empty_like().with_term(e2, c.clone());
            let factor = if e[k] >= 0 {
                &pos_pow[e[k] as usize]
            } else {
                &neg_pow[(-e[k]) as usize]
            };
            out = &out + &(&mono * factor);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `new_vars`. Each old variable maps to
    /// the new variable of the same name; old variables absent from `new_vars`
    /// must not occur.
    pub fn with_vars<S: AsRef<str>>(&self, new_vars: &[S]) -> Result<Self> {
        let target = Self::zero(new_vars);
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.vars.iter().position(|w| w == v))
            .collect();
        let mut out = target;
        for (e, c) in &self.terms {
            let mut e2 = vec![0; out.vars.len()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => e2[j] = x,
                    None if x == 0 => {}
                    None => return Err(Error::UnknownVar(self.vars[i].clone())),
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Renames variables positionally.
    pub fn rename_vars<S: AsRef<str>>(&self, new_vars: &[S]) -> Result<Self> {
        if new_vars.len() != self.vars.len() {
            return Err(Error::VarMismatch {
                left: self.vars.to_vec(),
                right: new_vars.iter().map(|v| v.as_ref().to_string()).collect(),
            });
        }
        Ok(MultiPoly {
            vars: new_vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: self.terms.clone(),
        })
    }

    /// Exchanges the exponents of variables `i` and `j` (`f^T` for two variables).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.swap(i, j);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars.len(), "evaluation point length");
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t *= x.powi(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of absolute coefficient values times `|x|^e`; the rounding scale
    /// for evaluating `self` at `point`.
    pub fn eval_abs_scale(&self, point: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.abs().to_f64().unwrap_or(f64::INFINITY);
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t *= x.norm().powi(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Partially evaluates numerically, returning the coefficients of the
    /// remaining single variable `keep` in ascending degree order (exponents
    /// must be nonnegative in `keep`).
    pub fn numeric_univariate(&self, keep: usize, point: &[Complex64]) -> Vec<Complex64> {
        let coeffs = self.coefficients_in(keep);
        let hi = coeffs.keys().copied().max().unwrap_or(0).max(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); hi + 1];
        for (k, c) in coeffs {
            assert!(k >= 0, "negative exponent in numeric_univariate");
            out[k as usize] = c.eval_complex(point);
        }
        out
    }

    /// Exact univariate coefficient list (ascending) when only `var` occurs.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<BigRational>> {
        if self.has_negative_exponents() {
            return Err(Error::DegenerateInput("negative exponents in univariate input".into()));
        }
        for (i, _) in self.vars.iter().enumerate() {
            if i != var && !self.is_free_of(i) {
                return Err(Error::DegenerateInput(format!(
                    "expected a univariate polynomial in {}",
                    self.vars[var]
                )));
            }
        }
        let d = self.degree(var).max(0) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[var] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Univariate polynomial over `[name]` from ascending coefficients.
    pub fn from_univariate(name: &str, coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero(&[name]);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as i32], c.clone());
        }
        p
    }

    pub fn from_univariate_ints(name: &str, coeffs: &[i64]) -> Self {
        let c: Vec<BigRational> = coeffs.iter().map(|&x| rat(x)).collect();
        Self::from_univariate(name, &c)
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Positive gcd of the numerators after clearing denominators, as a rational:
    /// `self / content` has coprime integer coefficients.
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let l = self.denominator_lcm();
        let g = self.terms.values().fold(BigInt::zero(), |acc, c| {
            let n = (c * BigRational::from_integer(l.clone())).to_integer();
            acc.gcd(&n)
        });
        BigRational::new(g, l)
    }

    /// Integer primitive form with positive lexicographically leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.rational_content();
        let mut p = self.scale(&c.recip());
        if p.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            p = -p;
        }
        p
    }

    /// Flips the sign so the leading term under the lexicographic order with
    /// `priority` variables compared first is positive.
    pub fn normalize_sign_by(&self, priority: &[usize]) -> Self {
        let key = |e: &Exponents| -> Vec<i32> {
            let mut k: Vec<i32> = priority.iter().map(|&i| e[i]).collect();
            k.extend(e.iter().copied());
            k
        };
        match self.terms.iter().max_by(|a, b| key(a.0).cmp(&key(b.0))) {
            Some((_, c)) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Maximum absolute coefficient as f64 (for diagnostics).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

impl<'a> Add for &'a MultiPoly {
    type Output = MultiPoly;
    /// Panics when the variable lists differ; use [`MultiPoly::try_add`] to check.
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable lists must agree")
    }
}

impl<'a> Sub for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable lists must agree")
    }
}

impl<'a> Mul for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable lists must agree")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars).unwrap()
    }

    #[test]
    fn binomial_laurent_square() {
        let x = p("s + s^-1", &["s"]);
        assert_eq!(x.pow(2), p("s^2 + 2 + s^-2", &["s"]));
    }

    #[test]
    fn zero_absorbs() {
        let x = p("3*s^2*t - 1/2*t^-1 + 7", &["s", "t"]);
        let z = MultiPoly::zero(&["s", "t"]);
        assert!((&x * &z).is_zero());
        assert!(arith(&z, &x, ArithOp::Mul).unwrap().is_zero());
    }

    #[test]
    fn mismatched_vars_rejected() {
        let a = p("s", &["s"]);
        let b = p("t", &["t"]);
        assert!(matches!(arith(&a, &b, ArithOp::Add), Err(Error::VarMismatch { .. })));
    }

    #[test]
    fn substitute_trace_at_one() {
        let xi = p("s + s^-1", &["s"]);
        let one = MultiPoly::one(&["s"]);
        assert_eq!(xi.substitute("s", &one).unwrap(), MultiPoly::from_int(&["s"], 2));
    }

    #[test]
    fn substitute_negative_exponent_needs_unit() {
        let f = p("s^-1 + t", &["s", "t"]);
        let bad = p("1 + t", &["s", "t"]);
        assert_eq!(
            f.substitute("s", &bad),
            Err(Error::NonInvertibleSubstitution("s".into()))
        );
        let good = p("2*t^3", &["s", "t"]);
        assert_eq!(f.substitute("s", &good).unwrap(), p("1/2*t^-3 + t", &["s", "t"]));
    }

    #[test]
    fn riley_trace_form_vanishes_on_its_root() {
        // φ₁ in (ξ, t), then t ↦ ξ² − 3.
        let phi = p("xi^2 - 3 - t", &["xi", "t"]);
        let root = p("xi^2 - 3", &["xi", "t"]);
        assert!(phi.substitute("t", &root).unwrap().is_zero());
    }

    #[test]
    fn with_vars_reorders_and_rejects_missing() {
        let f = p("s^2*t - 1", &["s", "t"]);
        let g = f.with_vars(&["t", "u", "s"]).unwrap();
        assert_eq!(g, p("t*s^2 - 1", &["t", "u", "s"]));
        assert!(f.with_vars(&["s"]).is_err());
    }

    #[test]
    fn primitive_clears_denominators_and_sign() {
        let f = p("-1/2*x^2 + 3/4", &["x"]);
        assert_eq!(f.primitive(), p("2*x^2 - 3", &["x"]));
    }
}
