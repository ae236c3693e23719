//! Exact division, primitive remainder sequences and square-free parts.

use num_traits::Zero;

use super::MultiPoly;
use crate::error::{Error, Result};

impl MultiPoly {
    /// Exact division in the Laurent ring. Returns `None` when `d` does not
    /// divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(self.same_vars(d), "variable lists must agree");
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let a_shift = self.min_exponents();
        let d_shift = d.min_exponents();
        let a = self.strip_monomial();
        let b = d.strip_monomial();
        let q = div_exact_poly(&a, &b)?;
        let back: Vec<i32> = a_shift.iter().zip(&d_shift).map(|(x, y)| x - y).collect();
        Some(q.shift(&back))
    }

    /// Pseudo-remainder of `self` by `b` with respect to `var`:
    /// `lc(b)^(deg a − deg b + 1) · a mod b`. Both must be polynomial in `var`.
    pub fn pseudo_rem(&self, b: &MultiPoly, var: usize) -> MultiPoly {
        let db = b.degree(var);
        let lb = b.leading_coefficient_in(var);
        let mut r = self.clone();
        if r.is_zero() || r.degree(var) < db {
            return r;
        }
        let mut steps = r.degree(var) - db + 1;
        while !r.is_zero() && r.degree(var) >= db {
            let dr = r.degree(var);
            let lr = r.leading_coefficient_in(var);
            let shift = r.var_power(var, dr - db);
            r = &(&lb * &r) - &(&(&lr * &shift) * b);
            steps -= 1;
        }
        for _ in 0..steps {
            r = &lb * &r;
        }
        r
    }

    /// Gcd of the coefficients with respect to `var` (a polynomial free of `var`).
    pub fn content_in(&self, var: usize) -> MultiPoly {
        let mut g = MultiPoly::zero(self.vars());
        for c in self.coefficients_in(var).values() {
            g = gcd_poly(&g, c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Square-free part: the product of the distinct irreducible factors,
    /// integer primitive, without monomial factors.
    pub fn squarefree_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.strip_monomial().primitive();
        let Some(var) = (0..p.nvars()).find(|&i| p.degree(i) > 0) else {
            return MultiPoly::one(p.vars());
        };
        let c = p.content_in(var);
        let pp = p.div_exact(&c).expect("content divides");
        let g = gcd_poly(&pp, &pp.derivative(var));
        let sf = pp.div_exact(&g).expect("gcd divides");
        (&c.squarefree_part() * &sf).primitive()
    }
}

/// Lex-order long division of polynomials with nonnegative exponents.
fn div_exact_poly(a: &MultiPoly, d: &MultiPoly) -> Option<MultiPoly> {
    let (ld_e, ld_c) = d.leading_term()?;
    let ld_e = ld_e.clone();
    let ld_c = ld_c.clone();
    let mut r = a.clone();
    let mut q = MultiPoly::zero(a.vars());
    while let Some((e, c)) = r.leading_term() {
        let mut m = Vec::with_capacity(e.len());
        for (x, y) in e.iter().zip(&ld_e) {
            if x < y {
                return None;
            }
            m.push(x - y);
        }
        let t = MultiPoly::monomial(a.vars(), m, c / &ld_c);
        r = &r - &(&t * d);
        q = &q + &t;
    }
    Some(q)
}

/// Greatest common divisor, integer primitive with positive leading term.
///
/// Laurent inputs are first shifted to polynomials; monomial factors are
/// discarded, so the result is determined up to units of the Laurent ring.
/// Returns 1 when the inputs are coprime.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    if !p.same_vars(q) {
        return Err(Error::VarMismatch {
            left: p.vars().to_vec(),
            right: q.vars().to_vec(),
        });
    }
    if p.terms()
        .chain(q.terms())
        .any(|(e, _)| e.iter().any(|x| x.unsigned_abs() > 1 << 20))
    {
        return Err(Error::SizeOverflow);
    }
    Ok(gcd_poly(&p.strip_monomial(), &q.strip_monomial()))
}

pub(crate) fn gcd_poly(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.strip_monomial().primitive();
    }
    if q.is_zero() {
        return p.strip_monomial().primitive();
    }
    let p = p.strip_monomial();
    let q = q.strip_monomial();
    let Some(var) = (0..p.nvars()).find(|&i| p.degree(i) > 0 || q.degree(i) > 0) else {
        return MultiPoly::one(p.vars());
    };
    let cp = p.content_in(var);
    let cq = q.content_in(var);
    let cg = gcd_poly(&cp, &cq);
    let mut a = p.div_exact(&cp).expect("content divides").primitive();
    let mut b = q.div_exact(&cq).expect("content divides").primitive();
    if a.degree(var) < b.degree(var) {
        std::mem::swap(&mut a, &mut b);
    }
    while b.degree(var) > 0 {
        let r = a.pseudo_rem(&b, var);
        if r.is_zero() {
            break;
        }
        let cr = r.content_in(var);
        a = b;
        b = r.div_exact(&cr).expect("content divides").primitive();
    }
    // b is either the gcd of the primitive parts or a nonzero polynomial free of
    // `var`; in the latter case the primitive parts are coprime in `var`.
    let pp = if b.degree(var) > 0 { b } else { MultiPoly::one(p.vars()) };
    (&cg * &pp).strip_monomial().primitive()
}

/// Exact univariate-or-not remainder of `p` modulo `d` with respect to `var`
/// when the leading coefficient of `d` in `var` is a single term (a unit of
/// the Laurent ring in the remaining variables).
pub fn reduce_modulo(p: &MultiPoly, d: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let lc = d.leading_coefficient_in(var);
    if !lc.is_monomial() {
        return Err(Error::DegenerateInput(
            "leading coefficient of the modulus is not a monomial".into(),
        ));
    }
    let dd = d.degree(var);
    if d.min_degree(var) < 0 || p.min_degree(var) < 0 {
        return Err(Error::DegenerateInput(
            "negative exponent in the reduction variable".into(),
        ));
    }
    let (le, lcoef) = lc.leading_term().expect("nonzero");
    let inv_e: Vec<i32> = le.iter().map(|x| -x).collect();
    let inv = MultiPoly::monomial(p.vars(), inv_e, lcoef.recip());
    let mut r = p.clone();
    while !r.is_zero() && r.degree(var) >= dd {
        let k = r.degree(var);
        let coeff = r.coefficient_of(var, k);
        let t = &(&coeff * &inv) * &r.var_power(var, k - dd);
        r = &r - &(&t * d);
    }
    debug_assert!(r.terms().all(|(_, c)| !c.is_zero()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["L", "M"]).unwrap()
    }

    #[test]
    fn printed_factors_coprime() {
        // (L−1)(LM⁶+1) against (M−1)(ML⁶+1): factor sets {L−1, LM⁶+1} and
        // {M−1, ML⁶+1} are irreducible and pairwise distinct.
        let f = &p("L - 1") * &p("L*M^6 + 1");
        let g = &p("M - 1") * &p("M*L^6 + 1");
        assert!(gcd(&f, &g).unwrap().is_one());
    }

    #[test]
    fn planted_common_factor() {
        let h = p("L^2*M - 3*M + 2");
        let f = &p("L + M^2") * &h;
        let g = &p("L*M - 7") * &h;
        assert_eq!(gcd(&f, &g).unwrap(), h.primitive());
    }

    #[test]
    fn gcd_with_self_is_primitive_part() {
        let f = p("-4*L^2*M + 6*M - 2");
        assert_eq!(gcd(&f, &f).unwrap(), p("2*L^2*M - 3*M + 1"));
    }

    #[test]
    fn monomials_are_units() {
        let f = &p("L^3*M") * &p("L + 1");
        let g = &p("M^2") * &p("L + 1");
        assert_eq!(gcd(&f, &g).unwrap(), p("L + 1"));
        assert!(gcd(&p("L^2"), &p("M^5")).unwrap().is_one());
    }

    #[test]
    fn squarefree_removes_repeats() {
        let f = &(&p("L - 1").pow(3) * &p("M + 2").pow(2)) * &p("L*M + 1");
        assert_eq!(
            f.squarefree_part(),
            (&(&p("L - 1") * &p("M + 2")) * &p("L*M + 1")).primitive()
        );
    }

    #[test]
    fn exact_division_laurent() {
        let v = ["s", "t"];
        let d = MultiPoly::parse("s - s^-1", &v).unwrap();
        let q = MultiPoly::parse("t*s^2 + s^-3", &v).unwrap();
        let prod = &d * &q;
        assert_eq!(prod.div_exact(&d).unwrap(), q);
        assert!(MultiPoly::parse("s + 2", &v).unwrap().div_exact(&d).is_none());
    }

    #[test]
    fn reduce_modulo_monic_in_t() {
        let v = ["s", "t"];
        let phi = MultiPoly::parse("s^2 + s^-2 - 1 - t", &v).unwrap();
        let f = MultiPoly::parse("t^2", &v).unwrap();
        let r = reduce_modulo(&f, &phi, 1).unwrap();
        assert_eq!(r, MultiPoly::parse("s^2 + s^-2 - 1", &v).unwrap().pow(2));
    }
}
