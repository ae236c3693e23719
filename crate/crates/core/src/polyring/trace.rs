//! Normalized Chebyshev polynomials and the rewriting `s^n + s^-n -> T_n(ξ)`.

use super::MultiPoly;
use crate::error::{Error, Result};

/// `T_n` over the single variable `x`, normalized so `T_n(2cos θ) = 2cos nθ`.
pub fn chebyshev(n: u32) -> MultiPoly {
    chebyshev_in(n, &["x"], "x").expect("x is a variable")
}

/// `T_n(var)` over an arbitrary variable list. `T_0 = 2`, `T_1 = x`,
/// `T_{n+1} = x T_n − T_{n−1}`.
pub fn chebyshev_in<S: AsRef<str>>(n: u32, vars: &[S], var: &str) -> Result<MultiPoly> {
    let x = MultiPoly::var(vars, var)?;
    let mut prev = MultiPoly::from_int(vars, 2);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

impl MultiPoly {
    /// Rewrites a polynomial symmetric under `s ↦ 1/s` as a polynomial in
    /// `ξ = s + 1/s`. The variable `s` is renamed to `xi` in place.
    ///
    /// Works greedily from the top `s`-degree down, peeling off
    /// `c_n (s^n + s^-n)`; anything left that cannot be peeled proves the
    /// input is not symmetric.
    pub fn to_trace_coordinate(&self, s: &str, xi: &str) -> Result<MultiPoly> {
        let k = self.index_of(s)?;
        let out_vars: Vec<String> = self
            .vars()
            .iter()
            .map(|v| if v == s { xi.to_string() } else { v.clone() })
            .collect();
        let mut rest = self.clone();
        let mut out = MultiPoly::zero(&out_vars);
        while !rest.is_zero() {
            let n = rest.degree(k);
            if n < 0 {
                return Err(Error::NotSymmetric(s.to_string()));
            }
            let c = rest.coefficient_of(k, n);
            if n == 0 {
                if rest.min_degree(k) < 0 {
                    return Err(Error::NotSymmetric(s.to_string()));
                }
                out = &out + &c.rename_vars(&out_vars)?;
                break;
            }
            let sym = &rest.var_power(k, n) + &rest.var_power(k, -n);
            rest = &rest - &(&c * &sym);
            let t_n = chebyshev_in(n as u32, &out_vars, xi)?;
            out = &out + &(&c.rename_vars(&out_vars)? * &t_n);
        }
        Ok(out)
    }

    /// Inverse of [`MultiPoly::to_trace_coordinate`]: substitutes `ξ ↦ s + 1/s`.
    pub fn from_trace_coordinate(&self, xi: &str, s: &str) -> Result<MultiPoly> {
        let out_vars: Vec<String> = self
            .vars()
            .iter()
            .map(|v| if v == xi { s.to_string() } else { v.clone() })
            .collect();
        let renamed = self.rename_vars(&out_vars)?;
        let k = renamed.index_of(s)?;
        let value = &renamed.var_power(k, 1) + &renamed.var_power(k, -1);
        renamed.substitute(s, &value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn t6_closed_form() {
        let t6 = chebyshev(6);
        assert_eq!(t6, MultiPoly::from_univariate_ints("x", &[-2, 0, 9, 0, -6, 0, 1]));
    }

    #[test]
    fn base_cases() {
        assert_eq!(chebyshev(0), MultiPoly::from_int(&["x"], 2));
        assert_eq!(chebyshev(1), MultiPoly::var(&["x"], "x").unwrap());
    }

    #[test]
    fn t6_at_cosine() {
        let th = std::f64::consts::PI / 7.0;
        let v = chebyshev(6).eval_complex(&[Complex64::new(2.0 * th.cos(), 0.0)]);
        assert!((v.re - 2.0 * (6.0 * th).cos()).abs() < 1e-12);
    }

    #[test]
    fn riley_q1_in_trace_coordinates() {
        let v = ["s", "t"];
        let f = MultiPoly::parse("s^2 + s^-2 - 1 - t", &v).unwrap();
        let g = f.to_trace_coordinate("s", "xi").unwrap();
        assert_eq!(g, MultiPoly::parse("xi^2 - 3 - t", &["xi", "t"]).unwrap());
    }

    #[test]
    fn longitude_trace_is_minus_t6() {
        let f = MultiPoly::parse("-s^6 - s^-6", &["s"]).unwrap();
        let g = f.to_trace_coordinate("s", "xi").unwrap();
        assert_eq!(g, -chebyshev(6).rename_vars(&["xi"]).unwrap());
    }

    #[test]
    fn constant_passes_through() {
        let f = MultiPoly::from_int(&["s"], 5);
        assert_eq!(
            f.to_trace_coordinate("s", "xi").unwrap(),
            MultiPoly::from_int(&["xi"], 5)
        );
    }

    #[test]
    fn asymmetric_rejected() {
        for src in ["s^2 + s^-1", "s", "s^-3", "s^2*t + s^-2"] {
            let f = MultiPoly::parse(src, &["s", "t"]).unwrap();
            assert_eq!(
                f.to_trace_coordinate("s", "xi"),
                Err(Error::NotSymmetric("s".into())),
                "{src}"
            );
        }
    }
}
