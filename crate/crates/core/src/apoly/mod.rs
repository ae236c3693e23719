//! A-polynomials of twist knots and the coprimality criterion for splices.

mod newton;

pub use newton::{minkowski_sum, newton_polygon, NewtonPolygon, Point, Slope, SlopeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{gcd, resultant, MultiPoly};
use crate::twistknot::TwistKnotModel;

pub const L: &str = "L";
pub const M: &str = "M";

/// Eliminates `(s, t)` from `φ_q(s, t) = 0`, `M = s`, `L = L₁₁(s, t)`.
///
/// The result is the square-free primitive integer polynomial in `(L, M)`
/// including the abelian factor `L − 1`, divisible by neither `L` nor `M`.
/// Components of the character variety not visible in the Riley
/// parametrization are not captured.
pub fn a_polynomial(model: &TwistKnotModel) -> Result<MultiPoly> {
    let lmat = model.longitude_matrix();
    let lower = model.reduce(&lmat.m[1][0]);
    if !lower.is_zero() {
        return Err(Error::Elimination(format!(
            "longitude is not upper triangular on the Riley curve for q = {}: {lower}",
            model.q()
        )));
    }
    let vars = [L, M, "t"];
    let eigen = model.reduce(&lmat.m[0][0]).rename_vars(&[M, "t"])?.with_vars(&vars)?;
    let g = (&MultiPoly::var(&vars, L)? - &eigen).clear_laurent();
    let raw = if g.is_free_of(2) {
        g
    } else {
        let phi = model.riley().rename_vars(&[M, "t"])?.with_vars(&vars)?.clear_laurent();
        let r = resultant(&phi, &g, "t")?;
        if r.is_zero() {
            return Err(Error::Elimination(format!(
                "resultant collapsed to zero for q = {} (φ = {}, eigenvalue relation = {g})",
                model.q(),
                model.riley()
            )));
        }
        r
    };
    let nonabelian = raw.with_vars(&[L, M])?.squarefree_part();
    let abelian = MultiPoly::parse("L - 1", &[L, M])?;
    let a = if nonabelian.div_exact(&abelian).is_some() {
        nonabelian
    } else {
        (&abelian * &nonabelian).primitive()
    };
    let m_minus_1 = MultiPoly::parse("M - 1", &[L, M])?;
    if a.div_exact(&m_minus_1).is_some() {
        return Err(Error::Elimination(format!("A-polynomial divisible by M − 1: {a}")));
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoprimalityVerdict {
    CertifiedCoprimeBySlopes,
    CoprimeByGcd,
    NotCoprime,
}

impl CoprimalityVerdict {
    pub fn coprime(self) -> bool {
        !matches!(self, CoprimalityVerdict::NotCoprime)
    }

    pub fn route(self) -> &'static str {
        match self {
            CoprimalityVerdict::CertifiedCoprimeBySlopes => "slopes",
            _ => "gcd",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub verdict: CoprimalityVerdict,
    pub coprime: bool,
    pub route: &'static str,
    /// `SS(N(f₁))` and `SS(N(f₂))⁻¹`.
    pub slope_sets: [SlopeSet; 2],
    /// `gcd(f₁, f₂ᵀ)` when the gcd route was taken.
    pub gcd: Option<MultiPoly>,
}

/// Tests whether `gcd(f₁(L, M), f₂(M, L))` is a monomial.
///
/// Disjointness of `SS(N(f₁))` and `SS(N(f₂))⁻¹` certifies it directly;
/// otherwise the exact gcd decides.
pub fn coprimality_criterion(f1: &MultiPoly, f2: &MultiPoly) -> Result<CriterionReport> {
    if f1.is_zero() || f2.is_zero() {
        return Err(Error::DegenerateInput("criterion needs nonzero polynomials".into()));
    }
    if !f1.same_vars(f2) {
        return Err(Error::VarMismatch {
            left: f1.vars().to_vec(),
            right: f2.vars().to_vec(),
        });
    }
    let s1 = NewtonPolygon::of(f1)?.slope_set();
    let s2inv = NewtonPolygon::of(f2)?.slope_set().invert();
    let (verdict, g) = if s1.is_disjoint(&s2inv) {
        (CoprimalityVerdict::CertifiedCoprimeBySlopes, None)
    } else {
        let g = gcd(f1, &f2.swap_vars(0, 1))?;
        let v = if g.is_constant() {
            CoprimalityVerdict::CoprimeByGcd
        } else {
            CoprimalityVerdict::NotCoprime
        };
        (v, Some(g))
    };
    Ok(CriterionReport {
        verdict,
        coprime: verdict.coprime(),
        route: verdict.route(),
        slope_sets: [s1, s2inv],
        gcd: g,
    })
}
