//! Splices of two twist-knot exteriors: the trace equation, its characters,
//! torus acyclicity, torsion and the finite set of torsion values.
//!
//! The splice identifies the meridian of each side with the longitude of the
//! other: `x₁ = λ₂`, `λ₁ = x₂`. On traces this gives `R₁(ξ₂, ξ₁) = 0` and
//! `R₂(ξ₁, ξ₂) = 0` with `ξᵢ = tr ρ(xᵢ)` and `Rᵢ` the boundary trace relation
//! of side `i`. Traces cannot tell a splice from a splice with the mirror
//! image of one side, so each root is lifted in both orientations and the
//! matrix equations decide.

mod bending;
mod solve;
mod torsion;
mod torus;

use num_complex::Complex64;
use serde::Serialize;

pub use bending::{bending_family, bending_identity_holds, bending_matrix, Bending};
pub use solve::{Orientation, SolveOutcome, SpliceCharacter, SpuriousRoot};
pub use torsion::torsion_exterior;
pub use torus::{torus_acyclicity, TorusHomology, TorusRep};

use crate::apoly::{a_polynomial, coprimality_criterion, CriterionReport};
use crate::error::{Error, Result};
use crate::polyring::{resultant, solve_roots_with, ComplexRoot, MultiPoly, RootSolverConfig};
use crate::report::{Tolerances, TORSION_CONVENTION};
use crate::twistknot::{squarefree_keep_monomials, TwistKnotModel};

pub const XI1: &str = "xi1";
pub const XI2: &str = "xi2";

#[derive(Debug)]
pub struct SpliceSystem {
    pub q1: i32,
    pub q2: i32,
    pub model1: TwistKnotModel,
    pub model2: TwistKnotModel,
    /// `R₁` and `R₂` over `[ξ_λ, ξ_μ]`.
    pub relations: (MultiPoly, MultiPoly),
    /// Univariate in `xi`: the equation satisfied by `ξ₁`.
    pub xi_equation: MultiPoly,
    /// Univariate in `xi`: the equation satisfied by `ξ₂`.
    pub xi2_equation: MultiPoly,
}

/// `Res_{ξ₂}(R₂(ξ₁, ξ₂), R₁(ξ₂, ξ₁))` as a primitive square-free polynomial in
/// `xi`, leading coefficient positive.
fn compose(r1: &MultiPoly, r2: &MultiPoly) -> Result<MultiPoly> {
    let vars = [XI1, XI2];
    // R₁(λ = ξ₂, μ = ξ₁) and R₂(λ = ξ₁, μ = ξ₂)
    let a = r1.rename_vars(&[XI2, XI1])?.with_vars(&vars)?;
    let b = r2.rename_vars(&[XI1, XI2])?;
    let res = resultant(&b, &a, XI2)?;
    if res.is_zero() {
        return Err(Error::Elimination(format!(
            "splice resultant vanishes identically (R1 = {r1}, R2 = {r2})"
        )));
    }
    let uni = res.with_vars(&[XI1])?.rename_vars(&["xi"])?;
    Ok(squarefree_keep_monomials(&uni.clear_laurent()).primitive())
}

impl SpliceSystem {
    pub fn new(q1: i32, q2: i32) -> Result<Self> {
        let model1 = TwistKnotModel::new(q1)?;
        let model2 = TwistKnotModel::new(q2)?;
        let r1 = model1.xi_relation()?.poly.clone();
        let r2 = model2.xi_relation()?.poly.clone();
        let xi_equation = compose(&r1, &r2)?;
        let xi2_equation = compose(&r2, &r1)?;
        Ok(SpliceSystem {
            q1,
            q2,
            model1,
            model2,
            relations: (r1, r2),
            xi_equation,
            xi2_equation,
        })
    }

    pub fn roots(&self, cfg: &RootSolverConfig) -> Result<Vec<ComplexRoot>> {
        solve_roots_with(&self.xi_equation, cfg)
    }
}

pub fn splice_equation(q1: i32, q2: i32) -> Result<SpliceSystem> {
    SpliceSystem::new(q1, q2)
}

/// One distinct value of `τ₁·τ₂` and the characters producing it.
#[derive(Clone, Debug, Serialize)]
pub struct RtValue {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub value: Complex64,
    pub characters: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionSummary {
    pub coprime: bool,
    pub route: &'static str,
    pub slope_sets: [crate::apoly::SlopeSet; 2],
}

impl From<&CriterionReport> for CriterionSummary {
    fn from(r: &CriterionReport) -> Self {
        CriterionSummary {
            coprime: r.coprime,
            route: r.route,
            slope_sets: r.slope_sets.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RtReport {
    pub q1: i32,
    pub q2: i32,
    pub equation: MultiPoly,
    pub characters: Vec<SpliceCharacter>,
    pub spurious: Vec<SpuriousRoot>,
    #[serde(serialize_with = "crate::report::ser_complex_vec")]
    pub rt_set: Vec<Complex64>,
    pub rt_provenance: Vec<RtValue>,
    pub criterion: CriterionSummary,
    pub tolerances: Tolerances,
    pub convention: &'static str,
}

/// Rounds to the nearest multiple of 1e-10 (well below the dedup tolerance)
/// so that reports do not carry floating point noise.
fn tidy(z: Complex64) -> Complex64 {
    let r = |x: f64| {
        let y = (x * 1e10).round() / 1e10;
        if y == 0.0 {
            0.0
        } else {
            y
        }
    };
    Complex64::new(r(z.re), r(z.im))
}

/// `RT(Σ(K₁, K₂))`: the distinct values `τ₁τ₂` over genuine characters that
/// are acyclic on the splicing torus, merged at the dedup tolerance.
pub fn rt_set(q1: i32, q2: i32, tol: &Tolerances, seed: u64) -> Result<RtReport> {
    tol.validate()?;
    let sys = SpliceSystem::new(q1, q2)?;
    let a1 = a_polynomial(&sys.model1)?;
    let a2 = a_polynomial(&sys.model2)?;
    let crit = coprimality_criterion(&a1, &a2)?;
    let outcome = sys.solve_characters(tol, seed)?;
    let mut values: Vec<RtValue> = Vec::new();
    for (i, ch) in outcome.characters.iter().enumerate() {
        if ch.mirror || !ch.acyclic_on_torus {
            continue;
        }
        let v = ch.torsion_product;
        match values.iter_mut().find(|r| (r.value - v).norm() <= tol.dedup) {
            Some(r) => r.characters.push(i),
            None => values.push(RtValue {
                value: v,
                characters: vec![i],
            }),
        }
    }
    for v in &mut values {
        v.value = tidy(v.value);
    }
    values.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(RtReport {
        q1,
        q2,
        equation: sys.xi_equation.clone(),
        characters: outcome.characters,
        spurious: outcome.spurious,
        rt_set: values.iter().map(|v| v.value).collect(),
        rt_provenance: values,
        criterion: CriterionSummary::from(&crit),
        tolerances: tol.clone(),
        convention: TORSION_CONVENTION,
    })
}
