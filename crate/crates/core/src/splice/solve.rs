//! Lifting roots of the trace equation to characters of the splice.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::torus::{torus_acyclicity, TorusRep};
use super::{torsion_exterior, SpliceSystem};
use crate::error::Result;
use crate::polyring::roots::numeric_roots;
use crate::polyring::{ComplexRoot, RootSolverConfig};
use crate::report::{ser_complex, Tolerances};
use crate::words::{evaluate_word, Assignment, Mat2};

/// `Genuine`: `x₂ = λ₁`. `Mirror`: `x₂ = λ₁⁻¹`, a splice with the mirror image
/// of the second knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Genuine,
    Mirror,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpliceCharacter {
    pub root_index: usize,
    #[serde(serialize_with = "ser_complex")]
    pub xi1: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub xi2: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub s1: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub t1: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub s2: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub t2: Complex64,
    #[serde(rename = "c2", serialize_with = "ser_complex")]
    pub c_squared: Complex64,
    pub orientation: Orientation,
    pub mirror: bool,
    /// Largest relative defect of the matrix gluing equations.
    pub residual: f64,
    /// Relative residuals of `φ_{q₁}(s₁, t₁)` and `φ_{q₂}(s₂, t₂)`.
    pub riley_residuals: [f64; 2],
    #[serde(rename = "acyclic")]
    pub acyclic_on_torus: bool,
    pub homology_dims: (usize, usize, usize),
    pub parabolic: bool,
    #[serde(serialize_with = "ser_complex")]
    pub torsion_1: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub torsion_2: Complex64,
    #[serde(rename = "torsion", serialize_with = "ser_complex")]
    pub torsion_product: Complex64,
}

/// A root of the trace equation with no certified character over it.
#[derive(Clone, Debug, Serialize)]
pub struct SpuriousRoot {
    pub root_index: usize,
    #[serde(serialize_with = "ser_complex")]
    pub xi: Complex64,
    pub reason: String,
    /// Smallest gluing residual among attempted lifts (∞ when none got that far).
    pub best_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutcome {
    pub roots: Vec<ComplexRoot>,
    pub characters: Vec<SpliceCharacter>,
    pub spurious: Vec<SpuriousRoot>,
}

/// Candidate filter for numeric branches; the final decision is the matrix
/// gluing test at the gluing tolerance.
const BRANCH_TOL: f64 = 1e-6;
const NONZERO_T: f64 = 1e-10;

/// `s` with `s + 1/s = ξ`, principal square root branch.
pub fn lift_trace(xi: Complex64) -> Complex64 {
    (xi + (xi * xi - 4.0).sqrt()) / 2.0
}

fn rel_dist(a: &Mat2<Complex64>, b: &Mat2<Complex64>) -> f64 {
    a.dist(b) / b.max_abs().max(1.0)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= BRANCH_TOL * b.norm().max(1.0)
}

fn dedup(v: Vec<Complex64>) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for z in v {
        if !out.iter().any(|w| (w - z).norm() <= 1e-8 * z.norm().max(1.0)) {
            out.push(z);
        }
    }
    out
}

impl SpliceSystem {
    /// Every certified character over every root of the trace equation.
    /// Roots are processed in parallel; output order follows the sorted roots.
    pub fn solve_characters(&self, tol: &Tolerances, seed: u64) -> Result<SolveOutcome> {
        tol.validate()?;
        let cfg = RootSolverConfig {
            cert_tol: tol.root_cert,
            seed,
            ..RootSolverConfig::default()
        };
        let roots = self.roots(&cfg)?;
        let per_root: Vec<(Vec<SpliceCharacter>, Option<SpuriousRoot>)> = roots
            .par_iter()
            .enumerate()
            .map(|(i, r)| self.lift_root(i, r.value, tol))
            .collect();
        let mut characters = Vec::new();
        let mut spurious = Vec::new();
        for (chars, sp) in per_root {
            characters.extend(chars);
            spurious.extend(sp);
        }
        Ok(SolveOutcome {
            roots,
            characters,
            spurious,
        })
    }

    fn lift_root(
        &self,
        index: usize,
        xi1: Complex64,
        tol: &Tolerances,
    ) -> (Vec<SpliceCharacter>, Option<SpuriousRoot>) {
        let (r1, r2) = &self.relations;
        let zero = Complex64::new(0.0, 0.0);
        // ξ₂ from R₁(ξ₂, ξ₁) = 0, kept when R₂(ξ₁, ξ₂) = 0 as well
        let c = r1.numeric_univariate(0, &[zero, xi1]);
        let xi2s: Vec<Complex64> = dedup(
            numeric_roots(&c)
                .into_iter()
                .filter(|&x2| {
                    let v = r2.eval_complex(&[xi1, x2]).norm();
                    v <= BRANCH_TOL * r2.eval_abs_scale(&[xi1, x2]).max(1.0)
                })
                .collect(),
        );
        let spurious = |reason: String, best: f64| SpuriousRoot {
            root_index: index,
            xi: xi1,
            reason,
            best_residual: best,
        };
        if xi2s.is_empty() {
            return (
                vec![],
                Some(spurious(
                    "no common root of the two trace relations".into(),
                    f64::INFINITY,
                )),
            );
        }
        let m1 = &self.model1;
        let m2 = &self.model2;
        let s1 = lift_trace(xi1);
        let mut out = Vec::new();
        let mut best = f64::INFINITY;
        for &xi2 in &xi2s {
            for (t1, res1) in m1.t_branches(s1) {
                if t1.norm() <= NONZERO_T || res1 > BRANCH_TOL {
                    continue;
                }
                let l1 = m1.numeric_longitude(s1, t1);
                if !close(l1.trace(), xi2) {
                    continue;
                }
                let (ell, u) = (l1.m[0][0], l1.m[0][1]);
                for orientation in [Orientation::Genuine, Orientation::Mirror] {
                    let (s2, c2) = match orientation {
                        Orientation::Genuine => (ell, u),
                        Orientation::Mirror => (1.0 / ell, -u),
                    };
                    if c2.norm() <= 1e-12 {
                        continue;
                    }
                    for (t2, _) in m2.t_branches(s2) {
                        if t2.norm() <= NONZERO_T {
                            continue;
                        }
                        let Some(ch) = self.assemble(index, xi1, xi2, s1, t1, s2, t2, c2, orientation, tol) else {
                            continue;
                        };
                        best = best.min(ch.residual);
                        if ch.residual <= tol.gluing {
                            out.push(ch);
                        }
                    }
                }
            }
        }
        let sp = if out.is_empty() {
            Some(spurious("no lift satisfies the matrix gluing equations".into(), best))
        } else {
            None
        };
        (out, sp)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        &self,
        index: usize,
        xi1: Complex64,
        xi2: Complex64,
        s1: Complex64,
        t1: Complex64,
        s2: Complex64,
        t2: Complex64,
        c2: Complex64,
        orientation: Orientation,
        tol: &Tolerances,
    ) -> Option<SpliceCharacter> {
        let m1 = &self.model1;
        let m2 = &self.model2;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let side1 = m1.numeric_assignment(s1, t1);
        // second side conjugated by diag(c, 1/c)
        let mut side2 = Assignment::new();
        side2.insert("x".to_string(), Mat2::new(s2, c2, zero, one / s2));
        side2.insert("y".to_string(), Mat2::new(s2, zero, -t2 / c2, one / s2));
        let x1 = &side1["x"];
        let x2 = &side2["x"];
        let l1 = evaluate_word(m1.lambda_word(), &side1).ok()?;
        let l2 = evaluate_word(m2.lambda_word(), &side2).ok()?;
        let l1_target = match orientation {
            Orientation::Genuine => l1.clone(),
            Orientation::Mirror => l1.inverse(),
        };
        let residual = rel_dist(x2, &l1_target).max(rel_dist(&l2, x1));
        let riley_residuals = [m1.riley_residual(s1, t1), m2.riley_residual(s2, t2)];
        let homology = torus_acyclicity(&TorusRep::new(x1.clone(), l1), tol.rank).ok()?;
        let (tau1, tau2, prod) = if homology.acyclic {
            let a = torsion_exterior(m1, s1, t1).ok()?;
            let b = torsion_exterior(m2, s2, t2).ok()?;
            (a, b, a * b)
        } else {
            (zero, zero, zero)
        };
        Some(SpliceCharacter {
            root_index: index,
            xi1,
            xi2,
            s1,
            t1,
            s2,
            t2,
            c_squared: c2,
            orientation,
            mirror: orientation == Orientation::Mirror,
            residual,
            riley_residuals,
            acyclic_on_torus: homology.acyclic,
            homology_dims: homology.dims,
            parabolic: homology.parabolic,
            torsion_1: tau1,
            torsion_2: tau2,
            torsion_product: prod,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn near_family(xi: Complex64, n: f64) -> bool {
        (1..(n as usize))
            .step_by(2)
            .any(|k| (xi - 2.0 * (k as f64 * PI / n).cos()).norm() < 1e-9)
    }

    #[test]
    fn trefoil_characters() {
        let sys = SpliceSystem::new(1, 1).unwrap();
        let out = sys.solve_characters(&Tolerances::default(), 7).unwrap();
        let genuine: Vec<_> = out.characters.iter().filter(|c| !c.mirror).collect();
        let mirror: Vec<_> = out.characters.iter().filter(|c| c.mirror).collect();
        assert_eq!(genuine.len(), 17);
        assert_eq!(mirror.len(), 18);
        assert!(genuine.iter().all(|c| near_family(c.xi1, 35.0)));
        assert!(mirror.iter().all(|c| near_family(c.xi1, 37.0)));
        assert_eq!(out.spurious.len(), 1);
        assert!((out.spurious[0].xi + 2.0).norm() < 1e-9);
        for c in &genuine {
            assert!(c.acyclic_on_torus);
            assert!((c.torsion_product - 4.0).norm() < 1e-7);
            let expected = -(1.0 + c.s1.powi(2) + c.s1.powi(4)) * (1.0 + c.s1.powi(6)) / c.s1.powi(5);
            assert!((c.c_squared - expected).norm() < 1e-9);
        }
    }
}
