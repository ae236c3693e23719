//! The twist knot J(2,2q): group words, the Riley parametrization of its
//! irreducible characters, the longitude, and boundary trace relations.
//!
//! The knot group is `⟨x, y | z^q x = y z^q⟩` with `z = [y, x⁻¹]`, and the
//! longitude commuting with `x` is `λ = z̃^q z^q` with `z̃ = [x, y⁻¹]`.
//! Irreducible representations up to conjugacy are
//! `x ↦ (s, 1; 0, 1/s)`, `y ↦ (s, 0; −t, 1/s)` with `φ_q(s, t) = 0`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::roots::{numeric_residual, numeric_roots};
use crate::polyring::{reduce_modulo, resultant, MultiPoly};
use crate::words::{evaluate_word, Assignment, GroupWord, Mat2};

pub const S: &str = "s";
pub const T: &str = "t";
pub const XI: &str = "xi";
/// Variables of [`TwistKnotModel::xi_relation`]: trace of the longitude, then
/// trace of the meridian.
pub const XI_LAMBDA: &str = "xi_lambda";
pub const XI_MU: &str = "xi_mu";

#[derive(Debug)]
pub struct TwistKnotModel {
    q: i32,
    x: Mat2<MultiPoly>,
    y: Mat2<MultiPoly>,
    z_word: GroupWord,
    ztilde_word: GroupWord,
    lambda_word: GroupWord,
    relator: GroupWord,
    riley: OnceLock<MultiPoly>,
    riley_xi: OnceLock<MultiPoly>,
    longitude: OnceLock<Mat2<MultiPoly>>,
    longitude_trace: OnceLock<MultiPoly>,
    xi_relation: OnceLock<Result<XiRelation>>,
}

/// `R(ξ_λ, ξ_μ)`; `reduced` is set when the raw resultant carried repeated
/// factors that were removed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiRelation {
    pub poly: MultiPoly,
    pub reduced: bool,
}

/// Symbolic data of the irreducible character curve.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterCurveData {
    pub q: i32,
    pub riley: MultiPoly,
    pub riley_xi: MultiPoly,
    pub longitude_trace: MultiPoly,
    pub xi_relation: MultiPoly,
}

fn word(src: &str, q: i32, macros: &BTreeMap<String, GroupWord>) -> GroupWord {
    GroupWord::parse(src, Some(q), macros).expect("static word literal")
}

impl TwistKnotModel {
    pub fn new(q: i32) -> Result<Self> {
        if q == 0 {
            return Err(Error::Unknot);
        }
        let v = [S, T];
        let p = |src: &str| MultiPoly::parse(src, &v).expect("static polynomial literal");
        let x = Mat2::new(p("s"), p("1"), p("0"), p("s^-1"));
        let y = Mat2::new(p("s"), p("0"), p("-t"), p("s^-1"));
        let none = BTreeMap::new();
        let z_word = GroupWord::commutator(&word("y", q, &none), &word("x^-1", q, &none));
        let ztilde_word = GroupWord::commutator(&word("x", q, &none), &word("y^-1", q, &none));
        let mut macros = BTreeMap::new();
        macros.insert("z".to_string(), z_word.clone());
        macros.insert("zt".to_string(), ztilde_word.clone());
        let lambda_word = word("zt^q z^q", q, &macros);
        let relator = word("z^q x z^-q y^-1", q, &macros);
        Ok(TwistKnotModel {
            q,
            x,
            y,
            z_word,
            ztilde_word,
            lambda_word,
            relator,
            riley: OnceLock::new(),
            riley_xi: OnceLock::new(),
            longitude: OnceLock::new(),
            longitude_trace: OnceLock::new(),
            xi_relation: OnceLock::new(),
        })
    }

    pub fn q(&self) -> i32 {
        self.q
    }

    pub fn x(&self) -> &Mat2<MultiPoly> {
        &self.x
    }

    pub fn y(&self) -> &Mat2<MultiPoly> {
        &self.y
    }

    pub fn z_word(&self) -> &GroupWord {
        &self.z_word
    }

    pub fn ztilde_word(&self) -> &GroupWord {
        &self.ztilde_word
    }

    pub fn lambda_word(&self) -> &GroupWord {
        &self.lambda_word
    }

    /// `z^q x z^-q y^-1`.
    pub fn relator(&self) -> &GroupWord {
        &self.relator
    }

    pub fn assignment(&self) -> Assignment<MultiPoly> {
        let mut a = Assignment::new();
        a.insert("x".into(), self.x.clone());
        a.insert("y".into(), self.y.clone());
        a
    }

    pub fn numeric_assignment(&self, s: Complex64, t: Complex64) -> Assignment<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut a = Assignment::new();
        a.insert("x".into(), Mat2::new(s, one, zero, one / s));
        a.insert("y".into(), Mat2::new(s, zero, -t, one / s));
        a
    }

    fn eval(&self, w: &GroupWord) -> Mat2<MultiPoly> {
        evaluate_word(w, &self.assignment()).expect("x and y are bound and unimodular")
    }

    pub fn z_matrix(&self) -> Mat2<MultiPoly> {
        self.eval(&self.z_word)
    }

    pub fn ztilde_matrix(&self) -> Mat2<MultiPoly> {
        self.eval(&self.ztilde_word)
    }

    pub fn zq_matrix(&self) -> Mat2<MultiPoly> {
        self.eval(&self.z_word.pow(self.q))
    }

    /// `Z^q X − Y Z^q`, which vanishes exactly on the representation variety.
    pub fn relator_defect(&self) -> Mat2<MultiPoly> {
        let zq = self.zq_matrix();
        zq.mul(&self.x).sub(&self.y.mul(&zq))
    }

    /// `(Z^q)₁₁ + (1/s − s)(Z^q)₁₂` before normalization.
    pub fn riley_raw(&self) -> MultiPoly {
        let zq = self.zq_matrix();
        let f = MultiPoly::parse("s^-1 - s", &[S, T]).expect("literal");
        &zq.m[0][0] + &(&f * &zq.m[0][1])
    }

    /// The Riley polynomial `φ_q(s, t)`: shifted in `s` to be invariant under
    /// `s ↦ 1/s`, integer primitive, with positive leading `t`-coefficient.
    pub fn riley(&self) -> &MultiPoly {
        self.riley.get_or_init(|| {
            let raw = self.riley_raw();
            let lo = raw.min_degree(0);
            let hi = raw.degree(0);
            debug_assert!((lo + hi) % 2 == 0, "Riley polynomial has a symmetric s-support");
            raw.shift(&[-(lo + hi) / 2, 0]).primitive().normalize_sign_by(&[1])
        })
    }

    /// `φ_q` in the trace coordinates `(ξ, t)`, `ξ = s + 1/s`.
    pub fn riley_xi(&self) -> &MultiPoly {
        self.riley_xi.get_or_init(|| {
            self.riley()
                .to_trace_coordinate(S, XI)
                .expect("Riley polynomials are symmetric in s")
        })
    }

    /// Leading coefficient of `φ_q` in `t` (a monomial in `s`).
    pub fn riley_leading_t_coefficient(&self) -> MultiPoly {
        self.riley().leading_coefficient_in(1)
    }

    pub fn longitude_matrix(&self) -> &Mat2<MultiPoly> {
        self.longitude.get_or_init(|| self.eval(&self.lambda_word))
    }

    /// `tr L` reduced modulo `φ_q` in `t`.
    pub fn longitude_trace(&self) -> &MultiPoly {
        self.longitude_trace
            .get_or_init(|| self.reduce(&self.longitude_matrix().trace()))
    }

    /// Remainder modulo `φ_q` with respect to `t`.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        reduce_modulo(p, self.riley(), 1).expect("leading t-coefficient of φ is a monomial")
    }

    /// When `φ_q` is linear in `t`, the root `t(s)` as a Laurent polynomial.
    pub fn linear_t_root(&self) -> Option<MultiPoly> {
        let phi = self.riley();
        if phi.degree(1) != 1 {
            return None;
        }
        let c1 = phi.coefficient_of(1, 1);
        let c0 = phi.coefficient_of(1, 0);
        let (e, c) = c1.leading_term()?;
        if !c1.is_monomial() {
            return None;
        }
        let inv = MultiPoly::monomial(&[S, T], e.iter().map(|x| -x).collect(), c.recip());
        Some(-(&c0 * &inv))
    }

    /// The longitude matrix with `t` eliminated, when `φ_q` is linear in `t`.
    pub fn longitude_on_curve(&self) -> Option<Mat2<MultiPoly>> {
        let t = self.linear_t_root()?;
        Some(
            self.longitude_matrix()
                .map(|e| e.substitute(T, &t).expect("t occurs polynomially")),
        )
    }

    /// `R(ξ_λ, ξ_μ) = Res_t(φ_q(ξ_μ, t), ℓ(ξ_μ, t) − ξ_λ)`, with `ℓ` the reduced
    /// longitude trace in trace coordinates, made square-free and primitive with
    /// positive `ξ_λ` leading coefficient.
    pub fn xi_relation(&self) -> Result<&XiRelation> {
        self.xi_relation
            .get_or_init(|| self.compute_xi_relation())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_xi_relation(&self) -> Result<XiRelation> {
        let vars = [XI_LAMBDA, XI_MU, T];
        let ell = self.longitude_trace().to_trace_coordinate(S, XI_MU)?.with_vars(&vars)?;
        let eta = MultiPoly::var(&vars, XI_LAMBDA)?;
        let g = &ell - &eta;
        let raw = if g.is_free_of(2) {
            g
        } else {
            let phi = self.riley_xi().rename_vars(&[XI_MU, T])?.with_vars(&vars)?;
            resultant(&phi, &g, T)?
        };
        if raw.is_zero() {
            return Err(Error::Elimination(format!(
                "resultant of φ and ℓ − ξ_λ vanishes for q = {}",
                self.q
            )));
        }
        let raw = raw.with_vars(&[XI_LAMBDA, XI_MU])?.clear_laurent();
        let sf = squarefree_keep_monomials(&raw);
        let reduced = sf != raw.primitive();
        Ok(XiRelation {
            poly: sf.primitive().normalize_sign_by(&[0]),
            reduced,
        })
    }

    pub fn curve_data(&self) -> Result<CharacterCurveData> {
        Ok(CharacterCurveData {
            q: self.q,
            riley: self.riley().clone(),
            riley_xi: self.riley_xi().clone(),
            longitude_trace: self.longitude_trace().clone(),
            xi_relation: self.xi_relation()?.poly.clone(),
        })
    }

    // numeric helpers

    pub fn riley_at(&self, s: Complex64, t: Complex64) -> Complex64 {
        self.riley().eval_complex(&[s, t])
    }

    /// `|φ(s,t)|` relative to the coefficient scale at `(s,t)`.
    pub fn riley_residual(&self, s: Complex64, t: Complex64) -> f64 {
        let scale = self.riley().eval_abs_scale(&[s, t]);
        let v = self.riley_at(s, t).norm();
        if scale == 0.0 {
            v
        } else {
            v / scale
        }
    }

    /// Roots `t` of `φ_q(s, ·)` for a numeric `s`, each polished and paired with
    /// its relative residual.
    pub fn t_branches(&self, s: Complex64) -> Vec<(Complex64, f64)> {
        let coeffs = self.riley().numeric_univariate(1, &[s, Complex64::new(0.0, 0.0)]);
        numeric_roots(&coeffs)
            .into_iter()
            .map(|t| (t, numeric_residual(&coeffs, t)))
            .collect()
    }

    pub fn numeric_word(&self, w: &GroupWord, s: Complex64, t: Complex64) -> Mat2<Complex64> {
        evaluate_word(w, &self.numeric_assignment(s, t)).expect("x and y are bound")
    }

    /// `‖Z^q X − Y Z^q‖∞` at a numeric point.
    pub fn numeric_defect(&self, s: Complex64, t: Complex64) -> f64 {
        let a = self.numeric_assignment(s, t);
        let zq = evaluate_word(&self.z_word.pow(self.q), &a).expect("bound");
        zq.mul(&a["x"]).sub(&a["y"].mul(&zq)).max_abs()
    }

    pub fn numeric_longitude(&self, s: Complex64, t: Complex64) -> Mat2<Complex64> {
        self.numeric_word(&self.lambda_word, s, t)
    }
}

/// Square-free part that keeps monomial factors of the trace variables
/// (`ξ = 0` is a legitimate trace value) and only removes repeated factors.
pub(crate) fn squarefree_keep_monomials(p: &MultiPoly) -> MultiPoly {
    let sf = p.squarefree_part();
    let mut m = vec![0; p.nvars()];
    let shift = p.min_exponents();
    for (i, k) in shift.iter().enumerate() {
        m[i] = (*k).min(1);
    }
    sf.shift(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::chebyshev_in;
    use proptest::prelude::*;

    fn st(src: &str) -> MultiPoly {
        MultiPoly::parse(src, &[S, T]).unwrap()
    }

    #[test]
    fn unknot_rejected() {
        assert_eq!(TwistKnotModel::new(0).unwrap_err(), Error::Unknot);
    }

    #[test]
    fn trefoil_defect_is_riley_multiple() {
        let m = TwistKnotModel::new(1).unwrap();
        let d = m.relator_defect();
        let phi = st("s^2 + s^-2 - 1 - t");
        assert!(d.m[0][0].is_zero() && d.m[1][1].is_zero());
        assert_eq!(d.m[0][1], phi);
        assert_eq!(d.m[1][0], &st("t") * &phi);
    }

    #[test]
    fn riley_trace_forms() {
        let xt = |src: &str| MultiPoly::parse(src, &[XI, T]).unwrap();
        let r1 = TwistKnotModel::new(1).unwrap();
        assert_eq!(r1.riley_xi(), &-xt("xi^2 - 3 - t"));
        let rm1 = TwistKnotModel::new(-1).unwrap();
        assert_eq!(rm1.riley_xi(), &xt("t^2 - xi^2*t + 5*t - xi^2 + 5"));
    }

    #[test]
    fn lambda_is_null_homologous() {
        for q in [-3, -1, 1, 2] {
            let m = TwistKnotModel::new(q).unwrap();
            assert_eq!(m.lambda_word().exponent_sum("x"), 0);
            assert_eq!(m.lambda_word().exponent_sum("y"), 0);
        }
    }

    #[test]
    fn trefoil_longitude() {
        let m = TwistKnotModel::new(1).unwrap();
        let l = m.longitude_on_curve().unwrap();
        assert_eq!(l.m[0][0], st("-s^6"));
        assert_eq!(l.m[0][1], -(&(&st("1 + s^2 + s^4") * &st("1 + s^6")) * &st("s^-5")));
        assert!(l.m[1][0].is_zero());
        assert_eq!(l.m[1][1], st("-s^-6"));
        let tr = m.longitude_trace().to_trace_coordinate(S, XI).unwrap();
        let t6 = chebyshev_in(6, &[XI, T], XI).unwrap();
        assert_eq!(tr, -t6);
    }

    #[test]
    fn xi_relations() {
        let r = |src: &str| MultiPoly::parse(src, &[XI_LAMBDA, XI_MU]).unwrap();
        let t6 = chebyshev_in(6, &[XI_LAMBDA, XI_MU], XI_MU).unwrap();
        let m1 = TwistKnotModel::new(1).unwrap();
        assert_eq!(m1.xi_relation().unwrap().poly, &r("xi_lambda") + &t6);
        let mm1 = TwistKnotModel::new(-1).unwrap();
        assert_eq!(
            mm1.xi_relation().unwrap().poly,
            r("xi_lambda - xi_mu^4 + 5*xi_mu^2 - 2")
        );
    }

    #[test]
    fn xi_relation_through_resultant_when_t_survives() {
        // For q = 2 the reduced longitude trace still involves t, so the relation
        // comes from a genuine resultant; check it vanishes on numeric characters.
        let m = TwistKnotModel::new(2).unwrap();
        let rel = &m.xi_relation().unwrap().poly;
        let s = Complex64::new(0.7, 0.4);
        for (t, _) in m.t_branches(s) {
            let l = m.numeric_longitude(s, t).trace();
            let v = rel.eval_complex(&[l, s + 1.0 / s]);
            let scale = rel.eval_abs_scale(&[l, s + 1.0 / s]);
            assert!(v.norm() / scale < 1e-10, "{}", v.norm() / scale);
        }
    }

    #[test]
    fn trace_of_xy() {
        let m = TwistKnotModel::new(1).unwrap();
        let tr = m.x().mul(m.y()).trace().to_trace_coordinate(S, XI).unwrap();
        assert_eq!(tr, MultiPoly::parse("xi^2 - t - 2", &[XI, T]).unwrap());
    }

    #[test]
    fn riley_leading_coefficient_is_monomial() {
        for q in -5..=5 {
            if q == 0 {
                continue;
            }
            let m = TwistKnotModel::new(q).unwrap();
            assert!(m.riley_leading_t_coefficient().is_monomial(), "q = {q}");
        }
    }

    #[test]
    fn longitude_commutes_with_x_modulo_riley() {
        for q in [-2, -1, 1, 2] {
            let m = TwistKnotModel::new(q).unwrap();
            let l = m.longitude_matrix();
            let c = m.x().mul(l).sub(&l.mul(m.x()));
            for e in c.m.iter().flatten() {
                assert!(m.reduce(e).is_zero(), "q = {q}");
            }
        }
    }

    fn s_strategy() -> impl Strategy<Value = Complex64> {
        (0.5f64..2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, th)| Complex64::from_polar(r, th))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn on_curve_points_are_representations(s in s_strategy(), qi in 0usize..4) {
            let q = [-2, -1, 1, 2][qi];
            let m = TwistKnotModel::new(q).unwrap();
            for (t, _) in m.t_branches(s) {
                prop_assert!(m.numeric_defect(s, t) < 1e-8);
                let l = m.numeric_longitude(s, t);
                let x = &m.numeric_assignment(s, t)["x"];
                prop_assert!(x.mul(&l).dist(&l.mul(x)) < 1e-8);
            }
        }

        #[test]
        fn off_curve_points_are_not(s in s_strategy(), t in s_strategy(), qi in 0usize..4) {
            let q = [-2, -1, 1, 2][qi];
            let m = TwistKnotModel::new(q).unwrap();
            prop_assume!(m.riley_at(s, t).norm() > 1e-2);
            prop_assert!(m.numeric_defect(s, t) > 1e-3);
        }
    }
}
