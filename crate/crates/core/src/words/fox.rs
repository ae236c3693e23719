//! Integral group ring of the free group and Fox derivatives.

use std::collections::BTreeMap;
use std::fmt;

use super::{evaluate_word, Assignment, GroupWord, Mat2, Scalar};
use crate::error::{Error, Result};

/// Finite ℤ-combination of reduced words.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<GroupWord, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(GroupWord::identity())
    }

    pub fn from_word(w: GroupWord) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: GroupWord, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}·[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∂w/∂g`, from `∂g/∂g = 1`, `∂g⁻¹/∂g = −g⁻¹` and
/// `∂(uv)/∂g = ∂u/∂g + u ∂v/∂g`.
pub fn fox_derivative(w: &GroupWord, g: &str) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = GroupWord::identity();
    for (h, e) in w.unit_letters() {
        let letter = GroupWord::from_syllables([(h, e)]);
        if h == g {
            if e > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.mul(&letter), -1);
            }
        }
        prefix = prefix.mul(&letter);
    }
    out
}

/// ℤ-linear extension of [`evaluate_word`].
pub fn evaluate_group_ring<T: Scalar>(e: &GroupRingElem, assignment: &Assignment<T>) -> Result<Mat2<T>> {
    let sample = assignment
        .values()
        .next()
        .map(|m| m.sample().clone())
        .ok_or_else(|| Error::DegenerateInput("empty assignment".into()))?;
    let mut out = Mat2::zero_like(&sample);
    for (w, c) in e.terms() {
        out = out.add(&evaluate_word(w, assignment)?.scale_int(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MultiPoly;
    use proptest::prelude::*;

    fn w(src: &str) -> GroupWord {
        GroupWord::parse(src, None, &BTreeMap::new()).unwrap()
    }

    fn gre(items: &[(&str, i64)]) -> GroupRingElem {
        let mut e = GroupRingElem::zero();
        for (s, c) in items {
            e.add_term(w(s), *c);
        }
        e
    }

    #[test]
    fn product_rule_basics() {
        assert_eq!(fox_derivative(&w("x y"), "x"), GroupRingElem::one());
        assert_eq!(fox_derivative(&w("x^-1"), "x"), gre(&[("x^-1", -1)]));
        assert_eq!(fox_derivative(&w("x^2"), "x"), gre(&[("", 1), ("x", 1)]));
        assert!(fox_derivative(&w("y^3"), "x").is_zero());
    }

    #[test]
    fn evaluation_of_one_minus_x() {
        let v = ["s"];
        let p = |x: &str| MultiPoly::parse(x, &v).unwrap();
        let mut a = Assignment::new();
        let x = Mat2::new(p("s"), p("1"), p("0"), p("s^-1"));
        a.insert("x".to_string(), x.clone());
        let e = gre(&[("", 1), ("x", -1)]);
        let id = Mat2::identity_like(&p("1"));
        assert_eq!(evaluate_group_ring(&e, &a).unwrap(), id.sub(&x));
        assert_eq!(
            evaluate_group_ring(&GroupRingElem::zero(), &a).unwrap(),
            Mat2::zero_like(&p("1"))
        );
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = GroupWord> {
        proptest::collection::vec(
            (
                prop_oneof![Just("x"), Just("y")],
                prop_oneof![Just(1), Just(-1), Just(2), Just(-2)],
            ),
            0..=max_len,
        )
        .prop_map(GroupWord::from_syllables)
    }

    /// `w − 1 = Σ_g (∂w/∂g)(g − 1)`.
    fn fundamental_identity(u: &GroupWord) -> (GroupRingElem, GroupRingElem) {
        let lhs = GroupRingElem::from_word(u.clone()).sub(&GroupRingElem::one());
        let mut rhs = GroupRingElem::zero();
        for g in ["x", "y"] {
            let gm1 = GroupRingElem::from_word(GroupWord::generator(g)).sub(&GroupRingElem::one());
            rhs = rhs.add(&fox_derivative(u, g).mul(&gm1));
        }
        (lhs, rhs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn fox_fundamental_identity(u in word_strategy(12)) {
            let (lhs, rhs) = fundamental_identity(&u);
            prop_assert_eq!(&lhs, &rhs);
            // and after evaluation at the symbolic generators
            let v = ["s", "t"];
            let p = |x: &str| MultiPoly::parse(x, &v).unwrap();
            let mut a = Assignment::new();
            a.insert("x".to_string(), Mat2::new(p("s"), p("1"), p("0"), p("s^-1")));
            a.insert("y".to_string(), Mat2::new(p("s"), p("0"), p("-t"), p("s^-1")));
            prop_assert_eq!(evaluate_group_ring(&lhs, &a).unwrap(), evaluate_group_ring(&rhs, &a).unwrap());
        }

        #[test]
        fn fox_product_rule(u in word_strategy(6), v in word_strategy(6)) {
            for g in ["x", "y"] {
                let direct = fox_derivative(&u.mul(&v), g);
                let split = fox_derivative(&u, g)
                    .add(&GroupRingElem::from_word(u.clone()).mul(&fox_derivative(&v, g)));
                prop_assert_eq!(direct, split);
            }
        }
    }
}
