//! Free-group words, their matrix images, and Fox calculus.

mod fox;
mod mat2;

use std::collections::BTreeMap;
use std::fmt;

pub use fox::{evaluate_group_ring, fox_derivative, GroupRingElem};
pub use mat2::{Mat2, Scalar};

use crate::error::{Error, Result};

/// A freely reduced word: adjacent syllables have distinct generators and
/// nonzero exponents.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord {
    letters: Vec<(String, i32)>,
}

/// Generator assignment for [`evaluate_word`].
pub type Assignment<T> = BTreeMap<String, Mat2<T>>;

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(name: &str) -> Self {
        GroupWord {
            letters: vec![(name.to_string(), 1)],
        }
    }

    /// Builds a word from syllables, reducing as it goes.
    pub fn from_syllables<S: Into<String>, I: IntoIterator<Item = (S, i32)>>(it: I) -> Self {
        let mut w = GroupWord::identity();
        for (g, e) in it {
            w.push(g.into(), e);
        }
        w
    }

    fn push(&mut self, g: String, e: i32) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(String, i32)] {
        &self.letters
    }

    /// Letters with unit exponents, in order.
    pub fn unit_letters(&self) -> impl Iterator<Item = (&str, i32)> {
        self.letters
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n((g.as_str(), e.signum()), e.unsigned_abs() as usize))
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit letters.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(g.clone(), *e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|(g, e)| (g.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn exponent_sum(&self, g: &str) -> i64 {
        self.letters
            .iter()
            .filter(|(h, _)| h == g)
            .map(|(_, e)| *e as i64)
            .sum()
    }

    /// Distinct generators in order of first appearance.
    pub fn generators(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (g, _) in &self.letters {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    /// Parses whitespace-separated letters `g`, `g^k`, `g^q`, `g^-q`.
    ///
    /// `macros` maps names to previously defined words (so `z^q` can expand a
    /// commutator); `q` is substituted for the symbolic exponent.
    pub fn parse(src: &str, q: Option<i32>, macros: &BTreeMap<String, GroupWord>) -> Result<GroupWord> {
        let mut w = GroupWord::identity();
        for tok in src.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                None => (tok, 1),
                Some((n, e)) => (n, parse_exponent(e, q)?),
            };
            let valid = !name.is_empty()
                && name.chars().next().is_some_and(|c| c.is_alphabetic())
                && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '~');
            if !valid {
                return Err(Error::Parse(format!("bad generator `{name}` in `{src}`")));
            }
            let base = macros.get(name).cloned().unwrap_or_else(|| GroupWord::generator(name));
            w = w.mul(&base.pow(exp));
        }
        Ok(w)
    }
}

fn parse_exponent(e: &str, q: Option<i32>) -> Result<i32> {
    let bad = || Error::Parse(format!("bad exponent `{e}`"));
    let (neg, body) = match e.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, e),
    };
    let v = if body == "q" {
        q.ok_or_else(|| Error::Parse("exponent `q` used but q is not set".into()))?
    } else {
        body.parse::<i32>().map_err(|_| bad())?
    };
    Ok(if neg { -v } else { v })
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

/// Image of `w` under the assignment.
///
/// Every generator of `w` must be assigned a matrix of determinant one;
/// inverses are adjugates. The empty word evaluates to the identity built
/// from any assigned matrix.
pub fn evaluate_word<T: Scalar>(w: &GroupWord, assignment: &Assignment<T>) -> Result<Mat2<T>> {
    let sample = match assignment.values().next() {
        Some(m) => m.sample().clone(),
        None => {
            return Err(match w.letters.first() {
                Some((g, _)) => Error::Unbound(g.clone()),
                None => Error::DegenerateInput("empty assignment".into()),
            })
        }
    };
    let mut inverses: BTreeMap<&str, Mat2<T>> = BTreeMap::new();
    for g in w.generators() {
        let m = assignment.get(&g).ok_or_else(|| Error::Unbound(g.clone()))?;
        if !m.det().is_unit_det() {
            return Err(Error::NotUnimodular(g.clone()));
        }
        inverses.insert(assignment.get_key_value(&g).unwrap().0, m.adjugate());
    }
    let mut out = Mat2::identity_like(&sample);
    for (g, e) in &w.letters {
        let m = if *e > 0 { &assignment[g] } else { &inverses[g.as_str()] };
        for _ in 0..e.unsigned_abs() {
            out = out.mul(m);
        }
    }
    Ok(out)
}
