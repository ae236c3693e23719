//! `{"vars": [...], "terms": [[[e1, e2, ...], "num/den"], ...]}`
//!
//! Terms are written in ascending lexicographic order of exponent vectors and
//! coefficients always carry an explicit denominator. Bare integers are
//! accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Exponents, MultiPoly};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<(Exponents, String)>,
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars().to_vec(),
            terms: self.terms().map(|(e, c)| (e.clone(), format_rational(c))).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|(e, c)| parse_rational(&c).map(|c| (e, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        MultiPoly::from_terms(&raw.vars, terms).map_err(D::Error::custom)
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
