//! Shared serialization helpers and the tolerance block embedded in reports.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Tag identifying the torsion normalization used by every report.
pub const TORSION_CONVENTION: &str = "wada-fox-dy-over-x-minus-1";

/// Complex numbers are written as `[re, im]`.
pub fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

pub fn complex_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub root_cert: f64,
    pub dedup: f64,
    pub rank: f64,
    pub gluing: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_cert: 1e-9,
            dedup: 1e-7,
            rank: 1e-8,
            gluing: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> crate::Result<()> {
        for (name, v) in [
            ("root_cert", self.root_cert),
            ("dedup", self.dedup),
            ("rank", self.rank),
            ("gluing", self.gluing),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(crate::Error::DegenerateInput(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
