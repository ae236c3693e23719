//! Character varieties, A-polynomials and Reidemeister torsion for splices of
//! twist knots.
//!
//! The symbolic layer ([`polyring`], [`words`], [`twistknot`], [`apoly`]) is
//! exact over ℚ. Floating point enters only through root finding and the
//! numeric verification in [`splice`]. [`verify`] runs the acceptance suite.

pub mod apoly;
pub mod error;
pub mod polyring;
pub mod report;
pub mod splice;
pub mod twistknot;
pub mod verify;
pub mod words;

pub use apoly::{a_polynomial, coprimality_criterion, NewtonPolygon, Slope, SlopeSet};
pub use error::{Error, Result};
pub use polyring::{chebyshev, solve_roots, ComplexRoot, MultiPoly};
pub use report::Tolerances;
pub use splice::{rt_set, splice_equation, RtReport, SpliceCharacter};
pub use twistknot::TwistKnotModel;
