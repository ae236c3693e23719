//! Lattice Newton polygons, side slopes and Minkowski sums.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::MultiPoly;

pub type Point = (i64, i64);

/// Convex hull of a lattice point set, vertices counterclockwise starting at
/// the lexicographically smallest one, with no collinear vertices retained.
/// A single point or a segment is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NewtonPolygon {
    vertices: Vec<Point>,
}

/// Slope `Δj/Δi` of a side, where `i` is the exponent of the first variable
/// and `j` of the second. Vertical sides have slope ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Ratio<i64>),
    Infinite,
}

impl Slope {
    pub fn of(di: i64, dj: i64) -> Slope {
        if di == 0 {
            Slope::Infinite
        } else {
            Slope::Finite(Ratio::new(dj, di))
        }
    }

    /// `s⁻¹` with `0⁻¹ = ∞` and `∞⁻¹ = 0`.
    pub fn invert(self) -> Slope {
        match self {
            Slope::Infinite => Slope::Finite(Ratio::from_integer(0)),
            Slope::Finite(r) if r == Ratio::from_integer(0) => Slope::Infinite,
            Slope::Finite(r) => Slope::Finite(r.recip()),
        }
    }

    pub fn is_even_integer(self) -> bool {
        matches!(self, Slope::Finite(r) if r.is_integer() && r.to_integer() % 2 == 0)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Infinite => write!(f, "inf"),
            Slope::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Slope::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SlopeSet(pub BTreeSet<Slope>);

impl SlopeSet {
    pub fn invert(&self) -> SlopeSet {
        SlopeSet(self.0.iter().map(|s| s.invert()).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_disjoint(&self, o: &SlopeSet) -> bool {
        self.0.is_disjoint(&o.0)
    }

    pub fn union(&self, o: &SlopeSet) -> SlopeSet {
        SlopeSet(self.0.union(&o.0).copied().collect())
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.0.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = Slope> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

impl NewtonPolygon {
    /// Convex hull by Andrew's monotone chain.
    pub fn hull(points: impl IntoIterator<Item = Point>) -> Result<NewtonPolygon> {
        let pts: Vec<Point> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.is_empty() {
            return Err(Error::DegenerateInput("empty support".into()));
        }
        if pts.len() <= 2 {
            return Ok(NewtonPolygon { vertices: pts });
        }
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Ok(NewtonPolygon { vertices: lower })
    }

    /// `N(f)`, the hull of the support of a polynomial in two variables.
    pub fn of(f: &MultiPoly) -> Result<NewtonPolygon> {
        if f.nvars() != 2 {
            return Err(Error::DegenerateInput(format!(
                "Newton polygons need two variables, got {:?}",
                f.vars()
            )));
        }
        if f.is_zero() {
            return Err(Error::DegenerateInput("zero polynomial has no Newton polygon".into()));
        }
        Self::hull(f.terms().map(|(e, _)| (e[0] as i64, e[1] as i64)))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Sides as vertex pairs; a segment has one side.
    pub fn sides(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        match n {
            1 => vec![],
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n).map(|k| (self.vertices[k], self.vertices[(k + 1) % n])).collect(),
        }
    }

    pub fn slope_set(&self) -> SlopeSet {
        SlopeSet(
            self.sides()
                .into_iter()
                .map(|(a, b)| Slope::of(b.0 - a.0, b.1 - a.1))
                .collect(),
        )
    }

    pub fn minkowski_sum(&self, o: &NewtonPolygon) -> NewtonPolygon {
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| o.vertices.iter().map(move |b| (a.0 + b.0, a.1 + b.1)));
        Self::hull(sums).expect("nonempty")
    }
}

pub fn newton_polygon(f: &MultiPoly) -> Result<NewtonPolygon> {
    NewtonPolygon::of(f)
}

pub fn minkowski_sum(p: &NewtonPolygon, q: &NewtonPolygon) -> NewtonPolygon {
    p.minkowski_sum(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lm(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["L", "M"]).unwrap()
    }

    fn sl(n: i64, d: i64) -> Slope {
        Slope::Finite(Ratio::new(n, d))
    }

    #[test]
    fn segment() {
        let p = NewtonPolygon::of(&lm("L*M^6 + 1")).unwrap();
        assert_eq!(p.vertices(), &[(0, 0), (1, 6)]);
        assert_eq!(p.slope_set(), SlopeSet([sl(6, 1)].into()));
        assert_eq!(p.slope_set().invert(), SlopeSet([sl(1, 6)].into()));
    }

    #[test]
    fn point_has_no_slopes() {
        let p = NewtonPolygon::of(&lm("3*L^2*M")).unwrap();
        assert!(p.is_point());
        assert!(p.slope_set().is_empty());
        assert!(NewtonPolygon::of(&MultiPoly::zero(&["L", "M"])).is_err());
    }

    #[test]
    fn four_point_case() {
        let f = &lm("L - 1") * &lm("L*M^6 + 1");
        let p = NewtonPolygon::of(&f).unwrap();
        assert_eq!(p.vertices(), &[(0, 0), (1, 0), (2, 6), (1, 6)]);
        assert_eq!(p.slope_set(), SlopeSet([sl(0, 1), sl(6, 1)].into()));
    }

    #[test]
    fn collinear_points_dropped() {
        let p = NewtonPolygon::hull([(0, 0), (1, 1), (2, 2), (0, 2)]).unwrap();
        assert_eq!(p.vertices(), &[(0, 0), (2, 2), (0, 2)]);
        let seg = NewtonPolygon::hull([(0, 0), (1, 0), (3, 0)]).unwrap();
        assert_eq!(seg.vertices(), &[(0, 0), (3, 0)]);
    }

    #[test]
    fn inversion_convention() {
        assert_eq!(sl(0, 1).invert(), Slope::Infinite);
        assert_eq!(Slope::Infinite.invert(), sl(0, 1));
        assert_eq!(sl(-4, 1).invert(), sl(-1, 4));
    }

    #[test]
    fn point_is_identity() {
        let p = NewtonPolygon::hull([(0, 0), (3, 1), (1, 4)]).unwrap();
        let o = NewtonPolygon::hull([(0, 0)]).unwrap();
        assert_eq!(p.minkowski_sum(&o), p);
    }

    pub(crate) fn polygon_strategy() -> impl Strategy<Value = NewtonPolygon> {
        proptest::collection::vec((-5i64..6, -5i64..6), 1..8).prop_map(|v| NewtonPolygon::hull(v).unwrap())
    }

    proptest! {
        #[test]
        fn slopes_of_sum_are_union(p in polygon_strategy(), q in polygon_strategy()) {
            prop_assert_eq!(p.minkowski_sum(&q).slope_set(), p.slope_set().union(&q.slope_set()));
        }

        #[test]
        fn sum_commutative_associative(p in polygon_strategy(), q in polygon_strategy(), r in polygon_strategy()) {
            prop_assert_eq!(p.minkowski_sum(&q), q.minkowski_sum(&p));
            prop_assert_eq!(p.minkowski_sum(&q).minkowski_sum(&r), p.minkowski_sum(&q.minkowski_sum(&r)));
        }

        #[test]
        fn hull_is_idempotent(p in polygon_strategy()) {
            prop_assert_eq!(NewtonPolygon::hull(p.vertices().iter().copied()).unwrap(), p);
        }
    }
}
