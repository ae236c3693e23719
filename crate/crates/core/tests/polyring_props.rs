use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use spliceknot::polyring::{chebyshev, gcd, resultant, solve_roots, MultiPoly};

const XY: [&str; 2] = ["x", "y"];

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly(terms: &[((i32, i32), i64)]) -> MultiPoly {
    MultiPoly::from_terms(&XY, terms.iter().map(|&((a, b), c)| (vec![a, b], q(c)))).unwrap()
}

fn xy_poly(max_deg: i32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(((0..=max_deg, 0..=max_deg), -5i64..6), 1..=max_terms)
        .prop_map(|t| poly(&t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Nonconstant in `x`.
fn x_poly() -> impl Strategy<Value = MultiPoly> {
    xy_poly(2, 4).prop_filter("has x", |p| p.degree(0) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form(terms in proptest::collection::vec(((0i32..4, 0i32..4), -5i64..6), 0..10)) {
        let p = poly(&terms);
        // doubling every term merges coefficients and drops cancelled ones
        let doubled: Vec<_> = terms.iter().chain(terms.iter()).copied().collect();
        prop_assert_eq!(poly(&doubled), &p + &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert!(p.terms().all(|(_, c)| *c != q(0)));
        let back = MultiPoly::parse(&p.to_string(), &XY).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(f in xy_poly(2, 3), g in xy_poly(2, 3), h in x_poly()) {
        let a = &f * &h;
        let b = &g * &h;
        let d = gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&d).is_some());
        prop_assert!(b.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&h).is_some(), "gcd {} misses {}", d, h);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in x_poly(), g in x_poly(), h in x_poly()) {
        let common = resultant(&(&f * &h), &(&g * &h), "x").unwrap();
        prop_assert!(common.is_zero());
        let r = resultant(&f, &g, "x").unwrap();
        // gcd works up to Laurent units, so a shared power of x is checked apart
        let shares = gcd(&f, &g).unwrap().degree(0) > 0 || (f.min_degree(0) > 0 && g.min_degree(0) > 0);
        prop_assert_eq!(r.is_zero(), shares);
    }

    #[test]
    fn chebyshev_is_cosine_of_multiple(n in 0u32..=40, theta in 0.0f64..std::f64::consts::PI) {
        // exact evaluation at a rational point, so the check does not depend on
        // cancellation among the large coefficients
        let xr = BigRational::from_float(2.0 * theta.cos()).unwrap();
        let x = xr.to_f64().unwrap();
        let c = MultiPoly::constant(&["x"], xr);
        let v = chebyshev(n).substitute("x", &c).unwrap().constant_term().to_f64().unwrap();
        let expected = 2.0 * (n as f64 * (x / 2.0).clamp(-1.0, 1.0).acos()).cos();
        prop_assert!((v - expected).abs() < 1e-8, "T_{}({}) = {} vs {}", n, x, v, expected);
    }

    #[test]
    fn multiplicities_sum_to_degree(
        factors in proptest::collection::vec((-3i64..4, 1i64..3, 1u32..4), 1..4),
        quad in proptest::option::of((1i64..4, 1u32..3)),
    ) {
        let mut p = MultiPoly::one(&["x"]);
        for (r, d, m) in factors {
            p = &p * &MultiPoly::from_univariate_ints("x", &[-r, d]).pow(m);
        }
        if let Some((c, m)) = quad {
            p = &p * &MultiPoly::from_univariate_ints("x", &[c, 1, 1]).pow(m);
        }
        let roots = solve_roots(&p).unwrap();
        let total: u32 = roots.iter().map(|r| r.multiplicity_hint).sum();
        prop_assert_eq!(total as i32, p.degree(0));
        prop_assert!(roots.iter().all(|r| r.residual <= 1e-9));
    }

    #[test]
    fn trace_round_trip(coeffs in proptest::collection::vec(((0i32..6, 0i32..3), -4i64..5), 1..6)) {
        let vars = ["s", "t"];
        let mut sym = MultiPoly::zero(&vars);
        for ((k, j), c) in coeffs {
            let term = MultiPoly::from_terms(&vars, [(vec![k, j], q(c)), (vec![-k, j], q(c))]).unwrap();
            sym = &sym + &term;
        }
        let xi = sym.to_trace_coordinate("s", "xi").unwrap();
        prop_assert!(!xi.has_negative_exponents());
        prop_assert_eq!(xi.from_trace_coordinate("xi", "s").unwrap(), sym);
    }
}

#[test]
fn asymmetric_input_rejected() {
    let p = MultiPoly::parse("s^2 + s^-1", &["s"]).unwrap();
    assert!(p.to_trace_coordinate("s", "xi").is_err());
}
