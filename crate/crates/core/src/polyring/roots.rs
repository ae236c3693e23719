//! Certified complex roots of rational univariate polynomials.
//!
//! Roots are located with Aberth's simultaneous iteration in `f64`, then the
//! iteration is continued with `p(z)/p'(z)` evaluated exactly at the (dyadic)
//! floating point iterates, so cancellation among large coefficients cannot
//! stall it. Each root is certified by a Weierstrass inclusion disk: when the
//! disks are pairwise disjoint each one holds exactly one root. Multiplicities
//! come from an exact square-free decomposition, so the numeric stage only
//! ever sees simple roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gcd::gcd_poly;
use super::MultiPoly;
use crate::error::{Error, Result};

/// A certified root. `residual` is `|p(value)| / Σ|a_k||value|^k`, the
/// backward error relative to the coefficient scale; `error_bound` is the
/// radius of a disk around `value` proven to contain exactly one root of the
/// square-free factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexRoot {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub value: Complex64,
    pub residual: f64,
    pub error_bound: f64,
    pub multiplicity_hint: u32,
}

#[derive(Clone, Debug)]
pub struct RootSolverConfig {
    pub max_iterations: usize,
    pub cert_tol: f64,
    pub merge_dist: f64,
    pub seed: u64,
    pub max_restarts: usize,
}

impl Default for RootSolverConfig {
    fn default() -> Self {
        RootSolverConfig {
            max_iterations: 10_000,
            cert_tol: 1e-9,
            merge_dist: 1e-8,
            seed: 0x5eed,
            max_restarts: 8,
        }
    }
}

/// All complex roots of a univariate polynomial with default settings.
pub fn solve_roots(p: &MultiPoly) -> Result<Vec<ComplexRoot>> {
    solve_roots_with(p, &RootSolverConfig::default())
}

pub fn solve_roots_with(p: &MultiPoly, cfg: &RootSolverConfig) -> Result<Vec<ComplexRoot>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("zero polynomial has no finite root set".into()));
    }
    let p = p.clear_laurent();
    let var = (0..p.nvars())
        .find(|&i| p.degree(i) > 0)
        .ok_or_else(|| Error::DegenerateInput("constant polynomial".into()))?;
    // Validates that no other variable occurs.
    p.univariate_coeffs(var)?;

    let zero_mult = p.min_degree(var);
    let p = p.shift(&{
        let mut s = vec![0; p.nvars()];
        s[var] = -zero_mult;
        s
    });

    let mut roots: Vec<ComplexRoot> = Vec::new();
    if zero_mult > 0 {
        roots.push(ComplexRoot {
            value: Complex64::new(0.0, 0.0),
            residual: 0.0,
            error_bound: 0.0,
            multiplicity_hint: zero_mult as u32,
        });
    }
    for (factor, mult) in squarefree_decomposition(&p, var) {
        let coeffs = factor.univariate_coeffs(var)?;
        let ints = integer_coeffs(&coeffs);
        for (value, residual, error_bound) in simple_roots(&ints, cfg)? {
            roots.push(ComplexRoot {
                value,
                residual,
                error_bound,
                multiplicity_hint: mult,
            });
        }
    }
    let mut merged = merge_clusters(roots, cfg.merge_dist);
    merged.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(merged)
}

/// Yun's algorithm over ℚ: returns `(f_i, i)` with `p = c Π f_i^i`, each `f_i`
/// square-free and of positive degree.
fn squarefree_decomposition(p: &MultiPoly, var: usize) -> Vec<(MultiPoly, u32)> {
    let monic = |f: &MultiPoly| -> MultiPoly {
        let lc = f.leading_coefficient_in(var).constant_term();
        f.scale(&lc.recip())
    };
    let a = monic(p);
    let b = a.derivative(var);
    let c = monic(&gcd_poly(&a, &b));
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut y = b.div_exact(&c).expect("gcd divides");
    let mut z = &y - &w.derivative(var);
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree(var) > 0 {
        let g = if z.is_zero() {
            w.clone()
        } else {
            monic(&gcd_poly(&w, &z))
        };
        if g.degree(var) > 0 {
            out.push((g.primitive(), i));
        }
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = &y - &w.derivative(var);
        i += 1;
    }
    out
}

fn integer_coeffs(c: &[BigRational]) -> Vec<BigInt> {
    let l = c
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    c.iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect()
}

/// `(root, backward residual, inclusion radius)`.
type Located = (Complex64, f64, f64);

/// Roots of a square-free integer polynomial (ascending coefficients).
fn simple_roots(coeffs: &[BigInt], cfg: &RootSolverConfig) -> Result<Vec<Located>> {
    let exact = ExactPoly::new(coeffs.to_vec());
    if coeffs.len() == 2 {
        let r = -BigRational::new(coeffs[0].clone(), coeffs[1].clone());
        let z = Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0);
        let bound = r - BigRational::from_float(z.re).unwrap_or_else(BigRational::zero);
        let bound = if bound < BigRational::zero() { -bound } else { bound };
        return Ok(vec![(
            z,
            exact.relative_residual(z),
            bound.to_f64().unwrap_or(f64::INFINITY),
        )]);
    }
    let mut best: Option<(Vec<Located>, f64)> = None;
    for attempt in 0..=cfg.max_restarts {
        let seed = cfg.seed.wrapping_add(attempt as u64 * 0x9e37_79b9);
        let approx = aberth(&exact.fc, cfg.max_iterations, seed);
        let z = exact.refine(approx, 400);
        let radii = exact.inclusion_radii(&z);
        let z = snap_real(z, &radii);
        let roots: Vec<Located> = z
            .iter()
            .zip(&radii)
            .map(|(&z, &r)| (z, exact.relative_residual(z), r))
            .collect();
        // worst of backward residual and relative forward bound
        let worst = roots
            .iter()
            .map(|r| r.1.max(r.2 / r.0.norm().max(1.0)))
            .fold(0.0, f64::max);
        let isolated = disjoint(&roots);
        let separated = min_separation(&roots) > cfg.merge_dist;
        if worst <= cfg.cert_tol && isolated && separated {
            return Ok(roots);
        }
        let score = if isolated { worst } else { f64::INFINITY };
        let better = best.as_ref().map(|(_, w)| score < *w).unwrap_or(true);
        if better {
            best = Some((roots, score));
        }
    }
    let (roots, worst) = best.expect("at least one attempt");
    if worst <= cfg.cert_tol {
        // Certified but clustered below the merge distance; merged by the caller.
        return Ok(roots);
    }
    Err(Error::SolverFailure {
        worst_residual: worst,
        residuals: roots.iter().map(|r| r.1.max(r.2)).collect(),
    })
}

/// Real coefficients: when the conjugate of disk `i` meets no other disk, the
/// conjugate of its root is the root itself, so a disk touching the real axis
/// holds a real root.
fn snap_real(mut z: Vec<Complex64>, radii: &[f64]) -> Vec<Complex64> {
    for i in 0..z.len() {
        if z[i].im == 0.0 || z[i].im.abs() > radii[i] {
            continue;
        }
        let c = z[i].conj();
        let alone = (0..z.len()).all(|j| j == i || (c - z[j]).norm() > radii[i] + radii[j]);
        if alone {
            z[i].im = 0.0;
        }
    }
    z
}

fn disjoint(roots: &[(Complex64, f64, f64)]) -> bool {
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i].0 - roots[j].0).norm() <= roots[i].2 + roots[j].2 {
                return false;
            }
        }
    }
    true
}

fn min_separation(roots: &[(Complex64, f64, f64)]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            m = m.min((roots[i].0 - roots[j].0).norm());
        }
    }
    m
}

fn merge_clusters(roots: Vec<ComplexRoot>, dist: f64) -> Vec<ComplexRoot> {
    let mut out: Vec<ComplexRoot> = Vec::new();
    for r in roots {
        match out.iter_mut().find(|o| (o.value - r.value).norm() <= dist) {
            Some(o) => {
                o.multiplicity_hint += r.multiplicity_hint;
                o.residual = o.residual.max(r.residual);
                o.error_bound = o.error_bound.max(r.error_bound + (o.value - r.value).norm());
            }
            None => out.push(r),
        }
    }
    out
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn abs_scale(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// Aberth–Ehrlich iteration from a randomly perturbed circle.
fn aberth(c: &[Complex64], max_iter: usize, seed: u64) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let center = -c[n - 1] / (lead * n as f64);
    let radius = (0..n)
        .map(|k| (c[k] / lead).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let jitter: f64 = rng.random_range(-0.25..0.25);
            let rj: f64 = rng.random_range(0.9..1.1);
            let th = offset + (k as f64 + jitter) * std::f64::consts::TAU / n as f64;
            center + Complex64::from_polar(radius * rj, th)
        })
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            if p.norm() <= 4.0 * n as f64 * eps * abs_scale(c, z[i].norm()) {
                done[i] = true;
                continue;
            }
            all = false;
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += bump;
                continue;
            }
            z[i] -= w;
            if w.norm() <= 2.0 * eps * z[i].norm() {
                done[i] = true;
            }
        }
        if all {
            break;
        }
    }
    z
}

/// Integer polynomial evaluated exactly at dyadic complex points.
struct ExactPoly {
    c: Vec<BigInt>,
    dc: Vec<BigInt>,
    fc: Vec<Complex64>,
}

/// `(re, im, g)` with `z = (re + i·im) / 2^g`.
fn dyadic(z: Complex64) -> (BigInt, BigInt, u32) {
    fn parts(x: f64) -> (BigInt, i32) {
        if x == 0.0 {
            return (BigInt::zero(), 0);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1 } else { -1 };
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let mant = if exp == 0 {
            (bits & 0xf_ffff_ffff_ffff) << 1
        } else {
            (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
        };
        (BigInt::from(sign) * BigInt::from(mant), exp - 1075)
    }
    let (mr, er) = parts(z.re);
    let (mi, ei) = parts(z.im);
    let e0 = er.min(ei).min(0);
    let re = mr << ((er - e0) as usize);
    let im = mi << ((ei - e0) as usize);
    (re, im, (-e0) as u32)
}

fn ratio_f64(n: &BigInt, d: &BigInt) -> f64 {
    Ratio::new_raw(n.clone(), d.clone()).to_f64().unwrap_or(f64::NAN)
}

impl ExactPoly {
    fn new(c: Vec<BigInt>) -> Self {
        let dc = c.iter().enumerate().skip(1).map(|(k, a)| a * BigInt::from(k)).collect();
        let fc = c
            .iter()
            .map(|a| Complex64::new(a.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        ExactPoly { c, dc, fc }
    }

    /// `p(z)·2^(g·deg)` as an exact Gaussian integer, with `g` from [`dyadic`].
    fn eval_scaled(coeffs: &[BigInt], re: &BigInt, im: &BigInt, g: u32) -> (BigInt, BigInt) {
        let n = coeffs.len() - 1;
        let mut ar = coeffs[n].clone();
        let mut ai = BigInt::zero();
        for (k, a) in coeffs.iter().enumerate().take(n).rev() {
            let nr = &ar * re - &ai * im;
            let ni = &ar * im + &ai * re;
            ar = nr + (a << ((g as usize) * (n - k)));
            ai = ni;
        }
        (ar, ai)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let (re, im, g) = dyadic(z);
        let (pr, pi) = Self::eval_scaled(&self.c, &re, &im, g);
        let den = BigInt::one() << ((g as usize) * (self.c.len() - 1));
        Complex64::new(ratio_f64(&pr, &den), ratio_f64(&pi, &den))
    }

    fn newton_step(&self, z: Complex64) -> Option<Complex64> {
        let (re, im, g) = dyadic(z);
        let (pr, pi) = Self::eval_scaled(&self.c, &re, &im, g);
        let (qr, qi) = Self::eval_scaled(&self.dc, &re, &im, g);
        // p/p' = (P / 2^(gn)) / (Q / 2^(g(n−1))) = P·conj(Q) / (|Q|² 2^g)
        let den: BigInt = (&qr * &qr + &qi * &qi) << (g as usize);
        if den.is_zero() {
            return None;
        }
        let nr = &pr * &qr + &pi * &qi;
        let ni = &pi * &qr - &pr * &qi;
        Some(Complex64::new(ratio_f64(&nr, &den), ratio_f64(&ni, &den)))
    }

    /// Aberth iteration driven by exact Newton ratios, Gauss-Seidel order.
    fn refine(&self, mut z: Vec<Complex64>, max_iter: usize) -> Vec<Complex64> {
        let n = z.len();
        let mut done = vec![false; n];
        for _ in 0..max_iter {
            let mut all = true;
            for i in 0..n {
                if done[i] {
                    continue;
                }
                let Some(ratio) = self.newton_step(z[i]) else {
                    done[i] = true;
                    continue;
                };
                all = false;
                let sum: Complex64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                    .sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
                if !w.re.is_finite() || !w.im.is_finite() {
                    let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                    z[i] += bump;
                    continue;
                }
                z[i] -= w;
                if w.norm() <= 2.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                    done[i] = true;
                }
            }
            if all {
                break;
            }
        }
        z
    }

    /// Weierstrass radii `n·|p(zᵢ) / (a_n Π_{j≠i}(zᵢ − zⱼ))|`. The union of
    /// the disks contains every root, and a component made of `m` disks
    /// contains exactly `m` of them.
    fn inclusion_radii(&self, z: &[Complex64]) -> Vec<f64> {
        let n = z.len();
        let lead = self.fc[n];
        z.iter()
            .enumerate()
            .map(|(i, &zi)| {
                let mut w = self.eval(zi) / lead;
                for (j, &zj) in z.iter().enumerate() {
                    if j != i {
                        w /= zi - zj;
                    }
                }
                let r = n as f64 * w.norm();
                // rounding in the float product, plus one ulp of the center
                r * (1.0 + 4.0 * n as f64 * f64::EPSILON) + 2.0 * f64::EPSILON * zi.norm()
            })
            .map(|r| if r.is_finite() { r } else { f64::INFINITY })
            .collect()
    }

    fn relative_residual(&self, z: Complex64) -> f64 {
        let v = self.eval(z).norm();
        let scale = abs_scale(&self.fc, z.norm());
        if scale == 0.0 {
            v
        } else {
            v / scale
        }
    }
}

/// Roots of a polynomial with complex floating point coefficients (ascending
/// order). Exact trailing zeros of the leading coefficient are dropped; zero
/// constant terms produce exact zero roots. Used for the `t`-branches over a
/// numeric `s`.
pub fn numeric_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().map(|x| x.norm() == 0.0).unwrap_or(false) {
        c.pop();
    }
    let mut out = Vec::new();
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        out.push(Complex64::new(0.0, 0.0));
    }
    let n = c.len() - 1;
    match n {
        0 => {}
        1 => out.push(-c[0] / c[1]),
        _ => {
            for mut z in aberth(&c, 10_000, 0x7b) {
                for _ in 0..4 {
                    let (p, dp) = horner(&c, z);
                    if dp.norm() == 0.0 {
                        break;
                    }
                    let d = p / dp;
                    if !d.re.is_finite() {
                        break;
                    }
                    z -= d;
                }
                out.push(z);
            }
        }
    }
    out
}

/// Relative residual of a floating point polynomial (ascending) at `z`.
pub fn numeric_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let s = abs_scale(coeffs, z.norm());
    if s == 0.0 {
        p.norm()
    } else {
        p.norm() / s
    }
}
