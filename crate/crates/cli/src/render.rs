//! Human-readable output.

use num_complex::Complex64;
use spliceknot::{MultiPoly, RtReport, SpliceCharacter};

fn t_power(k: i32) -> String {
    match k {
        1 => "t".into(),
        _ => format!("t^{k}"),
    }
}

/// Prints a polynomial in `[xi, t]` grouped by powers of `t`, e.g.
/// `t^2 - (xi^2-5) t - xi^2 + 5`. The `t`-free part is expanded.
pub fn in_t(p: &MultiPoly) -> String {
    let t = p.vars().len() - 1;
    let mut out = String::new();
    for (k, c) in p.coefficients_in(t).into_iter().rev() {
        // signed chunk without the joining operator
        let (neg, body) = if k == 0 {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        } else {
            let lead_neg = c.to_string().starts_with('-');
            let mag = if lead_neg { -&c } else { c.clone() };
            let coeff = if mag.is_one() {
                String::new()
            } else if mag.nterms() == 1 {
                format!("{mag} ")
            } else {
                format!("({}) ", mag.to_string().replace(' ', ""))
            };
            (lead_neg, coeff + &t_power(k))
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Imaginary parts below `1e-12` of the modulus are dropped as rounding noise.
pub fn complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-12 * z.norm() {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

pub fn characters_csv(chars: &[SpliceCharacter]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "index",
        "root_index",
        "orientation",
        "xi1_re",
        "xi1_im",
        "xi2_re",
        "xi2_im",
        "residual",
        "acyclic",
        "parabolic",
        "torsion_re",
        "torsion_im",
    ])
    .expect("in-memory write");
    for (i, c) in chars.iter().enumerate() {
        w.write_record([
            i.to_string(),
            c.root_index.to_string(),
            if c.mirror { "mirror" } else { "genuine" }.to_string(),
            crate::num(c.xi1.re),
            crate::num(c.xi1.im),
            crate::num(c.xi2.re),
            crate::num(c.xi2.im),
            crate::num(c.residual),
            c.acyclic_on_torus.to_string(),
            c.parabolic.to_string(),
            crate::num(c.torsion_product.re),
            crate::num(c.torsion_product.im),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn rt_pretty(r: &RtReport) -> String {
    let genuine = r.characters.iter().filter(|c| !c.mirror).count();
    let mut s = format!(
        "splice of J(2,{}) and J(2,{})\n  trace equation of degree {}\n  {} genuine and {} mirror characters, {} spurious roots\n",
        2 * r.q1,
        2 * r.q2,
        r.equation.degree(0),
        genuine,
        r.characters.len() - genuine,
        r.spurious.len()
    );
    s += &format!(
        "  A-polynomials {} ({})\n",
        if r.criterion.coprime { "coprime" } else { "not coprime" },
        r.criterion.route
    );
    s += &format!("RT set ({} values, convention {}):\n", r.rt_set.len(), r.convention);
    for v in &r.rt_provenance {
        s += &format!("  {}  [{} characters]\n", complex(v.value), v.characters.len());
    }
    s
}
