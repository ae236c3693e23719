//! `spliceknot`: every pipeline stage from the command line.
//!
//! Exit status is 0 on success, 1 when a certification step fails and 2 on
//! usage errors (bad flags, unknown knot parameter, malformed input).

mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use spliceknot::apoly::{a_polynomial, coprimality_criterion, NewtonPolygon, SlopeSet};
use spliceknot::polyring::{solve_roots_with, RootSolverConfig};
use spliceknot::splice::{bending_family, rt_set, splice_equation, Bending};
use spliceknot::verify::{criterion_ids, run_criterion, DEFAULT_SEED};
use spliceknot::{Error, MultiPoly, Tolerances, TwistKnotModel};

const SEED_ENV: &str = "SPLICE_TORSION_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "spliceknot",
    version,
    allow_negative_numbers = true,
    about = "Character varieties and torsion of twist-knot splices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    /// Seed for randomized steps; the SPLICE_TORSION_SEED environment variable takes precedence.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Relative tolerance for root certification.
    #[arg(long, default_value_t = 1e-9, global = true)]
    root_cert: f64,
    /// Distance below which torsion values are merged.
    #[arg(long, default_value_t = 1e-7, global = true)]
    dedup: f64,
    /// Relative singular value threshold for numeric ranks.
    #[arg(long, default_value_t = 1e-8, global = true)]
    rank: f64,
    /// Relative residual allowed in the matrix gluing equations.
    #[arg(long, default_value_t = 1e-8, global = true)]
    gluing: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riley polynomial of the twist knot J(2, 2q).
    Riley {
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
    },
    /// A-polynomial by elimination, with its Newton polygon.
    Apoly {
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
    },
    /// Newton polygon and slope set of a twist-knot A-polynomial or of a given polynomial in L, M.
    Newton {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "poly")]
        q: Option<i32>,
        /// Polynomial in L and M, e.g. "L^2*M^4 - L + 1".
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Coprimality criterion for a pair of A-polynomials.
    Criterion {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "input")]
        q1: Option<i32>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "input")]
        q2: Option<i32>,
        /// CSV of A-polynomials (columns name, vars, terms); every pair of rows is tested.
        #[arg(long, conflicts_with_all = ["q1", "q2"])]
        input: Option<PathBuf>,
    },
    /// Trace equation of the splice and its roots.
    SpliceEq {
        #[arg(long, allow_hyphen_values = true)]
        q1: i32,
        #[arg(long, allow_hyphen_values = true)]
        q2: i32,
    },
    /// Characters of the splice and the set of torsion values.
    Rt {
        #[arg(long, allow_hyphen_values = true)]
        q1: i32,
        #[arg(long, allow_hyphen_values = true)]
        q2: i32,
    },
    /// Bending deformation at a genuine character.
    Bend {
        #[arg(long, allow_hyphen_values = true)]
        q1: i32,
        #[arg(long, allow_hyphen_values = true)]
        q2: i32,
        /// Index into the genuine characters of the splice.
        #[arg(long, default_value_t = 0)]
        character: usize,
        /// Bending parameters as `re` or `re,im`; repeatable.
        #[arg(long = "a", allow_hyphen_values = true, value_parser = parse_complex)]
        a: Vec<Complex64>,
    },
    /// Run the acceptance suite and print a pass/fail matrix.
    Verify {
        /// Restrict to these criterion ids; repeatable.
        #[arg(long)]
        only: Vec<u32>,
    },
}

/// How a failed run ends.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Certification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SolverFailure { .. } | Error::InvalidTorusRep(_) | Error::Elimination(_) => {
                Failure::Certification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err("expected `re` or `re,im`".into()),
    };
    if z.norm() == 0.0 || !z.norm().is_finite() {
        return Err("bending parameter must be finite and nonzero".into());
    }
    Ok(z)
}

fn seed(common: &Common) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(common.seed),
    }
}

fn tolerances(common: &Common) -> Result<Tolerances, Failure> {
    let t = Tolerances {
        root_cert: common.root_cert,
        dedup: common.dedup,
        rank: common.rank,
        gluing: common.gluing,
    };
    t.validate()?;
    Ok(t)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Plain decimals in a readable range, scientific notation outside it.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e12).contains(&a) || !a.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn poly_csv(p: &MultiPoly) -> String {
    let mut header: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    header.push("coefficient");
    let rows = p.terms().map(|(e, c)| {
        let mut r: Vec<String> = e.iter().map(i32::to_string).collect();
        r.push(c.to_string());
        r
    });
    csv_table(&header, rows)
}

#[derive(Serialize)]
struct RileyReport<'a> {
    q: i32,
    riley: &'a MultiPoly,
    riley_xi: &'a MultiPoly,
    pretty: String,
}

fn riley(q: i32, out: Output) -> Outcome {
    let m = TwistKnotModel::new(q)?;
    let pretty = render::in_t(m.riley_xi());
    Ok(match out {
        Output::Json => json(&RileyReport {
            q,
            riley: m.riley(),
            riley_xi: m.riley_xi(),
            pretty,
        }),
        Output::Csv => poly_csv(m.riley_xi()),
        Output::Pretty => pretty + "\n",
    })
}

#[derive(Serialize)]
struct PolygonReport<'a> {
    polynomial: &'a MultiPoly,
    vertices: &'a [(i64, i64)],
    slopes: SlopeSet,
    inverted_slopes: SlopeSet,
}

fn polygon_report<'a>(p: &'a MultiPoly, n: &'a NewtonPolygon) -> PolygonReport<'a> {
    PolygonReport {
        polynomial: p,
        vertices: n.vertices(),
        slopes: n.slope_set(),
        inverted_slopes: n.slope_set().invert(),
    }
}

fn polygon_output(label: String, p: &MultiPoly, out: Output) -> Outcome {
    let n = NewtonPolygon::of(p)?;
    let r = polygon_report(p, &n);
    Ok(match out {
        Output::Json => json(&serde_json::json!({ "source": label, "newton": r })),
        Output::Csv => csv_table(
            &["i", "j"],
            n.vertices().iter().map(|(i, j)| vec![i.to_string(), j.to_string()]),
        ),
        Output::Pretty => format!(
            "{label}\n  {p}\n  vertices {:?}\n  slopes {}\n  inverted {}\n",
            n.vertices(),
            r.slopes,
            r.inverted_slopes
        ),
    })
}

fn apoly(q: i32, out: Output) -> Outcome {
    let a = a_polynomial(&TwistKnotModel::new(q)?)?;
    match out {
        Output::Csv => Ok(poly_csv(&a)),
        _ => polygon_output(format!("A-polynomial of J(2,{})", 2 * q), &a, out),
    }
}

fn newton(q: Option<i32>, poly: Option<String>, out: Output) -> Outcome {
    match (q, poly) {
        (Some(q), None) => {
            let a = a_polynomial(&TwistKnotModel::new(q)?)?;
            polygon_output(format!("A-polynomial of J(2,{})", 2 * q), &a, out)
        }
        (None, Some(src)) => {
            let p = MultiPoly::parse(&src, &["L", "M"])?;
            polygon_output(src, &p, out)
        }
        _ => Err(Failure::Usage("newton needs exactly one of --q or --poly".into())),
    }
}

#[derive(Serialize)]
struct PairReport {
    pair: [String; 2],
    route: &'static str,
    coprime: bool,
    slope_sets: [SlopeSet; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    gcd: Option<MultiPoly>,
}

fn criterion(q1: Option<i32>, q2: Option<i32>, path: Option<PathBuf>, out: Output) -> Outcome {
    let named: Vec<(String, MultiPoly)> = match (q1, q2, path) {
        (_, _, Some(path)) => input::read_apolys(&path)?,
        (Some(q1), Some(q2), None) => vec![
            (format!("J(2,{})", 2 * q1), a_polynomial(&TwistKnotModel::new(q1)?)?),
            (format!("J(2,{})", 2 * q2), a_polynomial(&TwistKnotModel::new(q2)?)?),
        ],
        _ => return Err(Failure::Usage("criterion needs --q1 and --q2, or --input".into())),
    };
    let pairs: Vec<(usize, usize)> = if q1.is_some() {
        vec![(0, 1)]
    } else {
        (0..named.len())
            .flat_map(|i| (i..named.len()).map(move |j| (i, j)))
            .collect()
    };
    let mut reports = Vec::new();
    for (i, j) in pairs {
        let r = coprimality_criterion(&named[i].1, &named[j].1)?;
        reports.push(PairReport {
            pair: [named[i].0.clone(), named[j].0.clone()],
            route: r.route,
            coprime: r.coprime,
            slope_sets: r.slope_sets,
            gcd: r.gcd.filter(|g| !g.is_constant()),
        });
    }
    Ok(match out {
        Output::Json if reports.len() == 1 => json(&reports[0]),
        Output::Json => json(&reports),
        Output::Csv => csv_table(
            &["knot1", "knot2", "route", "coprime", "slopes1", "slopes2_inverted"],
            reports.iter().map(|r| {
                vec![
                    r.pair[0].clone(),
                    r.pair[1].clone(),
                    r.route.to_string(),
                    r.coprime.to_string(),
                    r.slope_sets[0].to_string(),
                    r.slope_sets[1].to_string(),
                ]
            }),
        ),
        Output::Pretty => reports
            .iter()
            .map(|r| {
                format!(
                    "{} / {}: {} via {} (SS = {}, inverted SS = {})\n",
                    r.pair[0],
                    r.pair[1],
                    if r.coprime { "coprime" } else { "NOT coprime" },
                    r.route,
                    r.slope_sets[0],
                    r.slope_sets[1]
                )
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct SpliceEqReport {
    q1: i32,
    q2: i32,
    degree: i32,
    equation: MultiPoly,
    /// Descending, as exact rationals.
    coefficients: Vec<String>,
    roots: Vec<spliceknot::ComplexRoot>,
    tolerances: Tolerances,
}

fn splice_eq(q1: i32, q2: i32, tol: &Tolerances, seed: u64, out: Output) -> Outcome {
    let sys = splice_equation(q1, q2)?;
    let cfg = RootSolverConfig {
        cert_tol: tol.root_cert,
        seed,
        ..RootSolverConfig::default()
    };
    let roots = solve_roots_with(&sys.xi_equation, &cfg)?;
    let coeffs = sys.xi_equation.univariate_coeffs(0)?;
    let r = SpliceEqReport {
        q1,
        q2,
        degree: sys.xi_equation.degree(0),
        coefficients: coeffs.iter().rev().map(|c| c.to_string()).collect(),
        equation: sys.xi_equation.clone(),
        roots,
        tolerances: tol.clone(),
    };
    Ok(match out {
        Output::Json => json(&r),
        Output::Csv => csv_table(
            &["re", "im", "residual", "error_bound", "multiplicity"],
            r.roots.iter().map(|z| {
                vec![
                    num(z.value.re),
                    num(z.value.im),
                    num(z.residual),
                    num(z.error_bound),
                    z.multiplicity_hint.to_string(),
                ]
            }),
        ),
        Output::Pretty => {
            let mut s = format!("degree {} equation\n  {} = 0\nroots:\n", r.degree, r.equation);
            for z in &r.roots {
                s += &format!("  {}\n", render::complex(z.value));
            }
            s
        }
    })
}

fn rt(q1: i32, q2: i32, tol: &Tolerances, seed: u64, out: Output) -> Outcome {
    let r = rt_set(q1, q2, tol, seed)?;
    Ok(match out {
        Output::Json => json(&r),
        Output::Csv => render::characters_csv(&r.characters),
        Output::Pretty => render::rt_pretty(&r),
    })
}

#[derive(Serialize)]
struct BendReport {
    q1: i32,
    q2: i32,
    character: spliceknot::SpliceCharacter,
    family: Vec<Bending>,
}

fn bend(q1: i32, q2: i32, index: usize, a: Vec<Complex64>, tol: &Tolerances, seed: u64, out: Output) -> Outcome {
    let r = rt_set(q1, q2, tol, seed)?;
    let genuine: Vec<_> = r.characters.into_iter().filter(|c| !c.mirror).collect();
    let n = genuine.len();
    let c = genuine
        .into_iter()
        .nth(index)
        .ok_or_else(|| Failure::Usage(format!("character index {index} out of range ({n} genuine characters)")))?;
    let a = if a.is_empty() {
        vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 1.0),
        ]
    } else {
        a
    };
    let family = a
        .iter()
        .map(|&a| bending_family(c.s1, c.s2, c.t1, c.c_squared, a))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = BendReport {
        q1,
        q2,
        character: c,
        family,
    };
    Ok(match out {
        Output::Json => json(&rep),
        Output::Csv => csv_table(
            &[
                "a_re",
                "a_im",
                "trace_re",
                "trace_im",
                "closed_form_re",
                "closed_form_im",
                "commutes_x1",
                "commutes_l1",
            ],
            rep.family.iter().map(|b| {
                vec![
                    num(b.a.re),
                    num(b.a.im),
                    num(b.trace.re),
                    num(b.trace.im),
                    num(b.closed_form.re),
                    num(b.closed_form.im),
                    num(b.commutes_x1),
                    num(b.commutes_l1),
                ]
            }),
        ),
        Output::Pretty => {
            let mut s = format!("character xi1 = {}\n", render::complex(rep.character.xi1));
            for b in &rep.family {
                s += &format!(
                    "  a = {}: tr(A Y1 A^-1 X2) = {} (closed form {})\n",
                    render::complex(b.a),
                    render::complex(b.trace),
                    render::complex(b.closed_form)
                );
            }
            s
        }
    })
}

/// Returns the report and whether every selected criterion passed.
fn verify(only: Vec<u32>, seed: u64, out: Output) -> Result<(String, bool), Failure> {
    let ids = if only.is_empty() { criterion_ids() } else { only };
    let mut results = Vec::new();
    for id in ids {
        results.push(run_criterion(id, seed).ok_or_else(|| Failure::Usage(format!("no criterion {id}")))?);
    }
    let ok = results.iter().all(|r| r.pass);
    let text = match out {
        Output::Json => json(&serde_json::json!({ "seed": seed, "all_pass": ok, "criteria": results })),
        Output::Csv => csv_table(
            &["id", "name", "pass", "elapsed_ms", "budget_ms", "detail"],
            results.iter().map(|r| {
                vec![
                    r.id.to_string(),
                    r.name.to_string(),
                    r.pass.to_string(),
                    format!("{:.1}", r.elapsed_ms),
                    format!("{:.0}", r.budget_ms),
                    r.detail.clone(),
                ]
            }),
        ),
        Output::Pretty => {
            let passed = results.iter().filter(|r| r.pass).count();
            let mut s: String = results.iter().map(|r| format!("{r}\n")).collect();
            s += &format!("{passed}/{} criteria pass\n", results.len());
            s
        }
    };
    Ok((text, ok))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let out = cli.common.output;
    let tol = tolerances(&cli.common)?;
    let seed = seed(&cli.common)?;
    let done = |s: String| (s, true);
    match cli.command {
        Command::Riley { q } => riley(q, out).map(done),
        Command::Apoly { q } => apoly(q, out).map(done),
        Command::Newton { q, poly } => newton(q, poly, out).map(done),
        Command::Criterion { q1, q2, input } => criterion(q1, q2, input, out).map(done),
        Command::SpliceEq { q1, q2 } => splice_eq(q1, q2, &tol, seed, out).map(done),
        Command::Rt { q1, q2 } => rt(q1, q2, &tol, seed, out).map(done),
        Command::Bend { q1, q2, character, a } => bend(q1, q2, character, a, &tol, seed, out).map(done),
        Command::Verify { only } => verify(only, seed, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Certification(msg)) => {
            eprintln!("certification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
