use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::MultiPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

impl MultiPoly {
    /// Parses expressions such as `"3/2*s^2*t - s^-1 + 4"` over `vars`.
    ///
    /// Factors within a term are joined by `*` or juxtaposition; exponents are
    /// integers and may be negative.
    pub fn parse<S: AsRef<str>>(src: &str, vars: &[S]) -> Result<Self> {
        let toks = tokenize(src)?;
        let mut out = MultiPoly::zero(vars);
        let mut pos = 0;
        let mut first = true;
        while pos < toks.len() {
            let mut sign = BigRational::one();
            match toks[pos] {
                Tok::Plus => pos += 1,
                Tok::Minus => {
                    sign = -sign;
                    pos += 1
                }
                _ if first => {}
                _ => return Err(Error::Parse(format!("expected + or - at token {pos}"))),
            }
            first = false;
            let mut coef = sign;
            let mut exps = vec![0i32; out.nvars()];
            let mut nfactors = 0;
            while pos < toks.len() && !matches!(toks[pos], Tok::Plus | Tok::Minus) {
                match &toks[pos] {
                    Tok::Star => {
                        pos += 1;
                        continue;
                    }
                    Tok::Num(n) => {
                        let mut r = BigRational::from_integer(n.clone());
                        pos += 1;
                        if matches!(toks.get(pos), Some(Tok::Slash)) {
                            match toks.get(pos + 1) {
                                Some(Tok::Num(d)) if *d != BigInt::from(0) => {
                                    r /= BigRational::from_integer(d.clone());
                                    pos += 2;
                                }
                                _ => return Err(Error::Parse("bad denominator".into())),
                            }
                        }
                        coef *= r;
                    }
                    Tok::Ident(name) => {
                        let v = out.index_of(name)?;
                        pos += 1;
                        let mut k = 1i32;
                        if matches!(toks.get(pos), Some(Tok::Caret)) {
                            pos += 1;
                            let neg = matches!(toks.get(pos), Some(Tok::Minus));
                            if neg {
                                pos += 1;
                            }
                            match toks.get(pos) {
                                Some(Tok::Num(n)) => {
                                    k = i32::try_from(n.clone()).map_err(|_| Error::SizeOverflow)?;
                                    if neg {
                                        k = -k;
                                    }
                                    pos += 1;
                                }
                                _ => return Err(Error::Parse("expected exponent".into())),
                            }
                        }
                        exps[v] += k;
                    }
                    t => return Err(Error::Parse(format!("unexpected token {t:?}"))),
                }
                nfactors += 1;
            }
            if nfactors == 0 {
                return Err(Error::Parse("empty term".into()));
            }
            out.add_term(exps, coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_roundtrip() {
        let vars = ["s", "t"];
        for src in ["s^2*t - 3/2*s^-1 + 4", "-t", "0", "2*s*t^3 + s - 1"] {
            let p = MultiPoly::parse(src, &vars).unwrap();
            let q = MultiPoly::parse(&p.to_string(), &vars).unwrap();
            assert_eq!(p, q, "{src}");
        }
    }

    #[test]
    fn parse_rejects_unknown_var() {
        assert!(MultiPoly::parse("x + 1", &["s"]).is_err());
    }
}
