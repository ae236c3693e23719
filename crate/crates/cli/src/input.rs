//! A-polynomials read from CSV.
//!
//! Columns `name,vars,terms`. `vars` is a JSON list (`["L","M"]`) or names
//! separated by `;`, `,` or spaces. `terms` uses the polynomial JSON term
//! layout, `[[[i,j],"c"],...]`. Variables are renamed to `L`, `M` in order.

use std::path::Path;

use serde::Deserialize;
use spliceknot::MultiPoly;

use crate::Failure;

#[derive(Deserialize)]
struct Row {
    name: String,
    vars: String,
    terms: String,
}

fn parse_vars(src: &str) -> Vec<String> {
    if let Ok(v) = serde_json::from_str::<Vec<String>>(src) {
        return v;
    }
    src.split([';', ',', ' '])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn row_poly(row: &Row) -> Result<MultiPoly, String> {
    let vars = parse_vars(&row.vars);
    if vars.len() != 2 {
        return Err(format!("expected two variables, got {vars:?}"));
    }
    let terms: serde_json::Value = serde_json::from_str(&row.terms).map_err(|e| format!("terms: {e}"))?;
    let doc = serde_json::json!({ "vars": vars, "terms": terms });
    let p = MultiPoly::from_json(&doc.to_string()).map_err(|e| e.to_string())?;
    p.rename_vars(&["L", "M"]).map_err(|e| e.to_string())
}

pub fn read_apolys(path: &Path) -> Result<Vec<(String, MultiPoly)>, Failure> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Failure::Usage(format!("{}:{line}: {e}", path.display())))?;
        let p = row_poly(&row).map_err(|e| Failure::Usage(format!("{}:{line} ({}): {e}", path.display(), row.name)))?;
        out.push((row.name, p));
    }
    if out.is_empty() {
        return Err(Failure::Usage(format!("{}: no polynomials", path.display())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_lists() {
        assert_eq!(parse_vars(r#"["a","b"]"#), ["a", "b"]);
        assert_eq!(parse_vars("a; b"), ["a", "b"]);
        assert_eq!(parse_vars("a b"), ["a", "b"]);
    }

    #[test]
    fn renamed_to_l_m() {
        let row = Row {
            name: "k".into(),
            vars: "x;y".into(),
            terms: r#"[[[1,0],"1"],[[0,6],"1"]]"#.into(),
        };
        let p = row_poly(&row).unwrap();
        assert_eq!(p, MultiPoly::parse("L + M^6", &["L", "M"]).unwrap());
    }

    #[test]
    fn three_vars_rejected() {
        let row = Row {
            name: "k".into(),
            vars: "x;y;z".into(),
            terms: "[]".into(),
        };
        assert!(row_poly(&row).is_err());
    }
}
