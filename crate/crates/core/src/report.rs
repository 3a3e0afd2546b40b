//! Text, JSON and CSV renderings shared by the command line and the C ABI.

use serde_json::{json, Value};

use crate::expr::Evaluation;
use crate::tangency::CountResult;
use crate::verify::VerifyReport;

/// `{query, d, space: {m, n, dim}, ordered_value, symmetry_factor, unordered_value, warnings}`.
pub fn json(query: &str, ev: &Evaluation) -> Value {
    let r = &ev.result;
    json!({
        "query": query,
        "d": ev.sig.d,
        "space": { "m": ev.sig.m, "n": ev.sig.n, "dim": ev.sig.dim() },
        "ordered_value": r.ordered_value.to_string(),
        "symmetry_factor": r.symmetry_factor.to_string(),
        "unordered_value": r.unordered_value.as_ref().map(|v| v.to_string()),
        "warnings": r.warnings,
    })
}

pub const CSV_HEADER: &str = "query,d,m,n,dim,ordered_value,symmetry_factor,unordered_value,warnings";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(query: &str, ev: &Evaluation) -> String {
    let r = &ev.result;
    let fields = [
        query.to_string(),
        ev.sig.d.to_string(),
        ev.sig.m.to_string(),
        ev.sig.n.to_string(),
        ev.sig.dim().to_string(),
        r.ordered_value.to_string(),
        r.symmetry_factor.to_string(),
        r.unordered_value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
        r.warnings.join("; "),
    ];
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

/// Multi-line summary. The first line is the value that answers the query.
pub fn text(query: &str, ev: &Evaluation, prefer_unordered: bool) -> String {
    let r: &CountResult = &ev.result;
    let headline = match (&r.unordered_value, prefer_unordered) {
        (Some(u), true) => u.to_string(),
        _ => r.ordered_value.to_string(),
    };
    let mut out = format!(
        "{headline}\n  query      {query}\n  space      M_{}^{} (d={}, dim {})\n  ordered    {}\n  symmetry   {}\n",
        ev.sig.n,
        ev.sig.m,
        ev.sig.d,
        ev.sig.dim(),
        r.ordered_value,
        r.symmetry_factor
    );
    if let Some(u) = &r.unordered_value {
        out.push_str(&format!("  unordered  {u}\n"));
    }
    for w in &r.warnings {
        out.push_str(&format!("  warning: {w}\n"));
    }
    out
}

pub fn verify_text(rep: &VerifyReport, quiet: bool) -> String {
    let mut out = String::new();
    let mut current = None;
    for row in &rep.rows {
        if quiet && row.pass {
            continue;
        }
        if current != Some(row.table) {
            out.push_str(&format!("== {} ==\n", row.table));
            current = Some(row.table);
        }
        let mark = if row.pass { "ok  " } else { "FAIL" };
        out.push_str(&format!("{mark} {:<60} expected {:>16}  got {:>16}\n", row.query, row.expected, row.computed));
    }
    let failed = rep.failures().count();
    out.push_str(&format!("{} rows, {} failed\n", rep.rows.len(), failed));
    out
}

pub fn verify_csv(rep: &VerifyReport) -> String {
    let mut out = String::from("table,query,expected,computed,pass\n");
    for r in &rep.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.table,
            csv_field(&r.query),
            csv_field(&r.expected),
            csv_field(&r.computed),
            r.pass
        ));
    }
    out
}

pub fn verify_json(rep: &VerifyReport) -> Value {
    json!({ "pass": rep.pass(), "rows": rep.rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_str;

    #[test]
    fn json_schema() {
        let ev = eval_str("[A1A1] * yd^12", 4).unwrap();
        let v = json("[A1A1] * yd^12", &ev);
        assert_eq!(v["ordered_value"], "450");
        assert_eq!(v["unordered_value"], "225");
        assert_eq!(v["space"]["m"], 2);
        assert!(v["warnings"].is_array());
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
