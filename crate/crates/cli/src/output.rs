//! Output rendering: JSON documents, CSV rows, and the functional codec.
//!
//! Data goes to stdout, diagnostics to stderr. Identical configuration and
//! seed produce byte-identical output: JSON keys are sorted, floats use
//! Rust's shortest round-trip formatting, CSV uses `.` decimals.

use serde_json::{json, Value};

use tsirelson_core::equivalence::InequalityReport;
use tsirelson_core::{Error, Functional, NormStats, Sign};

pub const SCHEMA_VERSION: u32 = 1;

/// Leaf: `{"e": k, "sign": 1}`. Node: `{"theta_children": [...]}`.
pub fn functional_to_json(f: &Functional) -> Value {
    match f {
        Functional::Leaf { sign, position } => json!({
            "e": position,
            "sign": sign.as_i8(),
        }),
        Functional::Node { children } => json!({
            "theta_children": children.iter().map(functional_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn functional_from_json(v: &Value) -> Result<Functional, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::ParseError(String::from("functional must be a JSON object")))?;
    if let Some(children) = obj.get("theta_children") {
        let arr = children
            .as_array()
            .ok_or_else(|| Error::ParseError(String::from("theta_children must be an array")))?;
        let children = arr
            .iter()
            .map(functional_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Functional::node(children));
    }
    let position = obj
        .get("e")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::ParseError(String::from("leaf needs a positive \"e\"")))?;
    let sign = obj
        .get("sign")
        .and_then(Value::as_i64)
        .and_then(|s| i8::try_from(s).ok())
        .and_then(Sign::from_i8)
        .ok_or_else(|| Error::ParseError(String::from("leaf needs \"sign\" of 1 or -1")))?;
    let position = u32::try_from(position)
        .map_err(|_| Error::ParseError(String::from("leaf position out of range")))?;
    Ok(Functional::leaf(sign, position))
}

pub fn stats_to_json(stats: &NormStats) -> Value {
    json!({
        "support": stats.support,
        "intervals": stats.intervals,
        "walk_states": stats.walk_states,
    })
}

pub fn report_to_json(report: &InequalityReport) -> Value {
    let counterexample = match &report.counterexample {
        None => Value::Null,
        Some(cex) => json!({
            "description": cex.description,
            "lhs": cex.lhs,
            "rhs": cex.rhs,
            "vector": cex.vector,
        }),
    };
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "claim": report.claim,
        "description": report.description,
        "seed": report.seed,
        "samples": report.samples,
        "worst_ratio": report.worst_ratio,
        "pass": report.pass,
        "counterexample": counterexample,
        "trace": report.trace,
    })
}

/// One CSV row per report, for sweep-style aggregation.
pub fn report_to_csv(report: &InequalityReport) -> String {
    let mut out = String::from("claim,seed,samples,worst_ratio,pass,counterexample\n");
    let cex = report
        .counterexample
        .as_ref()
        .map(|c| c.description.clone())
        .unwrap_or_default();
    out.push_str(&format!(
        "{},{},{},{},{},{}\n",
        csv_field(&report.claim),
        report.seed,
        report.samples,
        report.worst_ratio,
        report.pass,
        csv_field(&cex),
    ));
    out
}

pub fn report_to_text(report: &InequalityReport) -> String {
    let mut out = format!(
        "claim: {}\n{}\nseed: {}\nsamples: {}\nworst ratio: {}\nresult: {}\n",
        report.claim,
        report.description,
        report.seed,
        report.samples,
        report.worst_ratio,
        if report.pass { "PASS" } else { "FAIL" },
    );
    if let Some(cex) = &report.counterexample {
        out.push_str(&format!(
            "counterexample: {} (lhs = {}, rhs = {})\n",
            cex.description, cex.lhs, cex.rhs
        ));
        if let Some(v) = &cex.vector {
            out.push_str(&format!("counterexample vector: {v}\n"));
        }
    }
    for line in &report.trace {
        out.push_str(&format!("trace: {line}\n"));
    }
    out
}

/// Quotes a CSV field only when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_json_round_trip() {
        let f = Functional::node(vec![
            Functional::leaf(Sign::Plus, 2),
            Functional::node(vec![Functional::leaf(Sign::Minus, 5)]),
        ]);
        let v = functional_to_json(&f);
        assert_eq!(functional_from_json(&v).unwrap(), f);
        assert_eq!(
            v.to_string(),
            r#"{"theta_children":[{"e":2,"sign":1},{"theta_children":[{"e":5,"sign":-1}]}]}"#
        );
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
