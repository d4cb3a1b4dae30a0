//! Rendering: aligned text tables and stable JSON.
//!
//! JSON objects serialize with sorted keys (serde_json's default map), big
//! integers and rationals are emitted as decimal / "p/q" strings, and check
//! lists are canonically ordered before emission, so output is byte-identical
//! across runs and parallelism settings.

use num_bigint::BigInt;
use serde_json::{json, Value};

use nsg_core::{ExactValue, IdentityCheck, IdentityReport, Status};

/// Renders an aligned table with a header row.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.len());
            }
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], widths: &[usize]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < cells.len() {
                line.push_str(&" ".repeat(widths[i].saturating_sub(cell.len())));
            }
        }
        line
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    out.push_str(&render_row(&header_cells, &widths));
    out.push('\n');
    for row in rows {
        out.push_str(&render_row(row, &widths));
        out.push('\n');
    }
    out
}

/// JSON value for an integer coefficient: a number when it fits 64 bits, a
/// decimal string otherwise.
pub fn int_json(v: &BigInt) -> Value {
    match i64::try_from(v.clone()) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn exact_value_string(v: &ExactValue) -> String {
    v.to_string()
}

pub fn check_json(check: &IdentityCheck) -> Value {
    json!({
        "family": check.family.name(),
        "label": check.label,
        "q": check.params.q,
        "n": check.params.n,
        "r": check.params.r,
        "k": check.params.k,
        "status": check.status.name(),
        "skip_reason": match &check.status {
            Status::Skipped { reason } => json!(reason),
            _ => Value::Null,
        },
        "expected": exact_value_string(&check.expected),
        "actual": exact_value_string(&check.actual),
        "residual": check.residual().map(|r| exact_value_string(&r)),
        "auxiliary": check.auxiliary,
    })
}

pub fn report_json(report: &IdentityReport) -> Value {
    json!({
        "checks": report.checks.iter().map(check_json).collect::<Vec<_>>(),
        "summary": {
            "passed": report.passed(),
            "failed": report.failed(),
            "skipped": report.skipped(),
        },
    })
}

pub fn check_rows(report: &IdentityReport) -> Vec<Vec<String>> {
    report
        .checks
        .iter()
        .map(|c| {
            let detail = match &c.status {
                Status::Skipped { reason } => format!("skipped: {reason}"),
                _ => String::new(),
            };
            vec![
                format!("{}/{}", c.family.name(), c.label),
                c.params.to_string(),
                c.status.name().to_string(),
                c.expected.to_string(),
                c.actual.to_string(),
                c.residual().map(|r| r.to_string()).unwrap_or(detail),
            ]
        })
        .collect()
}

pub fn emit_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON serialization"));
}
