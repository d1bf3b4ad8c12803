//! Text and JSON renderings of a verification run.

use std::io::{self, Write};

use polybern_core::verify::Point;
use polybern_core::VerificationReport;
use serde_json::{json, Value};

pub fn write_text(report: &VerificationReport, mut out: impl Write) -> io::Result<()> {
    let name = report.identity.name();
    match report.first_failure() {
        None => writeln!(
            out,
            "identity {name}: PASS (points: {})",
            report.total_points()
        ),
        Some(failure) => {
            writeln!(
                out,
                "identity {name}: FAIL (points: {}, failures: {})",
                report.total_points(),
                report.failures.len()
            )?;
            writeln!(out, "first counterexample at {}", failure.point)?;
            writeln!(out, "  lhs = {}", failure.lhs)?;
            writeln!(out, "  rhs = {}", failure.rhs)
        }
    }
}

fn point_json(point: &Point) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("n".into(), json!(point.n));
    if let Some(m) = point.m {
        map.insert("m".into(), json!(m));
    }
    if let Some(k) = point.k {
        map.insert("k".into(), json!(k));
    }
    if let Some(x) = &point.x {
        map.insert("x".into(), json!(x.to_string()));
    }
    if let Some(y) = &point.y {
        map.insert("y".into(), json!(y.to_string()));
    }
    Value::Object(map)
}

pub fn to_json(report: &VerificationReport) -> Value {
    let range = &report.range;
    json!({
        "identity": report.identity.name(),
        "status": if report.passed() { "pass" } else { "fail" },
        "range": {
            "n_max": range.n_max,
            "ks": range.ks,
            "xs": range.xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        },
        "total_points": report.total_points(),
        "failures": report.failures.iter().map(|f| json!({
            "point": point_json(&f.point),
            "lhs": f.lhs,
            "rhs": f.rhs,
        })).collect::<Vec<_>>(),
    })
}

pub fn write_json(report: &VerificationReport, mut out: impl Write) -> io::Result<()> {
    serde_json::to_writer(&mut out, &to_json(report))?;
    writeln!(out)
}
