//! Report model shared by every subcommand, with JSON and markdown
//! renderers driven off the same `serde_json::Value` so numeric content is
//! identical in both formats.

use serde::Serialize;
use serde_json::Value;

/// Everything one invocation reports: the echoed configuration and one
/// entry per check, in deterministic construction order.
#[derive(Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckReport>,
    pub failures: usize,
    pub wall_ms: u64,
}

/// The run configuration, echoed verbatim so a report is reproducible.
#[derive(Serialize, Clone)]
pub struct ConfigEcho {
    pub field: String,
    pub seed: u64,
    pub budget: u64,
    pub tol: f64,
    pub jobs: usize,
    pub timeout_secs: u64,
}

/// Outcome of a single named check.
#[derive(Serialize)]
pub struct CheckReport {
    pub id: String,
    pub pass: bool,
    pub seeds: Vec<u64>,
    pub wall_ms: u64,
    pub budget_exceeded: bool,
    pub error: Option<String>,
    pub detail: Value,
}

/// A complex number rendered to exactly 12 significant digits, kept as
/// strings so the digit count survives serialization in both formats.
pub fn complex12(re: f64, im: f64) -> Value {
    serde_json::json!({ "re": sig12(re), "im": sig12(im) })
}

/// `x` in scientific notation with 12 significant digits.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Markdown rendering of the report. Every scalar is printed through
/// `serde_json`'s own formatter, so each number appears with exactly the
/// same digits as in the JSON output.
pub fn render_markdown(report: &Report) -> String {
    let v = serde_json::to_value(report).expect("report serialization is infallible");
    let mut out = String::new();
    out.push_str(&format!(
        "# {} {} report: {}\n\n",
        field_str(&v, "tool"),
        field_str(&v, "version"),
        field_str(&v, "command")
    ));

    let cfg = &v["config"];
    out.push_str("| field | seed | budget | tol | jobs | timeout (s) |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    out.push_str(&format!(
        "| {} | {} | {} | {} | {} | {} |\n\n",
        scalar(&cfg["field"]),
        scalar(&cfg["seed"]),
        scalar(&cfg["budget"]),
        scalar(&cfg["tol"]),
        scalar(&cfg["jobs"]),
        scalar(&cfg["timeout_secs"]),
    ));

    for check in v["checks"].as_array().expect("checks is an array") {
        let mark = if check["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "## {} — {} ({} ms)\n\n",
            scalar(&check["id"]),
            mark,
            scalar(&check["wall_ms"])
        ));
        out.push_str(&format!("- seeds: {}\n", inline(&check["seeds"])));
        if check["budget_exceeded"].as_bool() == Some(true) {
            out.push_str("- budget exceeded\n");
        }
        if let Some(err) = check["error"].as_str() {
            out.push_str(&format!("- error: {err}\n"));
        }
        if !check["detail"].is_null() {
            out.push_str("- detail:\n");
            nested(&check["detail"], 1, &mut out);
        }
        out.push('\n');
    }

    out.push_str(&format!(
        "**failures: {}** (wall {} ms)\n",
        scalar(&v["failures"]),
        scalar(&v["wall_ms"])
    ));
    out
}

fn field_str<'a>(v: &'a Value, key: &str) -> &'a str {
    v[key].as_str().unwrap_or("?")
}

/// One scalar, formatted exactly as serde_json would emit it, except that
/// strings drop their quotes.
fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays of scalars inline as `[a, b, c]`; everything else falls back to
/// `scalar`.
fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let body = items.iter().map(scalar).collect::<Vec<_>>().join(", ");
            format!("[{body}]")
        }
        other => scalar(other),
    }
}

/// Nested bullet-list rendering for arbitrary detail payloads.
fn nested(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}- {k}:\n"));
                        nested(val, depth + 1, out);
                    }
                    Value::Array(items)
                        if items.iter().any(|x| x.is_array() || x.is_object()) =>
                    {
                        out.push_str(&format!("{pad}- {k}:\n"));
                        for item in items {
                            nested_item(item, depth + 1, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}- {k}: {}\n", inline(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                nested_item(item, depth, out);
            }
        }
        other => out.push_str(&format!("{pad}- {}\n", scalar(other))),
    }
}

fn nested_item(item: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match item {
        Value::Object(map) => {
            let body = map
                .iter()
                .map(|(k, val)| format!("{k}: {}", inline(val)))
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!("{pad}- {{{body}}}\n"));
        }
        other => out.push_str(&format!("{pad}- {}\n", inline(other))),
    }
}
