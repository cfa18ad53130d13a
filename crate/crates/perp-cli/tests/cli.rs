//! End-to-end tests of the `perp` binary: exit codes, report structure
//! against the bundled JSON schema, format parity, and determinism.

use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn perp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_perp"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--output", "json"]);
    let (code, stdout, stderr) = perp(&full);
    let v: Value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}); stderr: {stderr}"));
    (code, v)
}

// ------------------------------------------------------- mini validator --

/// Validate `inst` against the subset of JSON Schema draft-07 the bundled
/// schema uses: type, required, properties, additionalProperties, items,
/// enum, const, pattern, minimum. Unknown keywords make the test fail so
/// schema drift is caught here.
fn validate(schema: &Value, inst: &Value, path: &str, errs: &mut Vec<String>) {
    let obj = schema.as_object().expect("schema node is an object");
    for key in obj.keys() {
        assert!(
            [
                "$schema", "title", "description", "definitions", "type", "required",
                "properties", "additionalProperties", "items", "enum", "const", "pattern",
                "minimum", "minLength"
            ]
            .contains(&key.as_str()),
            "schema keyword '{key}' is not supported by the test validator"
        );
    }
    if let Some(types) = obj.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|v| v.as_str().unwrap()).collect(),
            _ => panic!("bad type keyword"),
        };
        let actual = match inst {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) if n.is_u64() || n.is_i64() => "integer",
            Value::Number(_) => "number",
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        // an integer is also a number
        let ok = allowed.contains(&actual) || (actual == "integer" && allowed.contains(&"number"));
        if !ok {
            errs.push(format!("{path}: type {actual} not in {allowed:?}"));
            return;
        }
    }
    if let Some(c) = obj.get("const") {
        if inst != c {
            errs.push(format!("{path}: expected const {c}"));
        }
    }
    if let Some(e) = obj.get("enum") {
        if !e.as_array().unwrap().contains(inst) {
            errs.push(format!("{path}: value {inst} not in enum"));
        }
    }
    if let Some(p) = obj.get("pattern") {
        let re = regex::Regex::new(p.as_str().unwrap()).expect("valid pattern");
        let s = inst.as_str().unwrap_or("");
        if !re.is_match(s) {
            errs.push(format!("{path}: '{s}' fails pattern {p}"));
        }
    }
    if let Some(m) = obj.get("minimum") {
        if let Some(x) = inst.as_f64() {
            if x < m.as_f64().unwrap() {
                errs.push(format!("{path}: {x} below minimum {m}"));
            }
        }
    }
    if let Some(ml) = obj.get("minLength") {
        if let Some(s) = inst.as_str() {
            if s.len() < ml.as_u64().unwrap() as usize {
                errs.push(format!("{path}: shorter than {ml}"));
            }
        }
    }
    if let Some(req) = obj.get("required") {
        if let Some(map) = inst.as_object() {
            for r in req.as_array().unwrap() {
                if !map.contains_key(r.as_str().unwrap()) {
                    errs.push(format!("{path}: missing required key {r}"));
                }
            }
        }
    }
    if let Some(props) = obj.get("properties") {
        if let Some(map) = inst.as_object() {
            for (k, sub) in props.as_object().unwrap() {
                if let Some(v) = map.get(k) {
                    validate(sub, v, &format!("{path}.{k}"), errs);
                }
            }
            if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
                for k in map.keys() {
                    if !props.as_object().unwrap().contains_key(k) {
                        errs.push(format!("{path}: unexpected key {k}"));
                    }
                }
            }
        }
    }
    if let Some(items) = obj.get("items") {
        if let Some(arr) = inst.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(items, v, &format!("{path}[{i}]"), errs);
            }
        }
    }
}

fn assert_valid_report(v: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json"))
        .expect("schema parses");
    let mut errs = Vec::new();
    validate(&schema, v, "$", &mut errs);
    assert!(errs.is_empty(), "schema violations: {errs:#?}");
}

/// The complex12 shape from the schema's definitions, applied to a value.
fn assert_complex12(v: &Value) {
    let re = regex::Regex::new("^-?[0-9]\\.[0-9]{11}e-?[0-9]+$").unwrap();
    let obj = v.as_object().expect("complex point is an object");
    for part in ["re", "im"] {
        let s = obj[part].as_str().expect("coordinate is a string");
        assert!(re.is_match(s), "'{s}' is not a 12-significant-digit coordinate");
    }
}

// ---------------------------------------------------------------- tests --

#[test]
fn plucker_suite_passes_and_validates() {
    let (code, v) = json_report(&["examples", "plucker"]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["pass"] == Value::Bool(true)));
    assert_eq!(v["failures"], 0);
    assert_eq!(checks[0]["detail"]["got"], serde_json::json!([12, 3]));
    assert_eq!(checks[1]["detail"]["got"], serde_json::json!([28, 24]));
    assert_eq!(checks[2]["detail"]["got"], serde_json::json!(7));
}

#[test]
fn surfaces_suite_reports_the_three_branch_rows() {
    let (code, v) = json_report(&["examples", "surfaces"]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let checks = v["checks"].as_array().unwrap();
    let got: Vec<&Value> = checks.iter().map(|c| &c["detail"]["got"]).collect();
    assert_eq!(got[0], &serde_json::json!([2, 0, 0]));
    assert_eq!(got[1], &serde_json::json!([6, 0, 6]));
    assert_eq!(got[2], &serde_json::json!([12, 12, 24]));
}

#[test]
fn dual_of_the_conic_is_a_conic_without_defect() {
    let (code, v) = json_report(&["dual", "conic"]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let d = &v["checks"][0]["detail"]["dual"];
    assert_eq!(d["dim"], 1);
    assert_eq!(d["degree"], 2);
    assert_eq!(d["defect"], 0);
}

#[test]
fn verify_accepts_the_conic_pencil() {
    let (code, v) = json_report(&["verify", "conic", "--k", "1"]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let d = &v["checks"][0]["detail"];
    assert_eq!(d["equal"], true);
    assert_eq!(d["branch_class"], "union-of-hyperplanes");
    assert!(!v["checks"][0]["seeds"].as_array().unwrap().is_empty());
}

#[test]
fn braid_of_the_conic_is_certified_in_b2() {
    let (code, v) = json_report(&["braid", "conic"]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let d = &v["checks"][0]["detail"];
    assert_eq!(d["m"], 2);
    assert_eq!(d["braid_group"], "B_2");
    assert_eq!(d["branch_point_count"], 2);
    assert_eq!(d["certificate"], "certified");
    for bp in d["branch_points"].as_array().unwrap() {
        assert_complex12(bp);
    }
    for lp in d["loops"].as_array().unwrap() {
        assert!(lp["word"].as_array().unwrap().iter().all(|w| w.is_i64()));
        assert_eq!(lp["permutation"], serde_json::json!([1, 0]));
    }
}

#[test]
fn braid_of_the_quartic_is_certified_in_b4() {
    let (code, v) = json_report(&["braid", "plane-quartic"]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let d = &v["checks"][0]["detail"];
    assert_eq!(d["m"], 4);
    assert_eq!(d["braid_group"], "B_4");
    assert_eq!(d["branch_point_count"], 12);
    assert_eq!(d["certificate"], "certified");
}

#[test]
fn a_reducible_curve_is_inconclusive_but_not_a_failure() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "variety reducible-conic\nambient 2\nx0*x1\nend").unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let (code, v) = json_report(&["braid", &path]);
    assert_eq!(code, 0);
    assert_valid_report(&v);
    let d = &v["checks"][0]["detail"];
    assert_eq!(d["m"], 2);
    let cert = d["certificate"].as_str().unwrap();
    assert!(cert.starts_with("inconclusive"), "got '{cert}'");
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["dual", "no-such-variety"] as &[&str],
        &["dual", "conic", "--field", "fp:4"],
        &["dual", "conic", "--field", "zz"],
        &["braid", "conic", "--field", "fp:7"],
        &["--definitely-not-a-flag"],
    ] {
        let (code, _, stderr) = perp(args);
        assert_eq!(code, 64, "args {args:?} gave stderr: {stderr}");
        assert!(!stderr.is_empty());
    }
}

#[test]
fn exhausted_budget_exits_65() {
    let (code, v) = json_report(&["dual", "plane-cubic", "--budget", "10"]);
    assert_eq!(code, 65);
    assert_valid_report(&v);
    assert_eq!(v["checks"][0]["budget_exceeded"], true);
    assert_eq!(v["checks"][0]["pass"], false);
}

#[test]
fn failed_checks_count_into_the_exit_code() {
    // a one-second limit cannot fit the veronese chain
    let (code, v) = json_report(&[
        "examples", "veronese", "--timeout", "1", "--field", "fp:2147483629",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["failures"], 1);
    let err = v["checks"][0]["error"].as_str().unwrap();
    assert!(err.contains("timeout"));
}

#[test]
fn reports_are_deterministic_for_a_fixed_seed() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_ms");
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("wall_ms");
        }
        v
    };
    let (c1, a) = json_report(&["braid", "plane-cubic", "--seed", "11"]);
    let (c2, b) = json_report(&["braid", "plane-cubic", "--seed", "11"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn jobs_do_not_change_the_merged_report() {
    let strip = |mut v: Value| {
        let o = v.as_object_mut().unwrap();
        o.remove("wall_ms");
        o.get_mut("config").unwrap().as_object_mut().unwrap().remove("jobs");
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("wall_ms");
        }
        v
    };
    let (_, a) = json_report(&["examples", "plucker", "--jobs", "1"]);
    let (_, b) = json_report(&["examples", "plucker", "--jobs", "3"]);
    let ids: Vec<&str> =
        a["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(
        ids,
        ["plucker/dual-degree-and-genus", "plucker/nodes-and-cusps", "plucker/lattice-rank"]
    );
    assert_eq!(strip(a), strip(b));
}

#[test]
fn markdown_and_json_carry_the_same_numbers() {
    let (code, v) = json_report(&["dual", "conic", "--seed", "5"]);
    assert_eq!(code, 0);
    let (code_md, md, _) = perp(&["dual", "conic", "--seed", "5"]);
    assert_eq!(code_md, 0);

    // every number in the JSON report except wall-clock readings must
    // appear verbatim in the markdown rendering
    fn collect(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Number(n) => out.push(n.to_string()),
            Value::Array(a) => a.iter().for_each(|x| collect(x, out)),
            Value::Object(m) => {
                for (k, x) in m {
                    if k != "wall_ms" {
                        collect(x, out);
                    }
                }
            }
            _ => {}
        }
    }
    let mut nums = Vec::new();
    collect(&v, &mut nums);
    assert!(!nums.is_empty());
    for n in nums {
        assert!(md.contains(&n), "number {n} from JSON missing in markdown:\n{md}");
    }
}

#[test]
fn a_file_with_several_varieties_runs_each_as_a_check() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "variety first-conic\nambient 2\nx0^2 + x1^2 - x2^2\nend\n\n\
         variety second-conic\nambient 2\nx0*x2 - x1^2\nend"
    )
    .unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let (code, v) = json_report(&["dual", &path]);
    assert_eq!(code, 0);
    let ids: Vec<&str> =
        v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["dual/first-conic", "dual/second-conic"]);
}
