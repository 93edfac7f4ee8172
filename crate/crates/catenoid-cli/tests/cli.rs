//! Black-box tests of the `catenoid` binary: JSON contracts against the
//! shipped schemas, CSV format, exit codes, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catenoid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    serde_json::from_str(&text).expect("schema is JSON")
}

/// Minimal JSON Schema checker covering the subset the shipped schemas use:
/// type, enum, properties, required, items, additionalProperties (bool).
fn validate(value: &Value, schema: &Value, path: &str) -> Result<(), String> {
    if let Some(expected) = schema.get("type") {
        let names: Vec<&str> = match expected {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|v| v.as_str()).collect(),
            _ => vec![],
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("{path}: expected type {names:?}, got {value}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if value.get(key).is_none() {
                return Err(format!("{path}: missing required key '{key}'"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        if let Some(object) = value.as_object() {
            for (key, subschema) in props {
                if let Some(subvalue) = object.get(key) {
                    validate(subvalue, subschema, &format!("{path}.{key}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in object.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{path}: unexpected key '{key}'"));
                    }
                }
            }
        }
    }
    if let Some(item_schema) = schema.get("items") {
        if let Some(items) = value.as_array() {
            for (i, item) in items.iter().enumerate() {
                validate(item, item_schema, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn assert_valid(value: &Value, schema_name: &str) {
    validate(value, &schema(schema_name), "$").unwrap_or_else(|e| panic!("{e}"));
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("catenoid-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn solve_two_solutions_with_stability_signs() {
    let v = run_json(&["solve", "--r1", "1", "--r2", "1", "--d", "1"]);
    assert_valid(&v, "solve.schema.json");
    let r = &v["results"];
    assert_eq!(r["classification"], "two_solutions");
    let branches = r["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 2);
    assert_eq!(branches[0]["branch"], "outer");
    assert!(branches[0]["lambda0"].as_f64().unwrap() > 0.0);
    assert_eq!(branches[1]["branch"], "inner");
    assert!(branches[1]["lambda0"].as_f64().unwrap() < 0.0);
}

#[test]
fn solve_no_solution_still_reports_goldschmidt() {
    let v = run_json(&["solve", "--r1", "1", "--r2", "1", "--d", "2"]);
    assert_valid(&v, "solve.schema.json");
    let r = &v["results"];
    assert_eq!(r["classification"], "no_solution");
    assert!(r["branches"].as_array().unwrap().is_empty());
    let a_g = r["goldschmidt_area"].as_f64().unwrap();
    assert!((a_g - 2.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn solve_critical_classification() {
    // rho0 to machine precision lands inside the default band
    let v = run_json(&["solve", "--xi", "0", "--rho", "1.50887956153832"]);
    assert_eq!(v["results"]["classification"], "critical");
    // four-digit rho0 needs a widened band
    let v = run_json(&[
        "solve", "--xi", "0", "--rho", "1.5089", "--band", "1e-4",
    ]);
    assert_eq!(v["results"]["classification"], "critical");
    // with the default band the same input resolves to two branches
    let v = run_json(&["solve", "--xi", "0", "--rho", "1.5089"]);
    assert_eq!(v["results"]["classification"], "two_solutions");
}

#[test]
fn solve_rejects_mixed_or_missing_styles() {
    let out = run(&["solve", "--r1", "1", "--xi", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--r1", "1", "--r2", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let first = run(&["solve", "--r1", "1.3", "--r2", "0.8", "--d", "0.9"]);
    let second = run(&["solve", "--r1", "1.3", "--r2", "0.8", "--d", "0.9"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn phase_diagram_csv_contract() {
    let out = run(&[
        "phase-diagram",
        "--space",
        "xi-rho",
        "--x-max",
        "2",
        "--x-steps",
        "12",
        "--y-max",
        "4",
        "--y-steps",
        "12",
        "--curve-points",
        "16",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("space,coord1,coord2,region"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 12 * 12);
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[0], "xi-rho");
        // 17 significant digits in scientific notation
        let mantissa = fields[1].split('e').next().unwrap();
        let digits = mantissa.trim_start_matches('-').replace('.', "");
        assert_eq!(digits.len(), 17, "row: {row}");
    }
    // no locale separators anywhere
    assert!(!text.contains(';'));
}

#[test]
fn phase_diagram_rejects_single_step() {
    let out = run(&[
        "phase-diagram",
        "--space",
        "xi-rho",
        "--x-max",
        "2",
        "--x-steps",
        "1",
        "--y-max",
        "4",
        "--y-steps",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phase_diagram_json_matches_schema_and_bw_boundary() {
    let v = run_json(&[
        "phase-diagram",
        "--space",
        "b-w",
        "--x-max",
        "3",
        "--x-steps",
        "7",
        "--y-max",
        "5",
        "--y-steps",
        "41",
        "--curve-points",
        "8",
    ]);
    assert_valid(&v, "phase-diagram.schema.json");
    // the b = 0 column flips from outer to inner across w0 ~ 1.1997
    let grid = v["results"]["grid"].as_array().unwrap();
    let mut last_outer: f64 = 0.0;
    let mut first_inner: f64 = f64::INFINITY;
    for row in grid {
        if row["coord1"].as_f64().unwrap() == 0.0 {
            let w = row["coord2"].as_f64().unwrap();
            match row["region"].as_str().unwrap() {
                "outer" => last_outer = last_outer.max(w),
                "inner" => first_inner = first_inner.min(w),
                _ => {}
            }
        }
    }
    assert!(last_outer < 1.1997 && 1.1997 < first_inner);
}

#[test]
fn phase_diagram_writes_file() {
    let path = tmp_path("pd.csv");
    let out = run(&[
        "phase-diagram",
        "--space",
        "xi-rho",
        "--x-max",
        "1",
        "--x-steps",
        "4",
        "--y-max",
        "2",
        "--y-steps",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("space,coord1,coord2,region\n"));
    std::fs::remove_file(&path).ok();

    let out = run(&[
        "phase-diagram",
        "--space",
        "xi-rho",
        "--x-max",
        "1",
        "--x-steps",
        "4",
        "--y-max",
        "2",
        "--y-steps",
        "4",
        "--out",
        "/nonexistent-dir/pd.json",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn spectrum_near_critical_and_dump() {
    let dump = tmp_path("modes.csv");
    let v = run_json(&[
        "spectrum",
        "--b",
        "0",
        "--w",
        "1.1997",
        "--modes",
        "2",
        "--grid",
        "2000",
        "--dump-modes",
        dump.to_str().unwrap(),
    ]);
    assert_valid(&v, "spectrum.schema.json");
    let modes = v["results"]["modes"].as_array().unwrap();
    assert!(modes[0]["eigenvalue"].as_f64().unwrap().abs() < 1e-3);
    assert!(modes[1]["eigenvalue"].as_f64().unwrap() > 0.0);

    let text = std::fs::read_to_string(&dump).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mode,v,psi"));
    assert_eq!(lines.count(), 2 * 2002);
    std::fs::remove_file(&dump).ok();
}

#[test]
fn spectrum_stable_region_is_positive() {
    let v = run_json(&["spectrum", "--b", "0", "--w", "0.5", "--modes", "1", "--grid", "1000"]);
    assert!(v["results"]["modes"][0]["eigenvalue"].as_f64().unwrap() > 0.0);
}

#[test]
fn spectrum_asymmetric_critical_width_is_marginal() {
    // w_c(1) from the critical-width equation
    let v = run_json(&["spectrum", "--b", "1", "--w", "1.532476138118765", "--modes", "1"]);
    assert!(v["results"]["modes"][0]["eigenvalue"].as_f64().unwrap().abs() < 1e-3);
}

#[test]
fn unstable_family_style_matches_leading_order() {
    let v = run_json(&["unstable", "--b", "0", "--epsilon", "0.01"]);
    assert_valid(&v, "unstable.schema.json");
    let r = &v["results"];
    let k2_pert = r["perturbative"]["k2"].as_f64().unwrap();
    assert!((k2_pert - 0.025_006_696_788_028_94).abs() < 1e-12);
    assert!(r["relative_gap"].as_f64().unwrap() < 0.05);
}

#[test]
fn unstable_rings_style_agrees_with_fd() {
    let dump = tmp_path("mode.csv");
    let v = run_json(&[
        "unstable",
        "--r1",
        "1",
        "--r2",
        "1",
        "--d",
        "1",
        "--dump-mode",
        dump.to_str().unwrap(),
    ]);
    assert_valid(&v, "unstable.schema.json");
    let r = &v["results"];
    let exact = r["exact"]["eigenvalue"].as_f64().unwrap();
    let fd = r["fd_lambda0"].as_f64().unwrap();
    assert!((exact - fd).abs() < 1e-5, "exact {exact} vs fd {fd}");

    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("v,psi\n"));
    std::fs::remove_file(&dump).ok();
}

#[test]
fn unstable_without_inner_branch_exits_5() {
    let out = run(&["unstable", "--r1", "1", "--r2", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(5));
    let out = run(&["unstable", "--b", "0", "--epsilon", "-0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn areas_below_and_inside_metastable_window() {
    let v = run_json(&["areas", "--r1", "1", "--r2", "1", "--d", "1"]);
    assert_valid(&v, "areas.schema.json");
    let r = &v["results"];
    assert!((r["goldschmidt_area"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    let outer = &r["branches"][0];
    assert_eq!(outer["exceeds_goldschmidt"], false);
    assert_eq!(r["crossover"]["beyond_crossover"], false);

    let v = run_json(&["areas", "--r1", "1", "--r2", "1", "--d", "1.2"]);
    let r = &v["results"];
    assert_eq!(r["classification"], "two_solutions");
    assert_eq!(r["branches"][0]["exceeds_goldschmidt"], true);
    assert_eq!(r["crossover"]["beyond_crossover"], true);
}

#[test]
fn areas_close_rings_goldschmidt_value() {
    let v = run_json(&["areas", "--r1", "3", "--r2", "4", "--d", "0.1"]);
    let a_g = v["results"]["goldschmidt_area"].as_f64().unwrap();
    assert!((a_g - 25.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn critical_distance_equal_rings() {
    let v = run_json(&["critical-distance", "--r1", "1", "--r2", "1"]);
    assert_valid(&v, "critical-distance.schema.json");
    let r = &v["results"];
    assert!((r["w_c"].as_f64().unwrap() - 1.199_678_640_257_733_8).abs() < 1e-10);
    assert!((r["d_c"].as_f64().unwrap() - 1.325_486_838_698_363).abs() < 1e-9);

    // linear in the overall scale
    let doubled = run_json(&["critical-distance", "--r1", "2", "--r2", "2"]);
    let ratio = doubled["results"]["d_c"].as_f64().unwrap() / r["d_c"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-12);
}

#[test]
fn log_env_goes_to_stderr_only() {
    let quiet = run(&["critical-distance", "--r1", "1", "--r2", "1"]);
    let noisy = bin()
        .args(["critical-distance", "--r1", "1", "--r2", "1"])
        .env("CATENOID_LOG", "debug")
        .output()
        .unwrap();
    assert_eq!(quiet.stdout, noisy.stdout);
}
