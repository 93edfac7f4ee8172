//! wasm-bindgen bindings for the browser demo (see `www/index.html`). Each
//! exported function returns a JSON string the page parses and draws; the
//! JSON builders are plain Rust so they are also testable on the host.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use catenoid::existence::{
    classify_rings, critical_distance, critical_w, phase_diagram, PhaseDiagramSpec, Region, Space,
};
use catenoid::geometry::{catenoid_area, goldschmidt_area, metastability_crossover};
use catenoid::model::{CatenoidSolution, ExistenceResult, RingConfig};
use catenoid::stability::{spectrum, unstable_mode_exact, zero_mode, StabilityProblem};
use catenoid::Error;

const PROFILE_POINTS: usize = 161;
const MODE_GRID: usize = 1200;
const MODE_PLOT_POINTS: usize = 400;

fn js_err(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Sampled cross-section r(z) = a cosh(z/a + b) over z in [-d/2, d/2].
fn profile(sol: &CatenoidSolution, d: f64) -> Value {
    let mut zs = Vec::with_capacity(PROFILE_POINTS);
    let mut rs = Vec::with_capacity(PROFILE_POINTS);
    for i in 0..PROFILE_POINTS {
        let z = -0.5 * d + d * i as f64 / (PROFILE_POINTS - 1) as f64;
        zs.push(z);
        rs.push(sol.a * (z / sol.a + sol.b).cosh());
    }
    json!({ "z": zs, "r": rs })
}

fn decimate(values: &[f64]) -> Vec<f64> {
    let stride = values.len().div_ceil(MODE_PLOT_POINTS).max(1);
    let mut out: Vec<f64> = values.iter().step_by(stride).copied().collect();
    if let Some(&last) = values.last() {
        if out.last() != Some(&last) {
            out.push(last);
        }
    }
    out
}

fn ground_eigenvalue(b: f64, w: f64) -> Result<f64, Error> {
    let problem = StabilityProblem::new(b, w, MODE_GRID)?;
    Ok(spectrum(&problem, 1)?[0].eigenvalue)
}

fn branch_json(sol: &CatenoidSolution, rings: &RingConfig) -> Result<Value, Error> {
    let area = catenoid_area(sol, rings.d)?;
    Ok(json!({
        "branch": match sol.branch {
            catenoid::Branch::Outer => "outer",
            catenoid::Branch::Inner => "inner",
            catenoid::Branch::Critical => "critical",
        },
        "w": sol.w,
        "b": sol.b,
        "a": sol.a,
        "lambda0": ground_eigenvalue(sol.b, sol.w)?,
        "catenoid_area": area,
        "profile": profile(sol, rings.d),
    }))
}

fn solve_rings_value(r1: f64, r2: f64, d: f64) -> Result<Value, Error> {
    let rings = RingConfig::new(r1, r2, d)?;
    let result = classify_rings(&rings, 1e-12)?;
    let classification = match result {
        ExistenceResult::NoSolution => "no_solution",
        ExistenceResult::Critical(_) => "critical",
        ExistenceResult::TwoSolutions { .. } => "two_solutions",
    };
    let branches = result
        .branches()
        .into_iter()
        .map(|sol| branch_json(sol, &rings))
        .collect::<Result<Vec<_>, _>>()?;

    let params = catenoid::to_dimensionless(&rings);
    let scale = r1.max(r2);
    let crossover = metastability_crossover(r1.min(r2) / scale)?;
    Ok(json!({
        "classification": classification,
        "xi": params.xi,
        "rho": params.rho,
        "goldschmidt_area": goldschmidt_area(&rings),
        "critical_distance": critical_distance(r1, r2)?.d_c,
        "crossover_distance": crossover.d_star * scale,
        "branches": branches,
    }))
}

fn region_code(region: Region) -> u8 {
    match region {
        Region::NoSolution => 0,
        Region::TwoSolutions => 1,
        Region::Outer => 2,
        Region::Inner => 3,
        Region::CriticalCurve => 4,
    }
}

fn phase_diagram_value(space: &str, x_max: f64, y_max: f64, steps: usize) -> Result<Value, Error> {
    let space = match space {
        "b-w" => Space::BW,
        _ => Space::XiRho,
    };
    let spec = PhaseDiagramSpec {
        space,
        c1_min: 0.0,
        c1_max: x_max,
        c1_steps: steps,
        c2_min: 0.0,
        c2_max: y_max,
        c2_steps: steps,
        curve_points: 160,
    };
    let pd = phase_diagram(&spec)?;
    let regions: Vec<u8> = pd.grid.iter().map(|row| region_code(row.region)).collect();
    let curve_x: Vec<f64> = pd.curve.iter().map(|row| row.coord1).collect();
    let curve_y: Vec<f64> = pd.curve.iter().map(|row| row.coord2).collect();
    Ok(json!({
        "space": match space { Space::XiRho => "xi-rho", Space::BW => "b-w" },
        "x_max": x_max,
        "y_max": y_max,
        "steps": steps,
        "regions": regions,
        "curve_x": curve_x,
        "curve_y": curve_y,
    }))
}

fn stability_modes_value(b: f64, w: f64, n_modes: usize) -> Result<Value, Error> {
    let problem = StabilityProblem::new(b, w, MODE_GRID)?;
    let modes = spectrum(&problem, n_modes.clamp(1, 4))?;
    let mode_entries: Vec<Value> = modes
        .iter()
        .map(|m| {
            json!({
                "eigenvalue": m.eigenvalue,
                "v": decimate(&m.grid),
                "psi": decimate(&m.values),
            })
        })
        .collect();

    let w_c = critical_w(b);
    let analytic = if w > w_c {
        let unstable = unstable_mode_exact(b, w, MODE_GRID)?;
        json!({
            "kind": "unstable",
            "k2": unstable.k * unstable.k,
            "beta": unstable.beta,
            "v": decimate(&unstable.mode.grid),
            "psi": decimate(&unstable.mode.values),
        })
    } else if (w - w_c).abs() <= 1e-6 * w_c {
        let mode = zero_mode(&problem)?;
        json!({
            "kind": "zero_mode",
            "v": decimate(&mode.grid),
            "psi": decimate(&mode.values),
        })
    } else {
        Value::Null
    };

    Ok(json!({
        "b": b,
        "w": w,
        "w_critical": w_c,
        "modes": mode_entries,
        "analytic": analytic,
    }))
}

/// Classify a ring pair and return branches with profiles, areas, lambda0,
/// and the critical/crossover separations.
#[wasm_bindgen]
pub fn solve_rings(r1: f64, r2: f64, d: f64) -> Result<String, JsError> {
    Ok(solve_rings_value(r1, r2, d).map_err(js_err)?.to_string())
}

/// Sample a phase diagram over [0, x_max] x [0, y_max] at steps^2 points.
/// `space` is "xi-rho" or "b-w"; region codes: 0 none, 1 two solutions,
/// 2 outer, 3 inner, 4 critical curve.
#[wasm_bindgen]
pub fn sample_phase_diagram(
    space: &str,
    x_max: f64,
    y_max: f64,
    steps: usize,
) -> Result<String, JsError> {
    Ok(phase_diagram_value(space, x_max, y_max, steps)
        .map_err(js_err)?
        .to_string())
}

/// Finite-difference spectrum of the stability operator on (-w, w) plus the
/// matching analytic mode (exact unstable mode above criticality, zero mode
/// on the curve).
#[wasm_bindgen]
pub fn stability_modes(b: f64, w: f64, n_modes: usize) -> Result<String, JsError> {
    Ok(stability_modes_value(b, w, n_modes)
        .map_err(js_err)?
        .to_string())
}

#[wasm_bindgen]
pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
