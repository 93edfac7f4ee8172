//! `catenoid` CLI: existence classification, phase diagrams, stability
//! spectra, unstable modes, and area comparisons for catenoids spanning two
//! coaxial rings. JSON on stdout by default; CSV for grid and mode dumps.
//!
//! Exit codes: 0 ok, 2 usage error, 3 numerical failure, 4 I/O failure,
//! 5 domain error (no inner branch). Diagnostics go to stderr, controlled
//! by CATENOID_LOG={error,info,debug}.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use catenoid::existence::{
    classify_banded, critical_distance, critical_point_for_xi, critical_w, phase_diagram,
    PhaseDiagramSpec, Space,
};
use catenoid::geometry::{catenoid_area, goldschmidt_area, metastability_crossover};
use catenoid::model::{
    to_dimensionless, Branch, CatenoidSolution, Dimensionless, ExistenceResult, RingConfig,
};
use catenoid::stability::{
    fixed_xi_b_path, spectrum, unstable_mode_exact, unstable_mode_perturbative, StabilityProblem,
};
use catenoid::{Error, CRITICAL_BAND, DEFAULT_GRID_N, DEFAULT_REL_TOL};

use output::{csv_float, render, write_file, Envelope, Meta};

#[derive(Parser)]
#[command(
    name = "catenoid",
    version,
    about = "Catenoid existence, stability, and area analysis for two coaxial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a ring configuration; report branches, lambda0, and areas
    Solve(SolveArgs),
    /// Sample a phase diagram over (xi, rho) or (b, w) with the critical curve
    PhaseDiagram(PhaseDiagramArgs),
    /// Eigenvalues (and optional gridded modes) of the stability operator
    Spectrum(SpectrumArgs),
    /// Exact vs perturbative unstable mode of an inner catenoid
    Unstable(UnstableArgs),
    /// Catenoid vs Goldschmidt areas and the meta-stability crossover
    Areas(AreasArgs),
    /// Critical ring separation for given radii
    CriticalDistance(CriticalDistanceArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, help = "Radius of the first ring")]
    r1: Option<f64>,
    #[arg(long, help = "Radius of the second ring")]
    r2: Option<f64>,
    #[arg(long, help = "Ring separation")]
    d: Option<f64>,
    #[arg(long, help = "Dimensionless (r1 - r2)/d (alternative input style)")]
    xi: Option<f64>,
    #[arg(long, help = "Dimensionless (r1 + r2)/d (alternative input style)")]
    rho: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_N, help = "Interior grid points for lambda0")]
    grid: usize,
    #[arg(long, default_value_t = CRITICAL_BAND, help = "Near-tangency band declaring Critical")]
    band: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    #[value(name = "xi-rho")]
    XiRho,
    #[value(name = "b-w")]
    BW,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PhaseDiagramArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long, default_value_t = 0.0)]
    x_min: f64,
    #[arg(long)]
    x_max: f64,
    #[arg(long)]
    x_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    y_min: f64,
    #[arg(long)]
    y_max: f64,
    #[arg(long)]
    y_steps: usize,
    #[arg(long, default_value_t = 256)]
    curve_points: usize,
    #[arg(long, help = "Output file; stdout when omitted")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    b: f64,
    #[arg(long)]
    w: f64,
    #[arg(long, default_value_t = 1)]
    modes: usize,
    #[arg(long, default_value_t = DEFAULT_GRID_N)]
    grid: usize,
    #[arg(long, help = "Write mode samples as CSV (mode,v,psi)")]
    dump_modes: Option<PathBuf>,
}

#[derive(Args)]
struct UnstableArgs {
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long, help = "Critical asymmetry constant (alternative input style)")]
    b: Option<f64>,
    #[arg(long, help = "Half-width excess over w_c along the fixed-xi family")]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID_N)]
    grid: usize,
    #[arg(long, help = "Write exact mode samples as CSV (v,psi)")]
    dump_mode: Option<PathBuf>,
}

#[derive(Args)]
struct AreasArgs {
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
    #[arg(long)]
    d: f64,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    tol: f64,
}

#[derive(Args)]
struct CriticalDistanceArgs {
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn io(err: std::io::Error) -> Self {
        Self {
            code: 4,
            message: err.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidRings { .. }
            | Error::DegenerateInput { .. }
            | Error::InvalidGrid { .. }
            | Error::GridTooCoarse { .. } => 2,
            Error::NotInner { .. } | Error::NoRoot { .. } => 5,
            _ => 3,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CATENOID_LOG", "error"))
        .init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::PhaseDiagram(args) => cmd_phase_diagram(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Unstable(args) => cmd_unstable(args),
        Command::Areas(args) => cmd_areas(args),
        Command::CriticalDistance(args) => cmd_critical_distance(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Resolve the two input styles into (params, d). Exactly one style allowed.
fn resolve_inputs(
    r1: Option<f64>,
    r2: Option<f64>,
    d: Option<f64>,
    xi: Option<f64>,
    rho: Option<f64>,
) -> Result<(Dimensionless, f64), Failure> {
    let rings_style = r1.is_some() || r2.is_some() || d.is_some();
    let dimless_style = xi.is_some() || rho.is_some();
    match (rings_style, dimless_style) {
        (true, false) => {
            let (Some(r1), Some(r2), Some(d)) = (r1, r2, d) else {
                return Err(Failure::usage("ring input style needs --r1, --r2, and --d"));
            };
            let rings = RingConfig::new(r1, r2, d)?;
            Ok((to_dimensionless(&rings), d))
        }
        (false, true) => {
            let (Some(xi), Some(rho)) = (xi, rho) else {
                return Err(Failure::usage(
                    "dimensionless input style needs both --xi and --rho",
                ));
            };
            Ok((Dimensionless::new(xi, rho)?, 1.0))
        }
        (true, true) => Err(Failure::usage(
            "choose one input style: --r1/--r2/--d or --xi/--rho",
        )),
        (false, false) => Err(Failure::usage(
            "missing inputs: provide --r1/--r2/--d or --xi/--rho",
        )),
    }
}

#[derive(Serialize)]
struct BranchReport {
    branch: Branch,
    w: f64,
    b: f64,
    a: f64,
    lambda0: f64,
    catenoid_area: f64,
    area_difference: f64,
}

#[derive(Serialize)]
struct SolveReport {
    classification: &'static str,
    xi: f64,
    rho: f64,
    d: f64,
    goldschmidt_area: f64,
    critical_distance: f64,
    branches: Vec<BranchReport>,
}

fn classification_name(result: &ExistenceResult) -> &'static str {
    match result {
        ExistenceResult::NoSolution => "no_solution",
        ExistenceResult::Critical(_) => "critical",
        ExistenceResult::TwoSolutions { .. } => "two_solutions",
    }
}

fn ground_eigenvalue(b: f64, w: f64, n: usize) -> Result<f64, Failure> {
    let problem = StabilityProblem::new(b, w, n)?;
    Ok(spectrum(&problem, 1)?[0].eigenvalue)
}

fn branch_report(
    sol: &CatenoidSolution,
    rings: &RingConfig,
    grid_n: usize,
) -> Result<BranchReport, Failure> {
    let area = catenoid_area(sol, rings.d)?;
    let goldschmidt = goldschmidt_area(rings);
    Ok(BranchReport {
        branch: sol.branch,
        w: sol.w,
        b: sol.b,
        a: sol.a,
        lambda0: ground_eigenvalue(sol.b, sol.w, grid_n)?,
        catenoid_area: area,
        area_difference: area - goldschmidt,
    })
}

#[derive(Serialize)]
struct SolveInputs {
    xi: f64,
    rho: f64,
    d: f64,
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let (params, d) = resolve_inputs(args.r1, args.r2, args.d, args.xi, args.rho)?;
    let rings = params.to_rings(d)?;
    let result = scale_result(classify_banded(&params, args.tol, args.band)?, d);
    log::info!("classified ({}, {}) as {}", params.xi, params.rho, classification_name(&result));

    let branches = result
        .branches()
        .into_iter()
        .map(|sol| branch_report(sol, &rings, args.grid))
        .collect::<Result<Vec<_>, _>>()?;

    let report = SolveReport {
        classification: classification_name(&result),
        xi: params.xi,
        rho: params.rho,
        d,
        goldschmidt_area: goldschmidt_area(&rings),
        critical_distance: critical_distance(rings.r1, rings.r2)?.d_c,
        branches,
    };
    let envelope = Envelope {
        command: "solve",
        inputs: SolveInputs {
            xi: params.xi,
            rho: params.rho,
            d,
        },
        results: report,
        meta: Meta::new(args.tol).with_grid(args.grid).with_band(args.band),
    };
    print!("{}", render(&envelope));
    Ok(())
}

fn scale_result(result: ExistenceResult, d: f64) -> ExistenceResult {
    match result {
        ExistenceResult::NoSolution => ExistenceResult::NoSolution,
        ExistenceResult::Critical(sol) => ExistenceResult::Critical(sol.with_scale(d)),
        ExistenceResult::TwoSolutions { outer, inner } => ExistenceResult::TwoSolutions {
            outer: outer.with_scale(d),
            inner: inner.with_scale(d),
        },
    }
}

#[derive(Serialize)]
struct PhaseDiagramInputs {
    space: Space,
    x_min: f64,
    x_max: f64,
    x_steps: usize,
    y_min: f64,
    y_max: f64,
    y_steps: usize,
    curve_points: usize,
}

#[derive(Serialize)]
struct PhaseDiagramReport {
    space: Space,
    grid: Vec<catenoid::PhaseDiagramRow>,
    critical_curve: Vec<catenoid::PhaseDiagramRow>,
}

fn cmd_phase_diagram(args: PhaseDiagramArgs) -> Result<(), Failure> {
    let space = match args.space {
        SpaceArg::XiRho => Space::XiRho,
        SpaceArg::BW => Space::BW,
    };
    if args.x_steps < 2 || args.y_steps < 2 {
        return Err(Failure::usage("need at least 2 steps per axis"));
    }
    let spec = PhaseDiagramSpec {
        space,
        c1_min: args.x_min,
        c1_max: args.x_max,
        c1_steps: args.x_steps,
        c2_min: args.y_min,
        c2_max: args.y_max,
        c2_steps: args.y_steps,
        curve_points: args.curve_points,
    };
    let pd = phase_diagram(&spec)?;
    log::info!("sampled {} grid points, {} curve points", pd.grid.len(), pd.curve.len());

    let text = match args.format {
        Format::Csv => {
            let mut csv = String::from("space,coord1,coord2,region\n");
            for row in pd.grid.iter().chain(pd.curve.iter()) {
                let space_name = match row.space {
                    Space::XiRho => "xi-rho",
                    Space::BW => "b-w",
                };
                let region_name = serde_json::to_value(row.region)
                    .expect("region serializes")
                    .as_str()
                    .expect("region is a string")
                    .to_owned();
                csv.push_str(&format!(
                    "{space_name},{},{},{region_name}\n",
                    csv_float(row.coord1),
                    csv_float(row.coord2),
                ));
            }
            csv
        }
        Format::Json => {
            let envelope = Envelope {
                command: "phase-diagram",
                inputs: PhaseDiagramInputs {
                    space,
                    x_min: args.x_min,
                    x_max: args.x_max,
                    x_steps: args.x_steps,
                    y_min: args.y_min,
                    y_max: args.y_max,
                    y_steps: args.y_steps,
                    curve_points: args.curve_points,
                },
                results: PhaseDiagramReport {
                    space,
                    grid: pd.grid,
                    critical_curve: pd.curve,
                },
                meta: Meta::new(DEFAULT_REL_TOL),
            };
            render(&envelope)
        }
    };
    match &args.out {
        Some(path) => write_file(path, &text).map_err(Failure::io)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ModeSummary {
    index: usize,
    eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    k2: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumInputs {
    b: f64,
    w: f64,
    modes: usize,
    grid: usize,
}

#[derive(Serialize)]
struct SpectrumReport {
    b: f64,
    w: f64,
    modes: Vec<ModeSummary>,
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    if args.w <= 0.0 || args.w.is_nan() {
        return Err(Failure::usage("--w must be positive"));
    }
    let problem = StabilityProblem::new(args.b, args.w, args.grid)?;
    let modes = spectrum(&problem, args.modes)?;

    if let Some(path) = &args.dump_modes {
        let mut csv = String::from("mode,v,psi\n");
        for (index, mode) in modes.iter().enumerate() {
            for (v, psi) in mode.grid.iter().zip(&mode.values) {
                csv.push_str(&format!("{index},{},{}\n", csv_float(*v), csv_float(*psi)));
            }
        }
        write_file(path, &csv).map_err(Failure::io)?;
    }

    let envelope = Envelope {
        command: "spectrum",
        inputs: SpectrumInputs {
            b: args.b,
            w: args.w,
            modes: args.modes,
            grid: args.grid,
        },
        results: SpectrumReport {
            b: args.b,
            w: args.w,
            modes: modes
                .iter()
                .enumerate()
                .map(|(index, m)| ModeSummary {
                    index,
                    eigenvalue: m.eigenvalue,
                    k2: m.k2,
                })
                .collect(),
        },
        meta: Meta::new(DEFAULT_REL_TOL).with_grid(args.grid),
    };
    print!("{}", render(&envelope));
    Ok(())
}

#[derive(Serialize)]
struct ExactBlock {
    k: f64,
    k2: f64,
    beta: f64,
    eigenvalue: f64,
    determinant_roots: Vec<f64>,
}

#[derive(Serialize)]
struct PerturbativeBlock {
    k2: f64,
    delta: f64,
    gamma0: f64,
    beta: f64,
    gamma_full: f64,
}

#[derive(Serialize)]
struct UnstableReport {
    b_base: f64,
    w_c: f64,
    epsilon: f64,
    b_at_epsilon: f64,
    w: f64,
    exact: ExactBlock,
    perturbative: PerturbativeBlock,
    relative_gap: f64,
    fd_lambda0: f64,
}

#[derive(Serialize)]
struct UnstableInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    grid: usize,
}

fn cmd_unstable(args: UnstableArgs) -> Result<(), Failure> {
    let rings_style = args.r1.is_some() || args.r2.is_some() || args.d.is_some();
    let family_style = args.b.is_some() || args.epsilon.is_some();

    // resolve to the critical base point (b_c, w_c) plus the inner (b, w)
    let (b_base, w_c, epsilon, b_eps, w) = match (rings_style, family_style) {
        (true, false) => {
            let (Some(r1), Some(r2), Some(d)) = (args.r1, args.r2, args.d) else {
                return Err(Failure::usage("ring input style needs --r1, --r2, and --d"));
            };
            let rings = RingConfig::new(r1, r2, d)?;
            let params = to_dimensionless(&rings);
            let inner = match classify_banded(&params, DEFAULT_REL_TOL, CRITICAL_BAND)? {
                ExistenceResult::TwoSolutions { inner, .. } => inner,
                _ => {
                    return Err(Failure {
                        code: 5,
                        message: format!(
                            "no inner branch: (xi, rho) = ({}, {}) is not above the critical curve",
                            params.xi, params.rho
                        ),
                    })
                }
            };
            let base = critical_point_for_xi(params.xi)?;
            (
                base.b,
                base.w_c,
                inner.w - base.w_c,
                inner.b,
                inner.w,
            )
        }
        (false, true) => {
            let (Some(b), Some(epsilon)) = (args.b, args.epsilon) else {
                return Err(Failure::usage(
                    "family input style needs both --b and --epsilon",
                ));
            };
            if epsilon <= 0.0 || epsilon.is_nan() {
                return Err(Failure::usage("--epsilon must be positive"));
            }
            let w_c = critical_w(b);
            let path = fixed_xi_b_path(b, w_c);
            (b, w_c, epsilon, path(epsilon), w_c + epsilon)
        }
        _ => {
            return Err(Failure::usage(
                "choose one input style: --r1/--r2/--d or --b/--epsilon",
            ))
        }
    };

    let exact = unstable_mode_exact(b_eps, w, args.grid)?;
    let pert = unstable_mode_perturbative(fixed_xi_b_path(b_base, w_c), w_c, epsilon)?;
    let fd_lambda0 = ground_eigenvalue(b_eps, w, args.grid)?;
    let k2_exact = exact.k * exact.k;
    log::info!("exact k^2 = {k2_exact}, leading order {}", pert.k2);

    if let Some(path) = &args.dump_mode {
        let mut csv = String::from("v,psi\n");
        for (v, psi) in exact.mode.grid.iter().zip(&exact.mode.values) {
            csv.push_str(&format!("{},{}\n", csv_float(*v), csv_float(*psi)));
        }
        write_file(path, &csv).map_err(Failure::io)?;
    }

    let envelope = Envelope {
        command: "unstable",
        inputs: UnstableInputs {
            r1: args.r1,
            r2: args.r2,
            d: args.d,
            b: args.b,
            epsilon: args.epsilon,
            grid: args.grid,
        },
        results: UnstableReport {
            b_base,
            w_c,
            epsilon,
            b_at_epsilon: b_eps,
            w,
            exact: ExactBlock {
                k: exact.k,
                k2: k2_exact,
                beta: exact.beta,
                eigenvalue: -k2_exact,
                determinant_roots: exact.determinant_roots.clone(),
            },
            perturbative: PerturbativeBlock {
                k2: pert.k2,
                delta: pert.delta,
                gamma0: pert.gamma0,
                beta: pert.beta,
                gamma_full: pert.gamma_full,
            },
            relative_gap: (k2_exact - pert.k2).abs() / k2_exact,
            fd_lambda0,
        },
        meta: Meta::new(DEFAULT_REL_TOL).with_grid(args.grid),
    };
    print!("{}", render(&envelope));
    Ok(())
}

#[derive(Serialize)]
struct AreaBranch {
    branch: Branch,
    w: f64,
    b: f64,
    a: f64,
    catenoid_area: f64,
    area_difference: f64,
    exceeds_goldschmidt: bool,
}

#[derive(Serialize)]
struct CrossoverBlock {
    d_star: f64,
    d_critical: f64,
    beyond_crossover: bool,
}

#[derive(Serialize)]
struct AreasReport {
    classification: &'static str,
    goldschmidt_area: f64,
    branches: Vec<AreaBranch>,
    crossover: CrossoverBlock,
}

#[derive(Serialize)]
struct AreasInputs {
    r1: f64,
    r2: f64,
    d: f64,
}

fn cmd_areas(args: AreasArgs) -> Result<(), Failure> {
    let rings = RingConfig::new(args.r1, args.r2, args.d)?;
    let params = to_dimensionless(&rings);
    let result = scale_result(classify_banded(&params, args.tol, CRITICAL_BAND)?, rings.d);
    let goldschmidt = goldschmidt_area(&rings);

    let branches = result
        .branches()
        .into_iter()
        .map(|sol| -> Result<AreaBranch, Failure> {
            let area = catenoid_area(sol, rings.d)?;
            Ok(AreaBranch {
                branch: sol.branch,
                w: sol.w,
                b: sol.b,
                a: sol.a,
                catenoid_area: area,
                area_difference: area - goldschmidt,
                exceeds_goldschmidt: area > goldschmidt,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    // crossover scales linearly with the larger radius
    let scale = rings.r1.max(rings.r2);
    let crossover = metastability_crossover(rings.r1.min(rings.r2) / scale)?;
    let d_star = crossover.d_star * scale;
    let d_critical = crossover.d_critical * scale;

    let envelope = Envelope {
        command: "areas",
        inputs: AreasInputs {
            r1: args.r1,
            r2: args.r2,
            d: args.d,
        },
        results: AreasReport {
            classification: classification_name(&result),
            goldschmidt_area: goldschmidt,
            branches,
            crossover: CrossoverBlock {
                d_star,
                d_critical,
                beyond_crossover: rings.d > d_star,
            },
        },
        meta: Meta::new(args.tol),
    };
    print!("{}", render(&envelope));
    Ok(())
}

#[derive(Serialize)]
struct CriticalDistanceInputs {
    r1: f64,
    r2: f64,
}

fn cmd_critical_distance(args: CriticalDistanceArgs) -> Result<(), Failure> {
    let cd = critical_distance(args.r1, args.r2)?;
    let envelope = Envelope {
        command: "critical-distance",
        inputs: CriticalDistanceInputs {
            r1: args.r1,
            r2: args.r2,
        },
        results: cd,
        meta: Meta::new(DEFAULT_REL_TOL),
    };
    print!("{}", render(&envelope));
    Ok(())
}
