//! The Schrodinger-type stability operator J_b = -d^2/dv^2 - 2/cosh^2(v + b)
//! on (-w, w) with Dirichlet ends, arising from the second variation of the
//! area functional.
//!
//! J_b + 1 factorizes as L'L with L = d/dv + tanh(v + b), whose partner L L'
//! is the free operator plus one. That gives the exact zero mode at
//! criticality, Psi = 1 + (delta - v) tanh(v + b), and the exact unstable
//! mode of the inner branch, Psi_k = L'(beta cosh(kv) - sinh(kv)/k). The
//! finite-difference spectrum from `numerics` serves as the independent
//! oracle for both.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::existence::critical_w;
use crate::model::{ModeResult, ModeSource};
use crate::numerics::{coth, eigenvector_for, find_root, sinhc, sturm_eigenvalues, Bracket, GridSpec};

/// Residual tolerance on 2w = coth(w - b) + coth(w + b) below which a pair
/// (b, w) is accepted as critical.
pub const CRITICALITY_TOL: f64 = 1e-8;

/// Search ceiling for the boundary-determinant root in k.
pub const K_HI: f64 = 2.0;

const K_SCAN_CELLS: usize = 4000;

/// A stability eigenproblem: interval half-width w, potential offset b, and
/// the discretization grid aligned to (-w, w).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityProblem {
    pub b: f64,
    pub w: f64,
    pub grid: GridSpec,
}

impl StabilityProblem {
    pub fn new(b: f64, w: f64, n: usize) -> Result<Self> {
        let grid = GridSpec::new(n, -w, w)?;
        Ok(Self { b, w, grid })
    }

    fn criticality_residual(&self) -> f64 {
        2.0 * self.w - coth(self.w - self.b) - coth(self.w + self.b)
    }

    fn require_critical(&self) -> Result<()> {
        let residual = self.criticality_residual();
        if residual.abs() > CRITICALITY_TOL * self.w.max(1.0) {
            return Err(Error::NotCritical {
                b: self.b,
                w: self.w,
                residual,
            });
        }
        Ok(())
    }
}

/// The DPT well, -2/cosh^2(v + b).
pub fn potential(v: f64, b: f64) -> f64 {
    let c = (v + b).cosh();
    -2.0 / (c * c)
}

/// The zero-mode offset delta at a critical pair (b, w_c), in the symmetric
/// form [coth(w_c - b) - coth(w_c + b)]/2. The two one-sided expressions
/// delta = w - coth(w + b) and delta = coth(w - b) - w agree with it only on
/// the critical curve, which is enforced.
pub fn delta_of(b: f64, w_c: f64) -> Result<f64> {
    let residual = 2.0 * w_c - coth(w_c - b) - coth(w_c + b);
    if residual.abs() > CRITICALITY_TOL * w_c.max(1.0) {
        return Err(Error::NotCritical { b, w: w_c, residual });
    }
    Ok(0.5 * (coth(w_c - b) - coth(w_c + b)))
}

/// The analytic zero mode Psi(v) = 1 + (delta - v) tanh(v + b) sampled on
/// the problem grid, normalized to unit peak. Requires w = w_c(b).
pub fn zero_mode(problem: &StabilityProblem) -> Result<ModeResult> {
    problem.require_critical()?;
    let delta = delta_of(problem.b, problem.w)?;
    let grid = problem.grid.full();
    let values: Vec<f64> = grid
        .iter()
        .map(|&v| 1.0 + (delta - v) * (v + problem.b).tanh())
        .collect();
    Ok(ModeResult::from_samples(
        0.0,
        grid,
        values,
        ModeSource::Analytic,
        None,
        None,
    ))
}

/// Location of the single interior extremum of the zero mode: the unique
/// root of sinh(2(v + b)) + 2(v - delta) = 0 (the left side is strictly
/// increasing in v).
pub fn zero_mode_max_location(b: f64, delta: f64) -> f64 {
    let f = |v: f64| (2.0 * (v + b)).sinh() + 2.0 * (v - delta);
    let mut half = 1.0;
    for _ in 0..200 {
        if f(-half) < 0.0 && f(half) > 0.0 {
            break;
        }
        half *= 2.0;
    }
    find_root(f, Bracket::new(f, -half, half).expect("monotone sign change"), 1e-14)
}

/// Finite-difference spectrum of J_b on the problem interval: the lowest
/// `n_modes` eigenpairs from the Sturm-sequence oracle.
pub fn spectrum(problem: &StabilityProblem, n_modes: usize) -> Result<Vec<ModeResult>> {
    let b = problem.b;
    let lambdas = sturm_eigenvalues(|v| potential(v, b), &problem.grid, n_modes)?;
    lambdas
        .into_iter()
        .map(|lambda| eigenvector_for(|v| potential(v, b), &problem.grid, lambda))
        .collect()
}

/// Residuals of the factorization identities applied to a sampled function.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FactorizationReport {
    pub h: f64,
    /// max |(L'L - 1)f - J_b f| over the interior, both sides by finite
    /// differences.
    pub bound_route: f64,
    /// max |(L L' - 1)f - (-f'')| over the interior: the partner operator is
    /// the free one.
    pub free_route: f64,
}

/// Numerically verify J_b = L'L - 1 and L L' - 1 = -d^2/dv^2 on a trial
/// function, with L = d/dv + tanh(v + b). Returns the max interior
/// residuals, each O(h^2) for smooth f.
pub fn factorization_partner_check<F: Fn(f64) -> f64>(
    problem: &StabilityProblem,
    f: F,
) -> FactorizationReport {
    let grid = problem.grid.full();
    let h = problem.grid.h();
    let b = problem.b;
    let n = grid.len();
    let fv: Vec<f64> = grid.iter().map(|&v| f(v)).collect();
    let t: Vec<f64> = grid.iter().map(|&v| (v + b).tanh()).collect();

    let d1 = |g: &[f64], i: usize| (g[i + 1] - g[i - 1]) / (2.0 * h);
    let d2 = |g: &[f64], i: usize| (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h);

    // L f and L' f on the interior (index 1..n-1)
    let mut lf = vec![0.0; n];
    let mut ltf = vec![0.0; n];
    for i in 1..n - 1 {
        let df = d1(&fv, i);
        lf[i] = df + t[i] * fv[i];
        ltf[i] = -df + t[i] * fv[i];
    }

    let mut bound_route = 0.0f64;
    let mut free_route = 0.0f64;
    for i in 2..n - 2 {
        let jbf = -d2(&fv, i) + potential(grid[i], b) * fv[i];
        let ltlf = -d1(&lf, i) + t[i] * lf[i];
        bound_route = bound_route.max((ltlf - fv[i] - jbf).abs());

        let lltf = d1(&ltf, i) + t[i] * ltf[i];
        free_route = free_route.max((lltf - fv[i] + d2(&fv, i)).abs());
    }
    FactorizationReport {
        h,
        bound_route,
        free_route,
    }
}

/// Evaluate the exact mode ansatz Psi_k(v) = A(v) + beta B(v) with
/// A = cosh(kv) - tanh(v + b) sinh(kv)/k and
/// B = -k sinh(kv) + tanh(v + b) cosh(kv).
/// Stable through k -> 0, where A + beta B tends to the critical zero mode.
pub fn psi_k(v: f64, k: f64, beta: f64, b: f64) -> f64 {
    let (a_part, b_part) = psi_k_parts(v, k, b);
    a_part + beta * b_part
}

fn psi_k_parts(v: f64, k: f64, b: f64) -> (f64, f64) {
    let t = (v + b).tanh();
    let c = (k * v).cosh();
    let s = (k * v).sinh();
    let s_over_k = v * sinhc(k * v);
    (c - t * s_over_k, -k * s + t * c)
}

/// Dirichlet determinant whose zeros in k are the candidate eigenvalues
/// -k^2 of J_b on (-w, w).
fn boundary_determinant(k: f64, b: f64, w: f64) -> f64 {
    let (ap, bp) = psi_k_parts(w, k, b);
    let (am, bm) = psi_k_parts(-w, k, b);
    ap * bm - am * bp
}

/// The exact unstable mode of an inner catenoid.
#[derive(Debug, Clone)]
pub struct UnstableMode {
    pub mode: ModeResult,
    pub k: f64,
    pub beta: f64,
    /// All physical determinant roots found in (0, K_HI], smallest first.
    /// Only the smallest is returned as `mode`; with more than one entry the
    /// ground state should be confirmed against the FD oracle.
    pub determinant_roots: Vec<f64>,
}

/// Solve the boundary determinant for the unstable mode of the inner branch
/// (w > w_c(b)): scan (0, K_HI] for sign changes, refine each root, drop the
/// spurious factorization root at k = 1 (where the ansatz collapses because
/// L' annihilates cosh(v + b)), and return the smallest k with its mode
/// sampled on an n-point grid.
pub fn unstable_mode_exact(b: f64, w: f64, grid_n: usize) -> Result<UnstableMode> {
    let w_c = critical_w(b);
    if w <= w_c || w.is_nan() {
        return Err(Error::NotInner { b, w, w_c });
    }

    let det = |k: f64| boundary_determinant(k, b, w);
    let mut roots = Vec::new();
    let mut prev_k = 1e-12;
    let mut prev_d = det(prev_k);
    for i in 1..=K_SCAN_CELLS {
        let k = K_HI * i as f64 / K_SCAN_CELLS as f64;
        let d = det(k);
        if prev_d != 0.0 && (d == 0.0 || (prev_d < 0.0) != (d < 0.0)) {
            let root = find_root(
                det,
                Bracket::from_values(prev_k, k, prev_d, d)?,
                1e-13,
            );
            if (root - 1.0).abs() > 1e-9 {
                roots.push(root);
            }
        }
        prev_k = k;
        prev_d = d;
    }
    let &k = roots.first().ok_or(Error::NoRoot { b, w, k_hi: K_HI })?;

    let (ap, bp) = psi_k_parts(w, k, b);
    let (am, bm) = psi_k_parts(-w, k, b);
    let beta = if bp.abs() >= bm.abs() { -ap / bp } else { -am / bm };
    let beta = beta + 0.0; // drop the sign of a negative zero

    let grid = GridSpec::new(grid_n, -w, w)?;
    let points = grid.full();
    let values: Vec<f64> = points.iter().map(|&v| psi_k(v, k, beta, b)).collect();
    let mode = ModeResult::from_samples(
        -k * k,
        points,
        values,
        ModeSource::Analytic,
        Some(k * k),
        Some(beta),
    );
    Ok(UnstableMode {
        mode,
        k,
        beta,
        determinant_roots: roots,
    })
}

/// Leading-order description of the unstable mode just above criticality.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PerturbativeMode {
    pub epsilon: f64,
    /// Leading eigenvalue coefficient: k^2 = 3 epsilon / w_c.
    pub k2: f64,
    pub delta: f64,
    /// gamma0 = delta (1 - delta^2)/3, the epsilon -> 0 limit of gamma.
    pub gamma0: f64,
    /// beta ~ delta + gamma0 k^2.
    pub beta: f64,
    /// The full gamma expression evaluated at (b(epsilon), w_c + epsilon).
    pub gamma_full: f64,
    /// The two boundary-condition forms of k^2 with gamma = gamma_full;
    /// algebraically identical, kept separate as a cross-check.
    pub k2_form_plus: f64,
    pub k2_form_minus: f64,
}

/// Expand the unstable mode along a family b(epsilon) through the critical
/// point (b(0), w_c), with w = w_c + epsilon. See [`fixed_xi_b_path`] for
/// the family used by the solver pipeline.
pub fn unstable_mode_perturbative<F: Fn(f64) -> f64>(
    b_path: F,
    w_c: f64,
    epsilon: f64,
) -> Result<PerturbativeMode> {
    let b_c = b_path(0.0);
    let delta = delta_of(b_c, w_c)?;
    let k2 = 3.0 * epsilon / w_c;
    let gamma0 = delta * (1.0 - delta * delta) / 3.0;
    let beta = delta + gamma0 * k2;

    let w = w_c + epsilon;
    let b = b_path(epsilon);
    let cp = coth(w + b);
    let cm = coth(w - b);
    let w2 = w * w;
    let numerator = 2.0 * delta * (w2 + 3.0 * cp * cm)
        + (w2 - 3.0 * delta * w - 3.0 * delta * delta) * cp
        - (w2 + 3.0 * delta * w - 3.0 * delta * delta) * cm;
    let gamma_full = w / 3.0 * numerator / (cp + cm - 2.0 * w) + 0.0;

    let w3 = w2 * w;
    let k2_form_plus = 6.0 * (cp - w + delta)
        / (w3 - 3.0 * delta * w2 - 6.0 * gamma_full - 3.0 * w * (w - 2.0 * delta) * cp);
    let k2_form_minus = 6.0 * (cm - w - delta)
        / (w3 + 3.0 * delta * w2 + 6.0 * gamma_full - 3.0 * w * (w + 2.0 * delta) * cm);

    Ok(PerturbativeMode {
        epsilon,
        k2,
        delta,
        gamma0,
        beta,
        gamma_full,
        k2_form_plus,
        k2_form_minus,
    })
}

/// The b(epsilon) family obtained by re-solving the xi component of the
/// boundary system at fixed xi with w = w_c + epsilon. Its slope at zero is
/// b'(0) = -delta/w_c, the tangent of the solution set at the fold.
pub fn fixed_xi_b_path(b_c: f64, w_c: f64) -> impl Fn(f64) -> f64 {
    let xi = w_c.sinh() * b_c.sinh() / w_c;
    move |epsilon: f64| {
        let w = w_c + epsilon;
        (xi / sinhc(w)).asinh()
    }
}
