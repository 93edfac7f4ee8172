//! Generic numerical kernels: bracketed scalar root finding and a Dirichlet
//! tridiagonal eigensolver. These are the independent oracles the higher
//! modules are checked against, so they deliberately use the most robust
//! textbook methods: guarded bisection (with an interleaved secant step) and
//! Sturm-sequence bisection on the second-order central-difference matrix.

use crate::error::{Error, Result};
use crate::model::{ModeResult, ModeSource};

/// A sign-change interval for a scalar root.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let straddles = f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0);
        if lo < hi && !f_lo.is_nan() && !f_hi.is_nan() && straddles {
            Ok(Self { lo, hi, f_lo, f_hi })
        } else {
            Err(Error::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }
}

/// Find a root of `f` inside `bracket`.
///
/// Alternates bisection with a secant step that is only accepted strictly
/// inside the current interval, so convergence is guaranteed and the result
/// never leaves the initial bracket. Stops when the interval width drops
/// below `rel_tol * max(1, |x|)` or the midpoint hits the ulp floor.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, rel_tol: f64) -> f64 {
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        mut f_hi,
    } = bracket;
    if f_lo == 0.0 {
        return lo;
    }
    if f_hi == 0.0 {
        return hi;
    }
    let mut secant_turn = false;
    loop {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            return mid; // interval at ulp resolution
        }
        if hi - lo <= rel_tol * mid.abs().max(1.0) {
            return mid;
        }
        let mut x = mid;
        if secant_turn && f_lo.is_finite() && f_hi.is_finite() && f_lo != f_hi {
            let s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if s.is_finite() && lo < s && s < hi {
                x = s;
            }
        }
        secant_turn = !secant_turn;
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
}

/// Uniform grid of `n` interior points on (lo, hi) with spacing
/// h = (hi - lo)/(n + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
}

impl GridSpec {
    pub fn new(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n >= 16 && lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { n, lo, hi })
        } else {
            Err(Error::InvalidGrid { n, lo, hi })
        }
    }

    pub fn h(&self) -> f64 {
        (self.hi - self.lo) / (self.n + 1) as f64
    }

    /// Interior points lo + h, ..., hi - h.
    pub fn interior(&self) -> Vec<f64> {
        let h = self.h();
        (1..=self.n).map(|i| self.lo + i as f64 * h).collect()
    }

    /// All n + 2 points including the Dirichlet endpoints.
    pub fn full(&self) -> Vec<f64> {
        let h = self.h();
        let mut pts = Vec::with_capacity(self.n + 2);
        pts.push(self.lo);
        pts.extend((1..=self.n).map(|i| self.lo + i as f64 * h));
        pts.push(self.hi);
        pts
    }

    /// The grid with exactly half the spacing (n -> 2n + 1).
    pub fn halved(&self) -> Self {
        Self {
            n: 2 * self.n + 1,
            ..*self
        }
    }
}

/// Sturm-sequence eigenvalue count: number of eigenvalues of the symmetric
/// tridiagonal matrix (diag, const off-diagonal e with e2 = e^2) below x.
fn sturm_count(diag: &[f64], e2: f64, pivmin: f64, x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - e2 / q };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn assemble(potential: &dyn Fn(f64) -> f64, grid: &GridSpec) -> (Vec<f64>, f64) {
    let h = grid.h();
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<f64> = grid
        .interior()
        .iter()
        .map(|&v| 2.0 * inv_h2 + potential(v))
        .collect();
    (diag, inv_h2)
}

/// The `n_modes` smallest Dirichlet eigenvalues of -d^2/dv^2 + V(v) on
/// (lo, hi), discretized with the standard second-order central difference,
/// each located by Sturm-sequence bisection to relative tolerance 1e-10.
/// Returned in increasing order.
pub fn sturm_eigenvalues<F: Fn(f64) -> f64>(
    potential: F,
    grid: &GridSpec,
    n_modes: usize,
) -> Result<Vec<f64>> {
    if n_modes > grid.n {
        return Err(Error::GridTooCoarse {
            requested: n_modes,
            available: grid.n,
        });
    }
    let (diag, inv_h2) = assemble(&potential, grid);
    let e2 = inv_h2 * inv_h2;
    let pivmin = f64::MIN_POSITIVE * e2.max(1.0);

    let mut gl = f64::INFINITY;
    let mut gu = f64::NEG_INFINITY;
    for &d in &diag {
        gl = gl.min(d - 2.0 * inv_h2);
        gu = gu.max(d + 2.0 * inv_h2);
    }

    let mut eigenvalues = Vec::with_capacity(n_modes);
    let mut floor = gl;
    for m in 1..=n_modes {
        let mut lo = floor;
        let mut hi = gu;
        for _ in 0..160 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-10 * mid.abs().max(1.0) || !(lo < mid && mid < hi) {
                break;
            }
            if sturm_count(&diag, e2, pivmin, mid) >= m {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let lambda = 0.5 * (lo + hi);
        floor = lo; // the (m+1)-th eigenvalue cannot lie below this
        eigenvalues.push(lambda);
    }
    Ok(eigenvalues)
}

/// Solve the tridiagonal system (diag - shift on the main diagonal given
/// directly in `d`, constant sub/super `e`) with partial pivoting. The
/// eliminated matrix gains one extra superdiagonal, tracked in `u2`.
fn solve_tridiag(d0: &[f64], e: f64, rhs: &[f64], pivmin: f64) -> Vec<f64> {
    let n = d0.len();
    let mut d = d0.to_vec();
    let mut u1 = vec![e; n]; // u1[i] = entry (i, i+1); last unused
    let mut u2 = vec![0.0; n];
    let mut l = vec![e; n]; // l[i] = entry (i, i-1); first unused
    let mut r = rhs.to_vec();
    u1[n - 1] = 0.0;
    l[0] = 0.0;

    for i in 0..n - 1 {
        if l[i + 1].abs() > d[i].abs() {
            // swap rows i and i+1
            let (a, b) = (d[i], u1[i]);
            d[i] = l[i + 1];
            u1[i] = d[i + 1];
            u2[i] = u1[i + 1];
            l[i + 1] = a;
            d[i + 1] = b;
            u1[i + 1] = 0.0;
            r.swap(i, i + 1);
        }
        let mut piv = d[i];
        if piv.abs() < pivmin {
            piv = if piv < 0.0 { -pivmin } else { pivmin };
            d[i] = piv;
        }
        let m = l[i + 1] / piv;
        d[i + 1] -= m * u1[i];
        u1[i + 1] -= m * u2[i];
        r[i + 1] -= m * r[i];
    }
    if d[n - 1].abs() < pivmin {
        d[n - 1] = if d[n - 1] < 0.0 { -pivmin } else { pivmin };
    }

    let mut x = vec![0.0; n];
    x[n - 1] = r[n - 1] / d[n - 1];
    if n >= 2 {
        x[n - 2] = (r[n - 2] - u1[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (r[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / d[i];
    }
    x
}

/// Eigenfunction for an eigenvalue previously produced by
/// [`sturm_eigenvalues`] on the same grid, via inverse iteration on the
/// shifted tridiagonal matrix. Normalized per `ModeResult`.
pub fn eigenvector_for<F: Fn(f64) -> f64>(
    potential: F,
    grid: &GridSpec,
    eigenvalue: f64,
) -> Result<ModeResult> {
    let (diag, inv_h2) = assemble(&potential, grid);
    let n = grid.n;
    let e = -inv_h2;
    let pivmin = f64::MIN_POSITIVE * (inv_h2 * inv_h2).max(1.0);
    let shifted: Vec<f64> = diag.iter().map(|&d| d - eigenvalue).collect();

    // attainable residual floor for the shifted solve is O(eps * ||T||)
    let anorm = diag.iter().fold(0.0f64, |m, &d| m.max(d.abs())) + 2.0 * inv_h2;
    let tol = 100.0 * f64::EPSILON * anorm;
    let residual_inf = |v: &[f64]| -> f64 {
        let mut r = 0.0f64;
        for i in 0..n {
            let mut s = shifted[i] * v[i];
            if i > 0 {
                s += e * v[i - 1];
            }
            if i + 1 < n {
                s += e * v[i + 1];
            }
            r = r.max(s.abs());
        }
        r
    };

    let mut x = vec![1.0; n];
    let mut converged = false;
    for _ in 0..100 {
        let mut y = solve_tridiag(&shifted, e, &x, pivmin);
        let mut imax = 0;
        for (i, v) in y.iter().enumerate() {
            if v.abs() > y[imax].abs() {
                imax = i;
            }
        }
        let peak = y[imax];
        if peak == 0.0 || !peak.is_finite() {
            return Err(Error::NoConvergence(100));
        }
        for v in &mut y {
            *v /= peak;
        }
        x = y;
        if residual_inf(&x) <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(100));
    }

    let mut values = Vec::with_capacity(n + 2);
    values.push(0.0);
    values.extend_from_slice(&x);
    values.push(0.0);
    let k2 = if eigenvalue < 0.0 {
        Some(-eigenvalue)
    } else {
        None
    };
    Ok(ModeResult::from_samples(
        eigenvalue,
        grid.full(),
        values,
        ModeSource::FiniteDifference,
        k2,
        None,
    ))
}

// --- small stable scalar helpers used across the solver modules ---

/// coth(x) = 1/tanh(x).
pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// sinh(x)/x, stable through x = 0.
pub(crate) fn sinhc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0)
    } else {
        x.sinh() / x
    }
}

/// sinh(x) - x without cancellation for small x.
pub(crate) fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() < 0.25 {
        let x2 = x * x;
        x * x2 / 6.0
            * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0 * (1.0 + x2 / 110.0))))
    } else {
        x.sinh() - x
    }
}
