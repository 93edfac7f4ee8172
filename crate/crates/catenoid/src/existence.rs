//! The catenoid existence problem: classify a ring configuration as having
//! no, one (critical), or two spanning catenoids, trace the critical curve
//! in both half-planes, and compute the critical ring separation.
//!
//! The boundary system reduces to the scalar equation rho * w = h(w) with
//! h monotone increasing, so the line rho * w either misses, touches, or
//! crosses h twice. Classification locates the minimum of
//! H(w) = h(w) - rho * w and brackets the crossings on each side.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Branch, CatenoidSolution, CriticalPoint, Dimensionless, ExistenceResult, RingConfig};
use crate::numerics::{coth, find_root, sinh_minus_x, sinhc, Bracket};

/// Relative half-width of the near-tangency band in which a configuration is
/// declared critical: |H(w*)| <= band * max(1, rho).
pub const CRITICAL_BAND: f64 = 1e-9;

/// Hard cap on bracket-growth searches.
pub const GROWTH_LIMIT: f64 = 1e6;

const ROOT_TOL_TIGHT: f64 = 1e-15;

/// w0: the unique root of w = coth(w), the b = 0 critical half-width.
pub fn w0() -> f64 {
    static W0: OnceLock<f64> = OnceLock::new();
    *W0.get_or_init(|| {
        let f = |w: f64| w - coth(w);
        find_root(f, Bracket::new(f, 1.0, 2.0).expect("sign change"), ROOT_TOL_TIGHT)
    })
}

/// rho0 = cosh(w0)/w0, the equal-ring critical aspect ratio.
pub fn rho0() -> f64 {
    let w = w0();
    w.cosh() / w
}

/// h(w) = cosh(w) sqrt(1 + w^2 xi^2 / sinh^2(w)), continued by its limit
/// sqrt(1 + xi^2) at w = 0.
pub fn h_function(w: f64, xi: f64) -> f64 {
    if w == 0.0 {
        return (1.0 + xi * xi).sqrt();
    }
    let t = xi / sinhc(w); // = xi * w / sinh(w)
    w.cosh() * (1.0 + t * t).sqrt()
}

/// dh/dw, from h^2 = cosh^2(w) + xi^2 (w coth w)^2.
pub fn h_prime(w: f64, xi: f64) -> f64 {
    let s = w.sinh();
    // sinh(w) cosh(w) - w, cancellation-free for small w
    let p = 0.5 * sinh_minus_x(2.0 * w);
    let up = (2.0 * w).sinh() + 2.0 * xi * xi * (w / w.tanh()) * p / (s * s);
    up / (2.0 * h_function(w, xi))
}

fn grow_until<F: Fn(f64) -> bool>(mut hi: f64, pred: F) -> Result<f64> {
    while !pred(hi) {
        hi *= 2.0;
        if hi > GROWTH_LIMIT {
            return Err(Error::BracketGrowth { limit: GROWTH_LIMIT });
        }
    }
    Ok(hi)
}

fn shrink_until<F: Fn(f64) -> bool>(mut lo: f64, pred: F) -> Result<f64> {
    while !pred(lo) {
        lo *= 0.5;
        if lo < 1.0 / GROWTH_LIMIT / GROWTH_LIMIT {
            return Err(Error::BracketGrowth { limit: GROWTH_LIMIT });
        }
    }
    Ok(lo)
}

/// Recover the asymmetry constant b for a root w of rho * w = h(w), from
/// sinh(b) = xi * w / sinh(w), and verify the cosh component of the
/// boundary system as a consistency check on w.
pub fn recover_b(w: f64, params: &Dimensionless) -> Result<f64> {
    recover_b_slack(w, params, 0.0)
}

/// The cosh-consistency residual equals |h(w) - rho w| / cosh(w), so a
/// near-tangency solution accepted inside a widened band needs that much
/// absolute slack on top of the root-finder tolerance.
fn recover_b_slack(w: f64, params: &Dimensionless, abs_slack: f64) -> Result<f64> {
    let b = (params.xi / sinhc(w)).asinh();
    let expected = params.rho * w / w.cosh();
    let residual = (b.cosh() - expected).abs();
    if residual > 1e-8 * expected.abs().max(1.0) + abs_slack {
        return Err(Error::InconsistentRoot { w, residual });
    }
    Ok(b)
}

fn solution_at(
    w: f64,
    params: &Dimensionless,
    branch: Branch,
    abs_slack: f64,
) -> Result<CatenoidSolution> {
    let b = recover_b_slack(w, params, abs_slack)?;
    Ok(CatenoidSolution {
        w,
        b,
        a: 1.0 / (2.0 * w),
        branch,
    })
}

/// Classify a configuration by the tangency structure of rho * w vs h(w).
///
/// Solutions carry the unit-separation neck scale a = 1/(2w); use
/// [`classify_rings`] or [`CatenoidSolution::with_scale`] for physical d.
pub fn classify(params: &Dimensionless, rel_tol: f64) -> Result<ExistenceResult> {
    classify_banded(params, rel_tol, CRITICAL_BAND)
}

/// [`classify`] with an explicit near-tangency band (relative to max(1, rho)).
pub fn classify_banded(
    params: &Dimensionless,
    rel_tol: f64,
    band: f64,
) -> Result<ExistenceResult> {
    let (xi, rho) = (params.xi, params.rho);
    if rho <= xi.abs() || !rho.is_finite() || !xi.is_finite() {
        return Err(Error::DegenerateInput { rho, xi });
    }

    // locate the unique minimum of H(w) = h(w) - rho*w via H'(w) = 0
    let slope = |w: f64| h_prime(w, xi) - rho;
    let lo = shrink_until(1e-8, |w| slope(w) < 0.0)?;
    let hi = grow_until(lo.max(1.0), |w| slope(w) > 0.0)?;
    let w_star = find_root(slope, Bracket::new(slope, lo, hi)?, rel_tol);

    let height = |w: f64| h_function(w, xi) - rho * w;
    let h_min = height(w_star);
    let band_abs = band * rho.abs().max(1.0);

    if h_min > band_abs {
        return Ok(ExistenceResult::NoSolution);
    }
    if h_min.abs() <= band_abs {
        let slack = band_abs / w_star.cosh();
        return Ok(ExistenceResult::Critical(solution_at(
            w_star,
            params,
            Branch::Critical,
            slack,
        )?));
    }

    // H < 0 at the minimum and H > 0 towards both ends: exactly two roots
    let lo1 = shrink_until(0.5 * w_star, |w| height(w) > 0.0)?;
    let w1 = find_root(height, Bracket::new(height, lo1, w_star)?, rel_tol);
    let hi2 = grow_until(2.0 * w_star, |w| height(w) > 0.0)?;
    let w2 = find_root(height, Bracket::new(height, w_star, hi2)?, rel_tol);
    debug_assert!(w1 < w_star && w_star < w2);

    Ok(ExistenceResult::TwoSolutions {
        outer: solution_at(w1, params, Branch::Outer, 0.0)?,
        inner: solution_at(w2, params, Branch::Inner, 0.0)?,
    })
}

/// Classify physical ring data; solutions carry a = d/(2w).
pub fn classify_rings(rings: &RingConfig, rel_tol: f64) -> Result<ExistenceResult> {
    let params = crate::model::to_dimensionless(rings);
    let result = classify(&params, rel_tol)?;
    Ok(match result {
        ExistenceResult::NoSolution => ExistenceResult::NoSolution,
        ExistenceResult::Critical(sol) => ExistenceResult::Critical(sol.with_scale(rings.d)),
        ExistenceResult::TwoSolutions { outer, inner } => ExistenceResult::TwoSolutions {
            outer: outer.with_scale(rings.d),
            inner: inner.with_scale(rings.d),
        },
    })
}

/// The unique critical half-width w_c > |b| solving
/// 2 w = coth(w - |b|) + coth(w + |b|). Even in b.
pub fn critical_w(b: f64) -> f64 {
    let ba = b.abs();
    let f = |w: f64| 2.0 * w - coth(w - ba) - coth(w + ba);
    // coth(w - |b|) -> +inf at the left end, so the residual starts negative
    let lo = ba + 1e-8 * ba.max(1.0);
    let hi = grow_until((2.0 * ba).max(1.0), |w| f(w) > 0.0)
        .expect("2w - coth(w-b) - coth(w+b) turns positive for moderate w");
    find_root(f, Bracket::new(f, lo, hi).expect("sign change"), ROOT_TOL_TIGHT)
}

/// The critical curve parametrized by w_c >= w0: the (xi, rho) point where
/// the configuration with this tangency half-width sits, together with the
/// recovered b and the zero-mode offset delta.
pub fn critical_curve_point(w_c: f64) -> Result<CriticalPoint> {
    let w_zero = w0();
    if w_c < w_zero * (1.0 - 1e-12) || w_c.is_nan() {
        return Err(Error::OutOfRange { w_c, w0: w_zero });
    }
    let w15 = w_c * w_c.sqrt();
    let rho_c = w_c.cosh().powi(2) * (w_c - w_c.tanh()).sqrt() / w15;
    // w - coth(w) vanishes at w0; clamp the fp remainder
    let q = (w_c - coth(w_c)).max(0.0);
    let xi_c = w_c.sinh().powi(2) * q.sqrt() / w15;
    let params = Dimensionless::new(xi_c, rho_c)?;
    let b = recover_b(w_c, &params)?;
    let delta = 0.5 * (coth(w_c - b) - coth(w_c + b));
    Ok(CriticalPoint {
        b,
        w_c,
        delta,
        xi_c,
        rho_c,
    })
}

/// The critical point of the fixed-xi family: the curve point whose xi_c
/// equals |xi|, with b carrying the sign of xi.
pub fn critical_point_for_xi(xi: f64) -> Result<CriticalPoint> {
    let xa = xi.abs();
    let w_zero = w0();
    if xa == 0.0 {
        // exact symmetric point; the parametrization has a square-root cusp
        // here that would leave ~1e-8 of noise in xi_c
        return Ok(CriticalPoint {
            b: 0.0,
            w_c: w_zero,
            delta: 0.0,
            xi_c: 0.0,
            rho_c: rho0(),
        });
    }
    let f = |w: f64| {
        let q = (w - coth(w)).max(0.0);
        w.sinh().powi(2) * q.sqrt() / (w * w.sqrt()) - xa
    };
    let hi = grow_until(w_zero + 1.0, |w| f(w) > 0.0)?;
    let w_c = find_root(f, Bracket::new(f, w_zero, hi)?, ROOT_TOL_TIGHT);
    let mut point = critical_curve_point(w_c)?;
    if xi < 0.0 {
        point.b = -point.b;
        point.delta = -point.delta;
        point.xi_c = -point.xi_c;
    }
    Ok(point)
}

/// Jacobian of the (b, w) -> (xi, rho) map:
/// [cosh^2(b) sinh^2(w) - sinh^2(b) cosh^2(w)]/w^2 - sinh(w)cosh(w)/w^3.
/// Vanishes exactly on the critical curve.
pub fn jacobian(b: f64, w: f64) -> f64 {
    let (sb, cb) = (b.sinh(), b.cosh());
    let (sw, cw) = (w.sinh(), w.cosh());
    (cb * cb * sw * sw - sb * sb * cw * cw) / (w * w) - sw * cw / (w * w * w)
}

/// g(w_c) = tanh^2(w_c) sqrt[(w_c - coth w_c)/(w_c - tanh w_c)], the
/// monotone map from the critical half-width to the radius asymmetry
/// |r1 - r2|/(r1 + r2). Maps [w0, inf) onto [0, 1).
pub fn g_function(w_c: f64) -> f64 {
    let t = w_c.tanh();
    let q = (w_c - coth(w_c)).max(0.0);
    t * t * (q / (w_c - t)).sqrt()
}

/// The critical separation for given radii, with the tangency parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalDistance {
    pub w_c: f64,
    pub d_c: f64,
}

/// Invert g to the critical half-width for the radius ratio, then evaluate
/// the closed-form separation. Linear in the overall scale.
pub fn critical_distance(r1: f64, r2: f64) -> Result<CriticalDistance> {
    if !(r1.is_finite() && r2.is_finite() && r1 > 0.0 && r2 > 0.0) {
        return Err(Error::InvalidRings { r1, r2, d: f64::NAN });
    }
    let target = (r1 - r2).abs() / (r1 + r2);
    let f = |w: f64| g_function(w) - target;
    let lo = w0();
    // g has a square-root cusp at w0, so g(w0) evaluates to ~1e-8 rather
    // than 0; asymmetries below that level pin w_c = w0 to full precision
    let w_c = if target <= g_function(lo) {
        lo
    } else {
        let hi = grow_until(lo + 1.0, |w| f(w) > 0.0)?;
        find_root(f, Bracket::new(f, lo, hi)?, ROOT_TOL_TIGHT)
    };
    let d_c = (r1 + r2) * w_c * w_c.sqrt()
        / (w_c.cosh().powi(2) * (w_c - w_c.tanh()).sqrt());
    Ok(CriticalDistance { w_c, d_c })
}

/// Which half-plane a phase diagram is sampled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    XiRho,
    BW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    NoSolution,
    Outer,
    Inner,
    CriticalCurve,
    TwoSolutions,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseDiagramRow {
    pub space: Space,
    pub coord1: f64,
    pub coord2: f64,
    pub region: Region,
}

/// Grid bounds and resolution for a phase diagram sweep.
#[derive(Debug, Clone, Copy)]
pub struct PhaseDiagramSpec {
    pub space: Space,
    pub c1_min: f64,
    pub c1_max: f64,
    pub c1_steps: usize,
    pub c2_min: f64,
    pub c2_max: f64,
    pub c2_steps: usize,
    /// Samples of the critical-curve polyline.
    pub curve_points: usize,
}

impl PhaseDiagramSpec {
    fn validate(&self) -> Result<()> {
        let ok = self.c1_steps >= 2
            && self.c2_steps >= 2
            && self.curve_points >= 2
            && self.c1_min.is_finite()
            && self.c1_max.is_finite()
            && self.c2_min.is_finite()
            && self.c2_max.is_finite()
            && self.c1_min >= 0.0
            && self.c2_min >= 0.0
            && self.c1_min < self.c1_max
            && self.c2_min < self.c2_max;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGrid {
                n: self.c1_steps.min(self.c2_steps),
                lo: self.c1_min,
                hi: self.c1_max,
            })
        }
    }
}

/// Grid labels plus the critical-curve polyline as a separate record stream.
#[derive(Debug, Clone)]
pub struct PhaseDiagram {
    pub grid: Vec<PhaseDiagramRow>,
    pub curve: Vec<PhaseDiagramRow>,
}

/// Sample the phase diagram. Grid rows are emitted row-major with coord1
/// varying fastest; both half-planes use the canonical xi, b >= 0 domain.
pub fn phase_diagram(spec: &PhaseDiagramSpec) -> Result<PhaseDiagram> {
    spec.validate()?;
    let lerp = |min: f64, max: f64, i: usize, steps: usize| {
        min + (max - min) * i as f64 / (steps - 1) as f64
    };

    let mut grid = Vec::with_capacity(spec.c1_steps * spec.c2_steps);
    match spec.space {
        Space::XiRho => {
            for iy in 0..spec.c2_steps {
                let rho = lerp(spec.c2_min, spec.c2_max, iy, spec.c2_steps);
                for ix in 0..spec.c1_steps {
                    let xi = lerp(spec.c1_min, spec.c1_max, ix, spec.c1_steps);
                    let region = match Dimensionless::new(xi, rho) {
                        Err(_) => Region::NoSolution,
                        Ok(params) => match classify(&params, 1e-10)? {
                            ExistenceResult::NoSolution => Region::NoSolution,
                            ExistenceResult::Critical(_) => Region::CriticalCurve,
                            ExistenceResult::TwoSolutions { .. } => Region::TwoSolutions,
                        },
                    };
                    grid.push(PhaseDiagramRow {
                        space: spec.space,
                        coord1: xi,
                        coord2: rho,
                        region,
                    });
                }
            }
        }
        Space::BW => {
            let wc_by_col: Vec<f64> = (0..spec.c1_steps)
                .map(|ix| critical_w(lerp(spec.c1_min, spec.c1_max, ix, spec.c1_steps)))
                .collect();
            for iy in 0..spec.c2_steps {
                let w = lerp(spec.c2_min, spec.c2_max, iy, spec.c2_steps);
                for (ix, &w_c) in wc_by_col.iter().enumerate() {
                    let b = lerp(spec.c1_min, spec.c1_max, ix, spec.c1_steps);
                    let region = if (w - w_c).abs() <= 1e-9 * w_c.max(1.0) {
                        Region::CriticalCurve
                    } else if w < w_c {
                        Region::Outer
                    } else {
                        Region::Inner
                    };
                    grid.push(PhaseDiagramRow {
                        space: spec.space,
                        coord1: b,
                        coord2: w,
                        region,
                    });
                }
            }
        }
    }

    let curve = critical_curve_polyline(spec)?;
    Ok(PhaseDiagram { grid, curve })
}

fn critical_curve_polyline(spec: &PhaseDiagramSpec) -> Result<Vec<PhaseDiagramRow>> {
    let mut curve = Vec::new();
    let inside = |c1: f64, c2: f64| {
        c1 >= spec.c1_min - 1e-12
            && c1 <= spec.c1_max + 1e-12
            && c2 >= spec.c2_min - 1e-12
            && c2 <= spec.c2_max + 1e-12
    };
    match spec.space {
        Space::XiRho => {
            // march w_c until the curve exits the box through either axis
            let exits = |w: f64| {
                let p = critical_curve_point(w).expect("w >= w0");
                p.xi_c > spec.c1_max || p.rho_c > spec.c2_max
            };
            let w_lo = w0();
            if exits(w_lo) {
                return Ok(curve);
            }
            let hi = grow_until(w_lo + 1.0, exits)?;
            let f = |w: f64| {
                let p = critical_curve_point(w).expect("w >= w0");
                (p.xi_c - spec.c1_max).max(p.rho_c - spec.c2_max)
            };
            let w_hi = find_root(f, Bracket::new(f, w_lo, hi)?, 1e-12);
            for i in 0..spec.curve_points {
                let w = w_lo + (w_hi - w_lo) * i as f64 / (spec.curve_points - 1) as f64;
                let p = critical_curve_point(w)?;
                if inside(p.xi_c, p.rho_c) {
                    curve.push(PhaseDiagramRow {
                        space: spec.space,
                        coord1: p.xi_c,
                        coord2: p.rho_c,
                        region: Region::CriticalCurve,
                    });
                }
            }
        }
        Space::BW => {
            for i in 0..spec.curve_points {
                let b = spec.c1_min
                    + (spec.c1_max - spec.c1_min) * i as f64 / (spec.curve_points - 1) as f64;
                let w = critical_w(b);
                if inside(b, w) {
                    curve.push(PhaseDiagramRow {
                        space: spec.space,
                        coord1: b,
                        coord2: w,
                        region: Region::CriticalCurve,
                    });
                }
            }
        }
    }
    Ok(curve)
}
