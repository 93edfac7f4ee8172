//! Surface areas and their orderings: catenoid vs the disconnected
//! Goldschmidt solution (two disks), the meta-stability crossover where the
//! disks take over as global minimum, the inner-vs-outer branch gap, and the
//! tangent-intersection characterization of criticality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::existence::{classify_rings, critical_distance, w0};
use crate::model::{Branch, CatenoidSolution, ExistenceResult, RingConfig};
use crate::numerics::{coth, find_root, Bracket};

use std::f64::consts::PI;

/// Area bookkeeping for one branch of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaReport {
    pub a_catenoid: f64,
    pub a_goldschmidt: f64,
    pub difference: f64,
    pub branch: Branch,
    /// f(w_c) when the configuration sits on the critical curve.
    pub f_value: Option<f64>,
}

/// Catenoid surface area from the (w, b) closed form
/// A_C = pi d^2 (2w + sinh(2w) cosh(2b)) / (4 w^2),
/// cross-evaluated against the (a, d) and the mixed (rho, xi, w, b) forms.
/// The three routes must agree to 1e-10 relative or the solution triple is
/// rejected as inconsistent.
pub fn catenoid_area(sol: &CatenoidSolution, d: f64) -> Result<f64> {
    let (w, b) = (sol.w, sol.b);
    let pd2 = PI * d * d;

    let form_wb = pd2 / (4.0 * w * w) * (2.0 * w + (2.0 * w).sinh() * (2.0 * b).cosh());

    // integral form in terms of the stored neck scale a
    let alpha = sol.a / d;
    let form_integral = pd2 * (alpha + alpha * alpha * (d / sol.a).sinh() * (2.0 * b).cosh());

    // mixed form using rho and xi reconstructed from (w, b)
    let rho = w.cosh() * b.cosh() / w;
    let xi = w.sinh() * b.sinh() / w;
    let form_mixed =
        pd2 / (2.0 * w) * (1.0 + rho * w.sinh() * b.cosh() + xi * w.cosh() * b.sinh());

    let max = form_wb.max(form_integral).max(form_mixed);
    let min = form_wb.min(form_integral).min(form_mixed);
    let spread = (max - min) / max.abs().max(f64::MIN_POSITIVE);
    if spread > 1e-10 {
        return Err(Error::FormInconsistency { spread });
    }
    Ok(form_wb)
}

/// Area of the Goldschmidt solution: the two disks capping the rings (the
/// connecting axis segment carries no area).
pub fn goldschmidt_area(rings: &RingConfig) -> f64 {
    PI * (rings.r1 * rings.r1 + rings.r2 * rings.r2)
}

/// A_C - A_G on the critical curve, in units of pi d^2 / 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalAreaDifference {
    /// f(w_c) = 1/w - 3/(4w^2) + 1/(4w^3) - e^{-4w}/(4w^2) - e^{-4w}/(4w^3),
    /// grouped as a single rational expression for sign fidelity at large w.
    pub f_closed_form: f64,
    /// Direct evaluation of the general difference formula at the critical
    /// (b, w_c).
    pub direct: f64,
}

pub fn area_difference_on_critical_curve(w_c: f64) -> Result<CriticalAreaDifference> {
    let w_zero = w0();
    if w_c < w_zero * (1.0 - 1e-12) || w_c.is_nan() {
        return Err(Error::OutOfRange { w_c, w0: w_zero });
    }
    let w = w_c;
    let e4 = (-4.0 * w).exp();
    let f_closed_form = (4.0 * w * w - 3.0 * w + 1.0 - e4 * (w + 1.0)) / (4.0 * w * w * w);

    // cosh(2b) on the critical curve, from cosh(2b) = cosh(2w) - sinh(2w)/w
    let cosh2b = ((2.0 * w).cosh() - (2.0 * w).sinh() / w).max(1.0);
    let direct = (2.0 * w - 1.0 - cosh2b * (-2.0 * w).exp()) / (2.0 * w * w);

    Ok(CriticalAreaDifference {
        f_closed_form,
        direct,
    })
}

/// The normalized area gap between the branches of one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchAreaGap {
    /// (2 w1 w2 / pi d^2) (A_C2 - A_C1) from the area forms.
    pub normalized_gap: f64,
    /// sinh(w2 - w1) cosh(b2 - b1) - (w2 - w1), the closed identity.
    pub identity_form: f64,
}

/// Both routes to the inner-minus-outer area gap; they must agree to 1e-10
/// relative and are both strictly positive for genuine branch pairs.
pub fn branch_area_gap(
    outer: &CatenoidSolution,
    inner: &CatenoidSolution,
    d: f64,
) -> Result<BranchAreaGap> {
    let a1 = catenoid_area(outer, d)?;
    let a2 = catenoid_area(inner, d)?;
    let normalized_gap = 2.0 * outer.w * inner.w / (PI * d * d) * (a2 - a1);
    let dw = inner.w - outer.w;
    let identity_form = dw.sinh() * (inner.b - outer.b).cosh() - dw;
    let scale = normalized_gap.abs().max(identity_form.abs()).max(1e-300);
    let diff = (normalized_gap - identity_form).abs() / scale;
    if diff > 1e-10 {
        return Err(Error::Mismatch { diff });
    }
    Ok(BranchAreaGap {
        normalized_gap,
        identity_form,
    })
}

/// The separation (for r1 = 1, r2 = ratio) at which the outer catenoid's
/// area crosses the Goldschmidt area, together with the critical separation
/// it must stay below. Scales linearly with the ring size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossover {
    pub ratio: f64,
    pub d_star: f64,
    pub d_critical: f64,
}

/// Along the family of fixed radius ratio with growing separation, find the
/// meta-stability onset d* where A_C(outer) = A_G.
pub fn metastability_crossover(ratio: f64) -> Result<Crossover> {
    if !(ratio.is_finite() && ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::InvalidRings {
            r1: 1.0,
            r2: ratio,
            d: f64::NAN,
        });
    }
    let d_critical = critical_distance(1.0, ratio)?.d_c;

    let excess = |d: f64| -> Result<f64> {
        let rings = RingConfig::new(1.0, ratio, d)?;
        let sol = match classify_rings(&rings, 1e-12)? {
            ExistenceResult::TwoSolutions { outer, .. } => outer,
            ExistenceResult::Critical(sol) => sol,
            ExistenceResult::NoSolution => {
                return Err(Error::BracketGrowth { limit: d });
            }
        };
        Ok(catenoid_area(&sol, d)? - goldschmidt_area(&rings))
    };

    let hi = d_critical * (1.0 - 1e-6);
    let mut lo = 0.1 * d_critical;
    while excess(lo)? >= 0.0 {
        lo *= 0.5;
        if lo < 1e-12 * d_critical {
            return Err(Error::BracketGrowth { limit: lo });
        }
    }
    let f = |d: f64| excess(d).expect("family stays solvable below d_c");
    let d_star = find_root(f, Bracket::new(f, lo, hi)?, 1e-12);
    debug_assert!(d_star < d_critical);
    Ok(Crossover {
        ratio,
        d_star,
        d_critical,
    })
}

/// The Lindelof tangent construction: the boundary tangents' projections
/// onto the symmetry axis sum to exactly d iff the configuration is
/// critical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentCheck {
    /// r1/sinh(w + b) + r2/sinh(w - b), radii reconstructed from the branch.
    pub projection_sum: f64,
    /// a [coth(w + b) + coth(w - b)], the same sum via the boundary system.
    pub coth_form: f64,
    /// projection_sum - d: positive below criticality, zero on the curve,
    /// negative above.
    pub residual: f64,
}

pub fn lindelof_tangent_check(sol: &CatenoidSolution, d: f64) -> TangentCheck {
    let (w, b, a) = (sol.w, sol.b, sol.a);
    let r1 = a * (w + b).cosh();
    let r2 = a * (w - b).cosh();
    let projection_sum = r1 / (w + b).sinh() + r2 / (w - b).sinh();
    let coth_form = a * (coth(w + b) + coth(w - b));
    TangentCheck {
        projection_sum,
        coth_form,
        residual: projection_sum - d,
    }
}

/// Assemble the per-branch area report for a configuration.
pub fn area_report(sol: &CatenoidSolution, rings: &RingConfig) -> Result<AreaReport> {
    let a_catenoid = catenoid_area(sol, rings.d)?;
    let a_goldschmidt = goldschmidt_area(rings);
    let f_value = if sol.branch == Branch::Critical {
        Some(area_difference_on_critical_curve(sol.w)?.f_closed_form)
    } else {
        None
    };
    Ok(AreaReport {
        a_catenoid,
        a_goldschmidt,
        difference: a_catenoid - a_goldschmidt,
        branch: sol.branch,
        f_value,
    })
}
