//! Domain types shared by all modules, plus the conversion between the
//! physical ring data and the scale-free parameterization.
//!
//! Minimal surfaces are scale invariant, so a configuration is characterized
//! by the dimensionless pair (xi, rho) with xi = (r1 - r2)/d and
//! rho = (r1 + r2)/d. A catenoid branch is the pair (w, b) with w = d/2a.

use serde::Serialize;

use crate::error::{Error, Result};

/// Physical boundary data: two coaxial rings of radii `r1` and `r2` in
/// parallel planes separated by `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RingConfig {
    pub r1: f64,
    pub r2: f64,
    pub d: f64,
}

impl RingConfig {
    pub fn new(r1: f64, r2: f64, d: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(r1) && ok(r2) && ok(d) {
            Ok(Self { r1, r2, d })
        } else {
            Err(Error::InvalidRings { r1, r2, d })
        }
    }
}

/// Scale-free parameters of a ring pair.
///
/// `rho_plus` and `rho_minus` are the per-ring variants 2r1/d and 2r2/d;
/// they satisfy `rho_plus = rho + xi` and `rho_minus = rho - xi` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dimensionless {
    pub xi: f64,
    pub rho: f64,
    pub rho_plus: f64,
    pub rho_minus: f64,
}

impl Dimensionless {
    /// Build from (xi, rho). Requires rho > |xi|, which is equivalent to both
    /// ring radii being positive.
    pub fn new(xi: f64, rho: f64) -> Result<Self> {
        if !(xi.is_finite() && rho.is_finite() && rho > xi.abs()) {
            return Err(Error::DegenerateInput { rho, xi });
        }
        Ok(Self {
            xi,
            rho,
            rho_plus: rho + xi,
            rho_minus: rho - xi,
        })
    }

    /// Reconstruct the ring data at separation `d`.
    pub fn to_rings(&self, d: f64) -> Result<RingConfig> {
        RingConfig::new(0.5 * self.rho_plus * d, 0.5 * self.rho_minus * d, d)
    }
}

/// Physical -> dimensionless conversion.
pub fn to_dimensionless(rings: &RingConfig) -> Dimensionless {
    let xi = (rings.r1 - rings.r2) / rings.d;
    let rho = (rings.r1 + rings.r2) / rings.d;
    Dimensionless {
        xi,
        rho,
        rho_plus: rho + xi,
        rho_minus: rho - xi,
    }
}

/// Which solution branch a catenoid belongs to. The outer branch has the
/// smaller w (larger neck radius a); the two merge at the critical branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Outer,
    Inner,
    Critical,
}

/// One catenoid r(z) = a cosh(z/a + b) spanning the rings.
///
/// `w = d/2a` is the dimensionless half-width of the stability interval and
/// `a = d/(2w)` the neck scale of the configuration the branch was solved
/// from (unit separation d = 1 when solved from bare (xi, rho)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenoidSolution {
    pub w: f64,
    pub b: f64,
    pub a: f64,
    pub branch: Branch,
}

impl CatenoidSolution {
    /// The same branch rescaled to separation `d` (areas and lengths scale
    /// linearly; w and b are scale invariant).
    pub fn with_scale(&self, d: f64) -> Self {
        Self {
            a: d / (2.0 * self.w),
            ..*self
        }
    }
}

/// Classification of a ring configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ExistenceResult {
    NoSolution,
    Critical(CatenoidSolution),
    TwoSolutions {
        outer: CatenoidSolution,
        inner: CatenoidSolution,
    },
}

impl ExistenceResult {
    pub fn branches(&self) -> Vec<&CatenoidSolution> {
        match self {
            ExistenceResult::NoSolution => vec![],
            ExistenceResult::Critical(sol) => vec![sol],
            ExistenceResult::TwoSolutions { outer, inner } => vec![outer, inner],
        }
    }
}

/// A point on the critical curve, carrying both half-plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub b: f64,
    pub w_c: f64,
    pub delta: f64,
    pub xi_c: f64,
    pub rho_c: f64,
}

/// Where an eigenfunction came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSource {
    Analytic,
    FiniteDifference,
}

/// An eigenpair of the stability operator on (-w, w) with Dirichlet ends.
///
/// `grid` spans [-w, w] including the endpoints; `values` are normalized so
/// the maximum absolute value is 1 with positive sign at the interior peak.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    pub eigenvalue: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub source: ModeSource,
    /// -eigenvalue for bound/unstable modes (eigenvalue = -k^2).
    pub k2: Option<f64>,
    /// Boundary coefficient beta(k) of the exact unstable mode, when known.
    pub beta: Option<f64>,
}

impl ModeResult {
    /// Normalize raw samples into a `ModeResult`: scale by the signed peak
    /// value so max |psi| = 1 and the interior maximum is positive.
    pub fn from_samples(
        eigenvalue: f64,
        grid: Vec<f64>,
        mut values: Vec<f64>,
        source: ModeSource,
        k2: Option<f64>,
        beta: Option<f64>,
    ) -> Self {
        assert_eq!(grid.len(), values.len());
        let mut imax = 0;
        for (i, v) in values.iter().enumerate() {
            if v.abs() > values[imax].abs() {
                imax = i;
            }
        }
        let peak = values[imax];
        if peak != 0.0 {
            for v in &mut values {
                *v /= peak;
            }
        }
        Self {
            eigenvalue,
            grid,
            values,
            source,
            k2,
            beta,
        }
    }
}
