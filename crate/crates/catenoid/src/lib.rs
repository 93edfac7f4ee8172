//! Catenoid minimal surfaces spanning two coaxial rings: existence and
//! classification of the solution branches, the stability spectrum of the
//! associated Schrodinger-type operator, the exact zero and unstable modes
//! from the factorization method, and area comparisons against the
//! disconnected Goldschmidt solution.
//!
//! Every closed-form result has an independent numerical route next to it:
//! bracketed root finding and a Sturm-sequence finite-difference eigensolver
//! live in [`numerics`], and the higher modules are tested against them.

pub mod error;
pub mod existence;
pub mod geometry;
pub mod model;
pub mod numerics;
pub mod stability;

pub use error::{Error, Result};
pub use existence::{
    classify, classify_banded, classify_rings, critical_curve_point, critical_distance,
    critical_point_for_xi, critical_w, g_function, h_function, h_prime, jacobian, phase_diagram,
    rho0, w0, CriticalDistance, PhaseDiagram, PhaseDiagramRow, PhaseDiagramSpec, Region, Space,
    CRITICAL_BAND,
};
pub use geometry::{
    area_difference_on_critical_curve, area_report, branch_area_gap, catenoid_area,
    goldschmidt_area, lindelof_tangent_check, metastability_crossover, AreaReport, BranchAreaGap,
    CriticalAreaDifference, Crossover, TangentCheck,
};
pub use model::{
    to_dimensionless, Branch, CatenoidSolution, CriticalPoint, Dimensionless, ExistenceResult,
    ModeResult, ModeSource, RingConfig,
};
pub use numerics::{eigenvector_for, find_root, sturm_eigenvalues, Bracket, GridSpec};
pub use stability::{
    delta_of, factorization_partner_check, fixed_xi_b_path, potential, psi_k, spectrum,
    unstable_mode_exact, unstable_mode_perturbative, zero_mode, zero_mode_max_location,
    FactorizationReport, PerturbativeMode, StabilityProblem, UnstableMode,
};

/// Default interior grid size for finite-difference eigensolves.
pub const DEFAULT_GRID_N: usize = 4000;

/// Default relative tolerance for scalar root finding.
pub const DEFAULT_REL_TOL: f64 = 1e-12;
