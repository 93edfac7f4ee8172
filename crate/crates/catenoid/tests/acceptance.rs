//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figures (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Expected values are pinned against independent oracles:
//! a plain bisection loop written here, the finite-difference eigensolver,
//! or digits frozen from a high-precision evaluation of the closed forms.

use std::f64::consts::PI;
use std::time::Instant;

use catenoid::existence::{
    classify, critical_curve_point, critical_distance, critical_w, h_function, jacobian,
    phase_diagram, rho0, w0, PhaseDiagramSpec, Region, Space,
};
use catenoid::geometry::{
    area_difference_on_critical_curve, branch_area_gap, catenoid_area, goldschmidt_area,
    lindelof_tangent_check, metastability_crossover,
};
use catenoid::model::{Branch, CatenoidSolution, Dimensionless, ExistenceResult};
use catenoid::numerics::{find_root, Bracket};
use catenoid::stability::{
    delta_of, fixed_xi_b_path, spectrum, unstable_mode_exact, unstable_mode_perturbative,
    zero_mode, StabilityProblem,
};

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Fixed (xi, rho) sample deep in the two-solutions region: rho is a frozen
/// multiple (1.2 .. 1.83) of the critical rho at each xi.
#[allow(clippy::excessive_precision)]
const TWO_SOLUTION_POINTS: [(f64, f64); 10] = [
    (0.00, 1.8106554738459839),
    (0.15, 1.9298313993164715),
    (0.30, 2.0782114067199426),
    (0.45, 2.2575946538293193),
    (0.60, 2.468281253802979),
    (0.75, 2.7096009086719304),
    (0.90, 2.9804147271116282),
    (1.05, 3.2794628175533137),
    (1.20, 3.6055543771774311),
    (1.35, 3.9576476349495902),
];

fn two_solutions(xi: f64, rho: f64) -> (CatenoidSolution, CatenoidSolution) {
    let params = Dimensionless::new(xi, rho).unwrap();
    match classify(&params, 1e-13).unwrap() {
        ExistenceResult::TwoSolutions { outer, inner } => (outer, inner),
        other => panic!("({xi}, {rho}) should have two branches, got {other:?}"),
    }
}

fn ground_eigenvalue(b: f64, w: f64, n: usize) -> f64 {
    let problem = StabilityProblem::new(b, w, n).unwrap();
    spectrum(&problem, 1).unwrap()[0].eigenvalue
}

#[test]
fn criterion_01_constants() {
    let start = Instant::now();

    // independent oracle: 60 plain bisection steps on w - coth(w)
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid - coth(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w0_oracle = 0.5 * (lo + hi);

    let f = |w: f64| w - coth(w);
    let w0_lib = find_root(f, Bracket::new(f, 1.0, 2.0).unwrap(), 1e-14);
    assert!((w0_lib - w0_oracle).abs() < 1e-12);
    assert!((w0_lib - 1.1997).abs() < 1e-4, "w0 = {w0_lib}");

    let rho0_lib = rho0();
    assert!((rho0_lib - 1.5089).abs() < 1e-4, "rho0 = {rho0_lib}");
    let footnote = 1.0 / (w0_lib * w0_lib - 1.0).sqrt();
    assert!((footnote - rho0_lib).abs() < 1e-10);

    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 1000);
    println!(
        "criterion 01 constants: PASS (w0 = {w0_lib:.10}, rho0 = {rho0_lib:.10}, {elapsed:?})"
    );
}

#[test]
fn criterion_02_critical_spectrum() {
    let start = Instant::now();
    for &b in &[0.0, 0.5, 1.0, 2.0] {
        let w_c = critical_w(b);
        let coarse = ground_eigenvalue(b, w_c, 4000);
        assert!(coarse.abs() < 1e-5, "b = {b}: lambda0 = {coarse}");
        let problem = StabilityProblem::new(b, w_c, 4000).unwrap();
        let fine = spectrum(
            &StabilityProblem {
                grid: problem.grid.halved(),
                ..problem
            },
            1,
        )
        .unwrap()[0]
            .eigenvalue;
        let ratio = coarse.abs() / fine.abs();
        assert!(
            (3.5..=4.5).contains(&ratio),
            "b = {b}: halving h gave ratio {ratio}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!("criterion 02 critical spectrum: PASS ({elapsed:?})");
}

#[test]
fn criterion_03_zero_mode_oracle_equivalence() {
    for &b in &[0.0, 0.5, 1.0, 2.0] {
        let w_c = critical_w(b);
        let problem = StabilityProblem::new(b, w_c, 4000).unwrap();
        let analytic = zero_mode(&problem).unwrap();
        let fd = &spectrum(&problem, 1).unwrap()[0];

        let mut diff2 = 0.0;
        let mut norm2 = 0.0;
        for (pa, pf) in analytic.values.iter().zip(&fd.values) {
            diff2 += (pa - pf) * (pa - pf);
            norm2 += pa * pa;
        }
        let l2 = (diff2 / norm2).sqrt();
        assert!(l2 < 1e-4, "b = {b}: relative L2 error {l2}");

        let last = analytic.values.len() - 1;
        assert!(analytic.values[0].abs() < 1e-12);
        assert!(analytic.values[last].abs() < 1e-12);
        assert!(analytic.values[1..last].iter().all(|&p| p > 0.0));
    }
    println!("criterion 03 zero-mode oracle equivalence: PASS");
}

#[test]
fn criterion_04_stability_dichotomy() {
    for &(xi, rho) in &TWO_SOLUTION_POINTS {
        let (outer, inner) = two_solutions(xi, rho);
        let l_outer = ground_eigenvalue(outer.b, outer.w, 2000);
        let l_inner = ground_eigenvalue(inner.b, inner.w, 2000);
        assert!(l_outer > 1e-6, "({xi}, {rho}): outer lambda0 = {l_outer}");
        assert!(l_inner < -1e-6, "({xi}, {rho}): inner lambda0 = {l_inner}");
    }
    println!("criterion 04 stability dichotomy: PASS (10 configurations)");
}

#[test]
fn criterion_05_unstable_mode_scaling_law() {
    let eps_list = [0.04, 0.02, 0.01, 0.005];
    for &b in &[0.0, 1.0] {
        let w_c = critical_w(b);
        let path = fixed_xi_b_path(b, w_c);
        let mut ratios = Vec::new();
        let mut prev_dev = f64::INFINITY;
        for &eps in &eps_list {
            let w = w_c + eps;
            let b_eps = path(eps);
            let exact = unstable_mode_exact(b_eps, w, 800).unwrap();
            let k2_leading = 3.0 * eps / w_c;
            let ratio = exact.k * exact.k / k2_leading;
            let dev = (ratio - 1.0).abs();
            assert!(dev < prev_dev, "b = {b}: deviation not shrinking at eps = {eps}");
            prev_dev = dev;
            ratios.push((eps, ratio));

            let fd = ground_eigenvalue(b_eps, w, 4000);
            assert!(
                (-exact.k * exact.k - fd).abs() < 1e-5,
                "b = {b}, eps = {eps}: exact {} vs FD {fd}",
                -exact.k * exact.k
            );
        }
        // least-squares line ratio(eps) = intercept + slope * eps
        let n = ratios.len() as f64;
        let sx: f64 = ratios.iter().map(|p| p.0).sum();
        let sy: f64 = ratios.iter().map(|p| p.1).sum();
        let sxx: f64 = ratios.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = ratios.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        assert!(slope.is_finite());
        assert!(
            (intercept - 1.0).abs() <= 0.02,
            "b = {b}: intercept {intercept}"
        );
        println!(
            "criterion 05 scaling law b = {b}: PASS (intercept {intercept:.5}, slope {slope:.3})"
        );
    }
}

#[test]
fn criterion_06_symmetric_closed_form() {
    let w_zero = w0();
    for &(eps, tol) in &[(0.01, 0.10), (0.005, 0.05)] {
        let w: f64 = w_zero + eps;
        let closed = 6.0 / (w * w) * (coth(w) - w) / (w - 3.0 * coth(w));
        let leading = 3.0 * eps / w_zero;
        let dev = ((closed - leading) / leading).abs();
        assert!(dev < tol, "eps = {eps}: deviation {dev}");
    }
    println!("criterion 06 symmetric closed form: PASS");
}

#[test]
fn criterion_07_gamma0_identity() {
    for &b in &[0.5, 1.0, 2.0] {
        let w_c = critical_w(b);
        let delta = delta_of(b, w_c).unwrap();
        let gamma0 = delta * (1.0 - delta * delta) / 3.0;
        let path = fixed_xi_b_path(b, w_c);
        let mut prev_err = f64::INFINITY;
        for &eps in &[0.04, 0.02, 0.01, 0.005] {
            let p = unstable_mode_perturbative(&path, w_c, eps).unwrap();
            assert!((p.gamma0 - gamma0).abs() < 1e-14);
            let err = (p.gamma_full - gamma0).abs();
            // error O(eps): halving eps should roughly halve it
            assert!(err < 0.62 * prev_err, "b = {b}, eps = {eps}: err {err}");
            prev_err = err;
        }
        assert!(prev_err < 0.05 * gamma0.abs());
    }
    println!("criterion 07 gamma0 identity: PASS");
}

#[test]
fn criterion_08_area_orderings() {
    // f(w_c) > 0 on 50 log-spaced points
    let w_zero = w0();
    for i in 0..50 {
        let w = w_zero * (20.0 / w_zero).powf(i as f64 / 49.0);
        let f = area_difference_on_critical_curve(w).unwrap().f_closed_form;
        assert!(f > 0.0, "f({w}) = {f}");
    }

    // 50 configurations spread over the two-solutions region: the branch
    // gap identity on each, the three area forms on all 100 solutions
    for j in 0..50 {
        let xi = 0.04 * j as f64;
        let rho_c = catenoid::existence::critical_point_for_xi(xi).unwrap().rho_c;
        let rho = (1.15 + 0.015 * j as f64) * rho_c;
        let (outer, inner) = two_solutions(xi, rho);

        let gap = branch_area_gap(&outer, &inner, 1.0).unwrap();
        assert!(gap.normalized_gap > 0.0 && gap.identity_form > 0.0);
        assert!(
            (gap.normalized_gap - gap.identity_form).abs()
                <= 1e-10 * gap.normalized_gap.abs().max(1.0)
        );

        for sol in [outer, inner] {
            let pd2 = PI;
            let f1 = pd2 / (4.0 * sol.w * sol.w)
                * (2.0 * sol.w + (2.0 * sol.w).sinh() * (2.0 * sol.b).cosh());
            let alpha = sol.a;
            let f2 = pd2 * (alpha + alpha * alpha * (1.0 / sol.a).sinh() * (2.0 * sol.b).cosh());
            let rho_s = sol.w.cosh() * sol.b.cosh() / sol.w;
            let xi_s = sol.w.sinh() * sol.b.sinh() / sol.w;
            let f3 = pd2 / (2.0 * sol.w)
                * (1.0 + rho_s * sol.w.sinh() * sol.b.cosh() + xi_s * sol.w.cosh() * sol.b.sinh());
            assert!((f1 - f2).abs() <= 1e-12 * f1, "integral form off at {xi}");
            assert!((f1 - f3).abs() <= 1e-12 * f1, "mixed form off at {xi}");
        }
    }
    println!("criterion 08 area orderings: PASS");
}

#[test]
fn criterion_09_metastability_ordering() {
    for &ratio in &[1.0, 0.75, 0.5] {
        let c = metastability_crossover(ratio).unwrap();
        assert!(
            c.d_star < c.d_critical,
            "ratio {ratio}: d* = {} vs d_c = {}",
            c.d_star,
            c.d_critical
        );
    }
    let c = metastability_crossover(1.0).unwrap();
    let d_c = critical_distance(1.0, 1.0).unwrap().d_c;
    assert!((d_c - 2.0 / rho0()).abs() <= 1e-6);
    assert!(c.d_star / 1.0 < d_c / 1.0);
    println!(
        "criterion 09 metastability ordering: PASS (d*/r = {:.6}, d_c/r = {:.6})",
        c.d_star, c.d_critical
    );
}

#[test]
fn criterion_10_lindelof_equivalence() {
    for &b in &[0.0, 0.5, 1.0, 2.0] {
        let p = critical_curve_point(critical_w(b)).unwrap();
        let d = 1.0;
        let at_w = |w: f64, branch: Branch| CatenoidSolution {
            w,
            b: p.b,
            a: d / (2.0 * w),
            branch,
        };
        let critical = lindelof_tangent_check(&at_w(p.w_c, Branch::Critical), d);
        assert!(
            critical.residual.abs() <= 1e-10,
            "b = {b}: residual {}",
            critical.residual
        );

        // moving w away from w_c at fixed b, the deviation is monotone and
        // changes sign across the curve
        let r = |dw: f64| {
            let branch = if dw < 0.0 { Branch::Outer } else { Branch::Inner };
            lindelof_tangent_check(&at_w(p.w_c + dw, branch), d).residual
        };
        assert!(r(-0.10) > r(-0.05));
        assert!(r(-0.05) > 0.0);
        assert!(r(0.05) < 0.0);
        assert!(r(0.05) > r(0.10));
    }
    println!("criterion 10 lindelof equivalence: PASS");
}

#[test]
fn criterion_11_jacobian_criterion() {
    for i in 0..20 {
        let b = 3.0 * i as f64 / 19.0;
        let j = jacobian(b, critical_w(b));
        assert!(j.abs() <= 1e-10, "b = {b}: jacobian {j:e}");
    }
    println!("criterion 11 jacobian criterion: PASS");
}

#[test]
fn criterion_12_phase_diagrams() {
    let start = Instant::now();
    let spec = PhaseDiagramSpec {
        space: Space::XiRho,
        c1_min: 0.0,
        c1_max: 2.0,
        c1_steps: 100,
        c2_min: 0.0,
        c2_max: 4.0,
        c2_steps: 100,
        curve_points: 200,
    };
    let pd = phase_diagram(&spec).unwrap();
    assert_eq!(pd.grid.len(), 100 * 100);

    for row in &pd.grid {
        let expected = match Dimensionless::new(row.coord1, row.coord2) {
            Err(_) => Region::NoSolution,
            Ok(p) => match classify(&p, 1e-10).unwrap() {
                ExistenceResult::NoSolution => Region::NoSolution,
                ExistenceResult::Critical(_) => Region::CriticalCurve,
                ExistenceResult::TwoSolutions { .. } => Region::TwoSolutions,
            },
        };
        assert_eq!(row.region, expected, "grid disagrees at ({}, {})", row.coord1, row.coord2);
    }

    // the parametrized critical curve separates the regions within one cell
    let cell_rho = (spec.c2_max - spec.c2_min) / (spec.c2_steps - 1) as f64;
    let mut checked = 0;
    for point in &pd.curve {
        let above = point.coord2 + cell_rho;
        let below = point.coord2 - cell_rho;
        if below <= point.coord1.abs() || above > spec.c2_max {
            continue;
        }
        let up = classify(&Dimensionless::new(point.coord1, above).unwrap(), 1e-10).unwrap();
        assert!(
            matches!(up, ExistenceResult::TwoSolutions { .. }),
            "one cell above the curve at ({}, {})",
            point.coord1,
            above
        );
        let down = classify(&Dimensionless::new(point.coord1, below).unwrap(), 1e-10).unwrap();
        assert!(
            matches!(down, ExistenceResult::NoSolution),
            "one cell below the curve at ({}, {})",
            point.coord1,
            below
        );
        checked += 1;
    }
    assert!(checked > 100, "only {checked} curve points verified");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!("criterion 12 phase diagrams: PASS ({checked} curve points, {elapsed:?})");
}

#[test]
fn h_function_limit_regression() {
    // guard the analytic w -> 0 limit used throughout classification
    for &xi in &[0.0, 1.0, 3.0] {
        assert_eq!(h_function(0.0, xi), (1.0 + xi * xi).sqrt());
    }
    // Goldschmidt area sanity on the same constants the criteria use
    let rings = catenoid::model::RingConfig::new(1.0, 1.0, 1.0).unwrap();
    assert!((goldschmidt_area(&rings) - 2.0 * PI).abs() < 1e-14);
    let (outer, _) = two_solutions(0.0, 2.0);
    assert!(catenoid_area(&outer, 1.0).unwrap() < goldschmidt_area(&rings));
}
