use std::f64::consts::PI;

use thermal_jc::oracle::{
    build_hamiltonian, compare_with_analytic, evolve_and_reduce, initial_state, Evolver, FockBasis,
};
use thermal_jc::sweep::Grid1D;
use thermal_jc::thermal::{atomic_xstate, ModelParams, TruncationSpec};

fn assert_matches_analytic(p: &ModelParams, t: f64, tol: f64) {
    let rho = evolve_and_reduce(p, t, &FockBasis::for_params(p)).unwrap();
    let s = atomic_xstate(p, t, &TruncationSpec::default()).unwrap();
    let (a, b, c, d, w, z) = rho.x_entries();
    let devs = [
        (s.a() - a).abs(),
        (s.b() - b).abs(),
        (s.c() - c).abs(),
        (s.d() - d).abs(),
        (s.w() - w).norm(),
        (s.z() - z).norm(),
    ];
    for (name, dev) in ["a", "b", "c", "d", "w", "z"].iter().zip(devs) {
        assert!(dev < tol, "{name}: {dev:e} at t = {t} for {p:?}");
    }
}

#[test]
fn vacuum_quarter_period_matches_closed_form() {
    let p = ModelParams::symmetric(0.0, 0.0).unwrap();
    assert_matches_analytic(&p, PI / 4.0, 1e-12);
}

#[test]
fn thermal_points_match_analytic() {
    let p = ModelParams::symmetric(0.5, 1.0).unwrap();
    assert_matches_analytic(&p, 2.0, 1e-8);
    let p = ModelParams::symmetric(0.5, 0.5).unwrap();
    assert_matches_analytic(&p, PI, 1e-8);
    let p = ModelParams::new(0.8, 0.3, 1.0, 1.7).unwrap();
    assert_matches_analytic(&p, 1.3, 1e-8);
}

#[test]
fn unitarity_and_excitation_conservation() {
    let p = ModelParams::new(0.6, 1.1, 1.0, 0.9).unwrap();
    let basis = FockBasis::for_params(&p);
    let rho0 = initial_state(&p, &basis).unwrap();
    let ev = Evolver::new(&build_hamiltonian(&p, &basis));
    let tr0 = rho0.trace();
    let n0 = rho0.excitation_expectation();
    for t in [0.3, 2.0, 7.5, 12.0] {
        let rho = ev.evolve(&rho0, t);
        assert!((rho.trace() - tr0).abs() < 1e-12);
        assert!((rho.excitation_expectation() - n0).abs() < 1e-10);
        for (before, after) in rho0.components().iter().zip(rho.components()) {
            assert!((before.norm_sqr() - after.norm_sqr()).abs() < 1e-12);
        }
    }
}

#[test]
fn reduced_state_has_x_form() {
    for (n1, n2) in [(0.0, 0.7), (1.0, 1.0), (0.2, 1.8)] {
        let p = ModelParams::symmetric(n1, n2).unwrap();
        let basis = FockBasis::for_params(&p);
        for t in [0.5, 3.3, 9.4] {
            let rho = evolve_and_reduce(&p, t, &basis).unwrap();
            assert!(rho.x_form_residual() < 1e-10);
        }
    }
}

#[test]
fn vacuum_report() {
    let p = ModelParams::symmetric(0.0, 0.0).unwrap();
    let times = Grid1D::new(0.0, 4.0 * PI, 0.1).unwrap().points();
    let report = compare_with_analytic(
        &p,
        &times,
        &TruncationSpec::default(),
        &FockBasis::for_params(&p),
    )
    .unwrap();
    assert!(report.max_deviation() < 1e-12, "{report}");
    assert_eq!(report.points, times.len());
    assert_eq!(report.oracle_leakage, 0.0);
}

#[test]
fn thermal_report_over_four_periods() {
    let p = ModelParams::symmetric(1.0, 1.0).unwrap();
    let times = Grid1D::new(0.0, 4.0 * PI, 0.1).unwrap().points();
    let basis = FockBasis::for_params(&p);
    let report = compare_with_analytic(&p, &times, &TruncationSpec::default(), &basis).unwrap();
    assert!(report.max_deviation() < 1e-8, "{report}");
    assert!(report.x_form_residual < 1e-10);
    assert!(report.oracle_leakage > 0.0 && report.oracle_leakage < 1e-11);
    let text = report.to_string();
    assert!(text.contains("oracle leakage bound"));
    for name in ["a:", "b:", "c:", "d:", "w:", "z:"] {
        assert!(text.contains(name));
    }
}

#[test]
fn starved_cutoff_is_refused() {
    let p = ModelParams::symmetric(1.0, 1.0).unwrap();
    let basis = FockBasis::new(2, 2).unwrap();
    let times = [0.0, 1.0];
    assert!(compare_with_analytic(&p, &times, &TruncationSpec::default(), &basis).is_err());
}
