use num_complex::Complex64 as C64;
use proptest::prelude::*;

use thermal_jc::thermal::{atomic_xstate, ModelParams, TruncationSpec};
use thermal_jc::variational::{discord_1norm_variational, SearchBudget};
use thermal_jc::xstate::{
    bloch_decompose, concurrence_general, concurrence_xstate, discord_1norm_xstate, XState,
};
use thermal_jc::Error;

prop_compose! {
    fn x_state()(
        pops in prop::array::uniform4(0.0f64..1.0),
        u in 0.0f64..=1.0,
        v in 0.0f64..=1.0,
        phi in 0.0f64..std::f64::consts::TAU,
        psi in 0.0f64..std::f64::consts::TAU,
    ) -> XState {
        let total: f64 = pops.iter().sum::<f64>() + 1e-9;
        let [a, b, c, _] = pops.map(|p| p / total);
        let d = 1.0 - a - b - c;
        let w = C64::from_polar((a * d).max(0.0).sqrt() * u, phi);
        let z = C64::from_polar((b * c).max(0.0).sqrt() * v, psi);
        XState::new(a, b, c, d, w, z).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn concurrence_routes_agree(s in x_state()) {
        let general = concurrence_general(&s.to_density()).unwrap();
        let x = concurrence_xstate(&s);
        prop_assert!((general - x).abs() < 1e-10, "{} vs {}", general, x);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn bloch_round_trip(s in x_state()) {
        let rebuilt = bloch_decompose(&s).to_matrix();
        let diff = (rebuilt - s.to_matrix()).iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-14, "{}", diff);
    }

    #[test]
    fn closed_form_discord_is_finite_and_bounded(s in x_state()) {
        let d = discord_1norm_xstate(&s).unwrap();
        prop_assert!(d.is_finite() && (0.0..=1.0 + 1e-12).contains(&d));
    }

    #[test]
    fn model_states_have_real_coherence_and_shortcut_discord(
        n1 in 0.0f64..2.0, n2 in 0.0f64..2.0, gt in 0.0f64..15.0,
    ) {
        let p = ModelParams::symmetric(n1, n2).unwrap();
        let s = atomic_xstate(&p, gt, &TruncationSpec::default()).unwrap();
        prop_assert_eq!(s.z(), C64::new(0.0, 0.0));
        prop_assert_eq!(s.w().im, 0.0);
        let bf = bloch_decompose(&s);
        prop_assert_eq!(bf.t[0][1], 0.0);
        prop_assert_eq!(bf.t[1][0], 0.0);
        prop_assert_eq!(bf.t22(), -bf.t11());
        let d = discord_1norm_xstate(&s).unwrap();
        prop_assert_eq!(d, 2.0 * s.w().norm());
        prop_assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn variational_oracle_matches_closed_form_on_model_states() {
    let budget = SearchBudget::default();
    let tr = TruncationSpec::default();
    let samples = [
        (0.0, 0.0, 0.4),
        (0.0, 0.0, 2.2),
        (0.1, 0.1, 1.0),
        (0.5, 0.5, 1.0),
        (0.5, 0.5, 3.0),
        (1.0, 0.3, 0.7),
        (0.3, 1.0, 5.5),
        (2.0, 2.0, 9.2),
        (0.05, 0.05, 9.3),
        (1.5, 0.0, 4.1),
        (0.8, 0.8, 7.0),
        (0.25, 1.75, 11.0),
    ];
    for (n1, n2, gt) in samples {
        let p = ModelParams::symmetric(n1, n2).unwrap();
        let s = atomic_xstate(&p, gt, &tr).unwrap();
        let closed = discord_1norm_xstate(&s).unwrap();
        let search = discord_1norm_variational(&s.to_density(), &budget).unwrap();
        assert!(
            (closed - search).abs() < 2e-3,
            "n=({n1},{n2}) gt={gt}: closed {closed} vs search {search}"
        );
        // the search only ever visits feasible points
        assert!(search >= closed - 1e-9);
    }
}

#[test]
fn variational_oracle_on_general_x_states() {
    let states = [
        XState::new(0.3, 0.2, 0.1, 0.4, C64::new(0.2, 0.1), C64::new(0.05, -0.1)).unwrap(),
        XState::real(0.4, 0.1, 0.2, 0.3, 0.25, 0.1).unwrap(),
        XState::real(0.25, 0.25, 0.25, 0.25, -0.025, 0.225).unwrap(),
    ];
    for s in states {
        let closed = discord_1norm_xstate(&s).unwrap();
        let search = discord_1norm_variational(&s.to_density(), &SearchBudget::default()).unwrap();
        assert!((closed - search).abs() < 2e-3, "{closed} vs {search}");
    }
}

#[test]
fn exhausted_search_reports_non_convergence() {
    let budget = SearchBudget {
        grid: 3,
        refine_steps: 2,
        restarts: 0,
        tolerance: 1e-12,
    };
    let err = discord_1norm_variational(&XState::bell().to_density(), &budget).unwrap_err();
    assert!(matches!(err, Error::NotConverged { .. }));
}
