//! Property tests over randomly generated X-states: structural invariants of
//! the quantum core, the swap closed forms, the oracle, and the file formats.

use proptest::prelude::*;

use xswap::linalg::{kron, validate_density, Tolerance};
use xswap::oracle::{concurrence_general, joint_state, measure_bell};
use xswap::statefile::{parse_states, StateFile};
use xswap::swap::{
    concurrence_phi, concurrence_psi, local_unitary_equivalence_check,
    outcome_entanglement_conditions, swap_outcomes, thresholds, xstate_max_abs_diff,
};
use xswap::xstate::{concurrence_x, from_matrix, to_matrix, validate};
use xswap::{Complex64, XState};

fn build_xstate(raw: [f64; 4], u14: f64, u23: f64, t14: f64, t23: f64) -> XState {
    let sum: f64 = raw.iter().sum();
    let d: Vec<f64> = raw.iter().map(|r| r / sum).collect();
    let m14 = u14 * (d[0] * d[3]).sqrt();
    let m23 = u23 * (d[1] * d[2]).sqrt();
    XState::new(
        d[0],
        d[1],
        d[2],
        d[3],
        Complex64::from_polar(m14, t14),
        Complex64::from_polar(m23, t23),
    )
    .expect("scaled coherences satisfy the positivity bounds")
}

prop_compose! {
    fn xstates()(
        raw in prop::array::uniform4(1e-3..1.0f64),
        u14 in 0.0..=1.0f64,
        u23 in 0.0..=1.0f64,
        t14 in 0.0..std::f64::consts::TAU,
        t23 in 0.0..std::f64::consts::TAU,
    ) -> XState {
        build_xstate(raw, u14, u23, t14, t23)
    }
}

prop_compose! {
    // Coherences below both geometric means: separable by the closed form.
    fn separable_xstates()(
        raw in prop::array::uniform4(1e-3..1.0f64),
        u14 in 0.0..=1.0f64,
        u23 in 0.0..=1.0f64,
        t14 in 0.0..std::f64::consts::TAU,
        t23 in 0.0..std::f64::consts::TAU,
    ) -> XState {
        let sum: f64 = raw.iter().sum();
        let d: Vec<f64> = raw.iter().map(|r| r / sum).collect();
        let bound = (d[0] * d[3]).sqrt().min((d[1] * d[2]).sqrt());
        XState::new(
            d[0], d[1], d[2], d[3],
            Complex64::from_polar(u14 * bound, t14),
            Complex64::from_polar(u23 * bound, t23),
        )
        .expect("coherences below both bounds are valid")
    }
}

proptest! {
    #[test]
    fn swap_probabilities_sum_to_one_and_outcomes_are_valid(
        x in xstates(), xp in xstates()
    ) {
        let set = swap_outcomes(&x, &xp).unwrap();
        prop_assert!(set.probability_sum_defect() <= 1e-12);
        for outcome in &set.outcomes {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&outcome.probability));
            if let Some(state) = &outcome.state {
                prop_assert!(validate(state, Tolerance::default()).pass);
                let c = outcome.concurrence.unwrap();
                prop_assert!((0.0..=1.0).contains(&c));
            } else {
                prop_assert_eq!(outcome.probability, 0.0);
            }
        }
    }

    #[test]
    fn psi_concurrence_dominates_phi_at_every_phase(x in xstates()) {
        let c_psi = concurrence_psi(&x).unwrap();
        for k in 0..=10 {
            let delta = k as f64 / 10.0 * std::f64::consts::TAU;
            let c_phi = concurrence_phi(&x, delta).unwrap();
            prop_assert!(c_psi >= c_phi - 1e-12);
        }
    }

    #[test]
    fn threshold_regime_agrees_with_the_inequalities(x in xstates()) {
        let report = thresholds(&x).unwrap();
        let conditions = outcome_entanglement_conditions(&x).unwrap();
        prop_assert_eq!(report.regime, conditions);
        prop_assert!(report.c_th_min >= 0.0);
        prop_assert!(report.c_th_max <= 1.0);
        prop_assert!(report.c_th_min <= report.c_th_max + 1e-15);
    }

    #[test]
    fn phi_and_psi_pairs_are_sigma_z_equivalent(x in xstates(), xp in xstates()) {
        let set = swap_outcomes(&x, &xp).unwrap();
        let lu = local_unitary_equivalence_check(&set).unwrap();
        prop_assert!(lu.phi_pair_sigma_z);
        prop_assert!(lu.psi_pair_sigma_z);
        prop_assert!(lu.max_sigma_z_defect <= 1e-12);
    }

    #[test]
    fn separable_inputs_produce_four_separable_outcomes(x in separable_xstates()) {
        prop_assert_eq!(concurrence_x(&x).unwrap(), 0.0);
        let set = swap_outcomes(&x, &x).unwrap();
        for outcome in &set.outcomes {
            if let Some(c) = outcome.concurrence {
                prop_assert_eq!(c, 0.0);
            }
        }
    }

    #[test]
    fn x_matrices_are_valid_densities_with_unit_eigenvalue_sum(x in xstates()) {
        let m = to_matrix(&x);
        let diag = validate_density(&m, Tolerance::default());
        prop_assert!(diag.pass, "{diag:?}");
        let values = xswap::linalg::hermitian_eigenvalues(&m, Tolerance::default())
            .unwrap();
        let sum: f64 = values.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
        for v in values {
            prop_assert!((-1e-10..=1.0 + 1e-10).contains(&v));
        }
    }

    #[test]
    fn joint_states_are_valid_and_conditionals_are_x_states(
        x in xstates(), xp in xstates()
    ) {
        let joint = joint_state(&x, &xp).unwrap();
        let diag = validate_density(&joint.matrix, Tolerance::default());
        prop_assert!(diag.pass);
        // The raw tensor product, before reordering, is a density matrix too.
        let product = kron(&to_matrix(&x), &to_matrix(&xp));
        prop_assert!(validate_density(&product, Tolerance::default()).pass);
        for m in measure_bell(&joint) {
            if let Some(state) = &m.state {
                let back = from_matrix(state, Tolerance::default()).unwrap();
                prop_assert!(validate(&back, Tolerance::default()).pass);
            }
        }
    }

    #[test]
    fn state_files_round_trip_exactly(x in xstates(), xp in xstates()) {
        let text = StateFile::pair(&x, &xp).to_json();
        let back = parse_states(&text).unwrap();
        prop_assert_eq!(xstate_max_abs_diff(&back[0], &x), 0.0);
        prop_assert_eq!(xstate_max_abs_diff(&back[1], &xp), 0.0);
    }

    #[test]
    fn eof_stays_inside_the_unit_interval(c in 0.0..=1.0f64) {
        let e = xswap::families::eof_from_concurrence(c).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
    }

    #[test]
    fn pure_swap_probabilities_are_normalized_and_average_never_gains(
        a in 0.0..=1.0f64
    ) {
        let p = xswap::families::pure_swap(a).unwrap();
        prop_assert!((2.0 * p.p_phi + 2.0 * p.p_psi - 1.0).abs() <= 1e-12);
        prop_assert!(p.e_avg <= p.e_in + 1e-12);
        prop_assert!(p.p_psi <= p.p_phi + 1e-15);
    }
}

proptest! {
    // Oracle comparisons cost an eigensolve per case; keep the count modest.
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_concurrence_matches_the_general_construction(x in xstates()) {
        let closed = concurrence_x(&x).unwrap();
        let general =
            concurrence_general(&to_matrix(&x), Tolerance::default()).unwrap();
        prop_assert!((closed - general).abs() <= 1e-9);
    }

    #[test]
    fn closed_form_swap_matches_the_oracle(x in xstates(), xp in xstates()) {
        let dev = xswap::verify::compare_pair(&x, &xp).unwrap();
        prop_assert!(dev.max() <= 1e-9, "deviation {dev:?}");
    }
}
