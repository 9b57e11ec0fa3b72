mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn penalty_is_identity_on_feasible_points(
        raw in -1e6..1e6f64,
        slack in prop::collection::vec(-1e3..=0.0f64, 0..8),
        excess in 1e-6..1e3f64,
    ) {
        penalty_identity(raw, slack, excess)?;
    }

    #[test]
    fn engineering_penalty_consistency(beam: bool, a in unit_vec(4), b in unit_vec(4)) {
        engineering_penalty(beam, a, b)?;
    }

    #[test]
    fn clamping_is_idempotent(x in prop::collection::vec(-20.0..20.0f64, 1..10)) {
        clamp_idempotent(x)?;
    }

    #[test]
    fn noise_does_not_move_stochastic_minimum(
        id in 9u8..=12,
        dim in 2usize..=16,
        eps in noise_vec(16),
    ) {
        stochastic_minimum(id, dim, eps)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn optimizer_runs_keep_invariants(
        algo in 0u8..3,
        id in 1u8..=12,
        dim in 2usize..=5,
        seed: u64,
        budget in 0u64..800,
    ) {
        run_invariants(algo, id, dim, seed, budget)?;
    }
}
