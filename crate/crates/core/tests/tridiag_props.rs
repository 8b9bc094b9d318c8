use heller_core::{interlace_check, ModelProblem, SymTridiag};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = SymTridiag> {
    (2usize..30).prop_flat_map(|n| {
        (
            prop::collection::vec(-3.0f64..3.0, n),
            prop::collection::vec(prop_oneof![-2.0f64..-0.05, 0.05f64..2.0], n - 1),
        )
            .prop_map(|(d, o)| SymTridiag::new(d, o).unwrap())
    })
}

proptest! {
    #[test]
    fn decomposition_invariants(h in matrix()) {
        let es = h.eigh().unwrap();
        let n = h.dim();
        let scale = h.norm_inf();
        prop_assert!(es.max_residual(&h) <= 1e-12 * scale.max(1.0));
        // sorted, orthonormal, trace preserved
        prop_assert!(es.values().windows(2).all(|w| w[0] < w[1]));
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = es.vector(a).iter().zip(es.vector(b)).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-12, "<v{a}, v{b}> = {dot}");
            }
        }
        let trace: f64 = h.diag().iter().sum();
        let sum: f64 = es.values().iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-12 * scale.max(1.0) * n as f64);
        // first-row weights form a probability distribution
        let total: f64 = es.first_row_sq().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_interlace_without_bound_states(
        a in -1.0f64..1.0,
        b in 0.1f64..1.0,
        n in 3usize..40,
    ) {
        prop_assume!(ModelProblem::bound_states(a, b).is_empty());
        let h = ModelProblem::chebyshev_modified(a, b).unwrap().build_hamiltonian(n).unwrap();
        let full = h.eigh().unwrap();
        prop_assert!(interlace_check(full.values(), h.drop_first().unwrap().eigh().unwrap().values()).unwrap());
        prop_assert!(interlace_check(full.values(), h.drop_last().unwrap().eigh().unwrap().values()).unwrap());
    }
}
