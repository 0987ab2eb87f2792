use entbroadcast::broadcast::{bell_range, broadcast_report, Conventions};
use entbroadcast::cloners::{clone_state, ClonerKind, NonlocalClonerSpec};
use entbroadcast::measures::{broadcast_fidelity, ppt_verdict_bloch, teleportation_fidelity, FbConvention};
use entbroadcast::qmat::{herm_eigenvalues, kron, partial_trace, partial_transpose, SubsystemShape};
use entbroadcast::states::{bell_diagonal, purity, sample_with_seed, BellDiagonalParams, Sampler};
use proptest::prelude::*;

fn sampler() -> impl Strategy<Value = Sampler> {
    prop_oneof![Just(Sampler::HilbertSchmidt), Just(Sampler::BlochRejection)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_of_product(seed_a in any::<u64>(), seed_b in any::<u64>(), s in sampler()) {
        let a = sample_with_seed(seed_a, s).density_unchecked();
        let b = sample_with_seed(seed_b, s).density_unchecked();
        let ab = kron(&a, &b);
        let shape = SubsystemShape::new([4, 4]).unwrap();
        prop_assert!(partial_trace(&ab, &shape, &[0]).unwrap().max_abs_diff(&a) < 1e-12);
        prop_assert!(partial_trace(&ab, &shape, &[1]).unwrap().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn partial_transpose_keeps_trace_and_is_involutive(seed in any::<u64>(), s in sampler()) {
        let rho = sample_with_seed(seed, s).density_unchecked();
        let shape = SubsystemShape::qubits(2);
        let pt = partial_transpose(&rho, &shape, 1).unwrap();
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(partial_transpose(&pt, &shape, 1).unwrap().max_abs_diff(&rho) < 1e-15);
        let sum: f64 = herm_eigenvalues(&pt).unwrap().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sampled_states_are_valid(seed in any::<u64>(), s in sampler()) {
        let st = sample_with_seed(seed, s);
        prop_assert!(st.validate().is_ok());
        let p = purity(&st);
        prop_assert!((0.25 - 1e-12..=1.0 + 1e-12).contains(&p));
    }

    #[test]
    fn teleportation_fidelity_bounds(seed in any::<u64>(), s in sampler()) {
        let st = sample_with_seed(seed, s);
        let tf = teleportation_fidelity(&st).unwrap();
        prop_assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&tf));
        // separable states cannot beat the classical 2/3
        if !ppt_verdict_bloch(&st).unwrap().inseparable {
            prop_assert!(tf <= 2.0 / 3.0 + 1e-9);
        }
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(a in any::<u64>(), b in any::<u64>(), s in sampler()) {
        let (x, y) = (sample_with_seed(a, s), sample_with_seed(b, s));
        let xy = broadcast_fidelity(&x, &y, FbConvention::Root).unwrap();
        let yx = broadcast_fidelity(&y, &x, FbConvention::Root).unwrap();
        prop_assert!((xy - yx).abs() < 1e-9);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&xy));
        let sq = broadcast_fidelity(&x, &y, FbConvention::Squared).unwrap();
        prop_assert!((sq - xy * xy).abs() < 1e-12);
    }

    #[test]
    fn nonlocal_cloner_shrinks_uniformly(seed in any::<u64>(), s in sampler(), n in 2usize..=5) {
        let st = sample_with_seed(seed, s);
        let eta = NonlocalClonerSpec::new(n).unwrap().shrink_factor();
        let out = clone_state(&st, ClonerKind::Nonlocal, n).unwrap();
        prop_assert!(out.desired_pair.max_abs_diff(&st.scaled(eta, eta)) < 1e-12);
        prop_assert!(out.desired_pair_alt.max_abs_diff(&out.desired_pair) < 1e-12);
        // both copies see the same single-qubit marginals
        prop_assert!((out.side_pair_a.x - out.side_pair_a.y).norm() < 1e-12);
        prop_assert!((out.side_pair_b.x - out.side_pair_b.y).norm() < 1e-12);
    }

    #[test]
    fn cloned_pairs_are_states(seed in any::<u64>(), s in sampler(), nonlocal in any::<bool>()) {
        let st = sample_with_seed(seed, s);
        let kind = if nonlocal { ClonerKind::Nonlocal } else { ClonerKind::Local };
        let out = clone_state(&st, kind, 2).unwrap();
        for pair in [&out.desired_pair, &out.desired_pair_alt, &out.side_pair_a, &out.side_pair_b] {
            prop_assert!(pair.validate().is_ok());
        }
    }

    #[test]
    fn cloning_never_gains_teleportation_power(seed in any::<u64>(), s in sampler(), n in 2usize..=5) {
        let st = sample_with_seed(seed, s);
        let r = broadcast_report(&st, ClonerKind::Nonlocal, n).unwrap();
        prop_assert!(r.dtf >= -1e-12);
        for c in Conventions::all() {
            prop_assert!(r.raw.sum_tf(c) <= 2.0 && r.raw.sum_dc(c) <= 3.0);
        }
    }

    #[test]
    fn bell_range_agrees_with_pointwise_ppt(
        c in prop::array::uniform3(-1.0f64..=1.0),
        swept in 0usize..3,
        nonlocal in any::<bool>(),
    ) {
        let Ok(params) = BellDiagonalParams::new(c[0], c[1], c[2]) else { return Ok(()); };
        let kind = if nonlocal { ClonerKind::Nonlocal } else { ClonerKind::Local };
        let out = clone_state(&bell_diagonal(params), kind, 2).unwrap();
        let v = ppt_verdict_bloch(&out.desired_pair).unwrap();
        prop_assume!(v.min_pt_eigenvalue.abs() > 1e-6);
        let range = bell_range(c, swept, kind, 2).unwrap();
        prop_assert_eq!(range.contains(c[swept]), v.inseparable);
    }
}
