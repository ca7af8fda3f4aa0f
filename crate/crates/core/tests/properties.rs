// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

use bellbasis::doubleket::{apply_local, dk_inner, schmidt, DoubleKet};
use bellbasis::matrix::{
    c64, distance, hs_inner, identity, matrix_from_json, matrix_to_json, partial_trace, tensor,
    trace, Subsystem,
};
use bellbasis::random::{ginibre, haar_unitary, random_density_with, seeded};
use bellbasis::spanning::{shift_multiply, znzn_basis};
use bellbasis::teleport::{min_fidelity_analytic, KrausChannel};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kronecker_mixed_product(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut rng = seeded(seed);
        let (a, c) = (ginibre(&mut rng, n, n), ginibre(&mut rng, n, n));
        let (b, d) = (ginibre(&mut rng, m, m), ginibre(&mut rng, m, m));
        let lhs = tensor(&a, &b) * tensor(&c, &d);
        let rhs = tensor(&(&a * &c), &(&b * &d));
        prop_assert!(distance(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn local_action_composes(seed in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let mut rng = seeded(seed);
        let k = DoubleKet::new(ginibre(&mut rng, n, m));
        let (a1, a2) = (ginibre(&mut rng, n, n), ginibre(&mut rng, n, n));
        let (b1, b2) = (ginibre(&mut rng, m, m), ginibre(&mut rng, m, m));
        let twice = apply_local(&a2, &b2, &apply_local(&a1, &b1, &k).unwrap()).unwrap();
        let once = apply_local(&(&a2 * &a1), &(&b2 * &b1), &k).unwrap();
        prop_assert!(distance(twice.mat(), once.mat()) < 1e-9);
    }

    #[test]
    fn inner_product_is_hilbert_schmidt(seed in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let mut rng = seeded(seed);
        let a = ginibre(&mut rng, n, m);
        let b = ginibre(&mut rng, n, m);
        let dk = dk_inner(&DoubleKet::new(a.clone()), &DoubleKet::new(b.clone())).unwrap();
        prop_assert!((dk - hs_inner(&a, &b)).norm() < 1e-12);
    }

    #[test]
    fn schmidt_coefficients_survive_local_unitaries(seed in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let mut rng = seeded(seed);
        let k = DoubleKet::new(ginibre(&mut rng, n, m)).normalized().unwrap();
        let (u, v) = (haar_unitary(&mut rng, n), haar_unitary(&mut rng, m));
        let moved = apply_local(&u, &v, &k).unwrap();
        let (before, after) = (schmidt(&k).coefficients, schmidt(&moved).coefficients);
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        let total: f64 = after.iter().map(|c| c * c).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_traces_preserve_trace(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let rho = random_density_with(&mut seeded(seed), n * m);
        for keep in [Subsystem::First, Subsystem::Second] {
            let reduced = partial_trace(&rho, n, m, keep).unwrap();
            prop_assert!((trace(&reduced) - c64(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn random_channels_preserve_trace(seed in any::<u64>(), dim in 2usize..5, count in 1usize..5) {
        let mut rng = seeded(seed);
        let ch = KrausChannel::random(&mut rng, dim, count).unwrap();
        let out = ch.apply(&random_density_with(&mut rng, dim)).unwrap();
        prop_assert!((trace(&out) - c64(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn min_fidelity_is_local_unitary_invariant(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let s = ginibre(&mut rng, 2, 2);
        let moved = haar_unitary(&mut rng, 2) * &s * haar_unitary(&mut rng, 2);
        let a = min_fidelity_analytic(&s).unwrap().analytic.unwrap();
        let b = min_fidelity_analytic(&moved).unwrap().analytic.unwrap();
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn matrix_json_round_trip_is_exact(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let m = ginibre(&mut seeded(seed), rows, cols);
        let back = matrix_from_json(&matrix_to_json(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn shift_multiply_elements_are_unitary(dim in 2usize..9, m in 0usize..9, n in 0usize..9) {
        let u = shift_multiply(dim, m % dim, n % dim);
        prop_assert!(distance(&(u.adjoint() * &u), &identity(dim)) < 1e-12);
    }
}

#[test]
fn znzn_elements_are_orthogonal() {
    for dim in 2..=6 {
        let basis = znzn_basis(dim).unwrap();
        for (i, a) in basis.elements().iter().enumerate() {
            for (j, b) in basis.elements().iter().enumerate() {
                let expected = if i == j { dim as f64 } else { 0.0 };
                assert!((hs_inner(a, b) - c64(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}
