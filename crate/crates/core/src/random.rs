// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded generation of test objects.
//!
//! All generators draw from ChaCha8 seeded through `seed_from_u64`, so a seed
//! fixes the output on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{c64, ComplexMatrix};

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` pushed back into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Density operator `G G^dagger / Tr[G G^dagger]` for Ginibre `G` (full rank
/// with probability one).
pub fn random_density_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    let p = &g * g.adjoint();
    let tr = p.trace();
    let rho = p / tr;
    crate::matrix::hermitian_part(&rho)
}

/// Unit-norm column vector, uniform on the sphere.
pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let v = ginibre(rng, dim, 1);
    let n = v.norm();
    v / c64(n, 0.0)
}

/// Pure-state density operator `|psi><psi|` for a random `psi`.
pub fn random_pure_density_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let v = random_state_with(rng, dim);
    &v * v.adjoint()
}

/// Random operator normalized to unit Frobenius norm.
pub fn random_operator_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    let n = g.norm();
    g / c64(n, 0.0)
}

pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    haar_unitary(&mut seeded(seed), dim)
}

pub fn random_density(dim: usize, seed: u64) -> ComplexMatrix {
    random_density_with(&mut seeded(seed), dim)
}
