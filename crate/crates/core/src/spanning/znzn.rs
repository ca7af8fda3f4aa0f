// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! The `N`-dimensional shift-multiply representation of `Z_N x Z_N`.
//!
//! `U(m, n) = sum_k w^(k m) |k><k + n|` with `w = exp(2 pi i / N)` and the
//! index addition taken mod `N`. For `N = 2` these are the Pauli matrices up
//! to phases: `U(1, 0) = Z`, `U(0, 1) = X`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};
use crate::spanning::SpanningSet;

/// `w^k` for `w = exp(2 pi i / dim)`, with the exponent reduced mod `dim`.
pub fn root_of_unity(dim: usize, k: i64) -> Complex64 {
    let r = k.rem_euclid(dim as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r / dim as f64)
}

/// `U(m, n)` in dimension `dim`.
pub fn shift_multiply(dim: usize, m: usize, n: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::from_element(dim, dim, ZERO);
    for k in 0..dim {
        u[(k, (k + n) % dim)] = root_of_unity(dim, (k * m) as i64);
    }
    u
}

/// The `N^2` operators `U(m, n)`, ordered row-major in `(m, n)`.
#[derive(Clone, Debug)]
pub struct ZnZnBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

pub fn znzn_basis(dim: usize) -> Result<ZnZnBasis> {
    if dim < 1 {
        return Err(Error::InvalidArgument(
            "Z_N x Z_N basis needs N >= 1".into(),
        ));
    }
    let elements = (0..dim)
        .flat_map(|m| (0..dim).map(move |n| (m, n)))
        .map(|(m, n)| shift_multiply(dim, m, n))
        .collect();
    Ok(ZnZnBasis { dim, elements })
}

impl ZnZnBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, m: usize, n: usize) -> usize {
        m * self.dim + n
    }

    pub fn element(&self, m: usize, n: usize) -> &ComplexMatrix {
        &self.elements[self.index(m, n)]
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// `(m, n)` for every element, in storage order.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        (0..self.dim)
            .flat_map(|m| (0..self.dim).map(move |n| (m, n)))
            .collect()
    }

    /// The basis as a spanning set with the weight `1/N` on every element.
    pub fn spanning_set(&self) -> SpanningSet {
        let w = 1.0 / self.dim as f64;
        SpanningSet::new(
            self.elements.clone(),
            vec![w; self.elements.len()],
            self.labels().into_iter().map(|(m, n)| json!([m, n])).collect(),
        )
        .expect("shift-multiply operators form a valid set")
    }
}

/// Phase `w^(n m' - m n')` with `U(m,n) U(m',n') U(m,n)^dagger = phase * U(m',n')`.
pub fn commutation_phase(
    dim: usize,
    m: usize,
    n: usize,
    m2: usize,
    n2: usize,
) -> Result<Complex64> {
    if dim == 0 || [m, n, m2, n2].iter().any(|&x| x >= dim) {
        return Err(Error::InvalidArgument(format!(
            "indices ({m},{n}), ({m2},{n2}) out of range for N = {dim}"
        )));
    }
    let exponent = (n * m2) as i64 - (m * n2) as i64;
    Ok(root_of_unity(dim, exponent))
}

/// Fourier transform over `Z_N x Z_N`:
/// `g(m, n) = sum_{m', n'} w^(n m' - m n') f(m', n')`.
///
/// Tables are row-major in `(m, n)` with `N^2` entries. Applying the transform
/// twice returns `N^2 f`.
pub fn group_fourier(dim: usize, f: &[Complex64]) -> Result<Vec<Complex64>> {
    fourier_with_sign(dim, f, 1)
}

/// The transform with the conjugated kernel; applying it after
/// [`group_fourier`] returns `N^2 f(-m, -n)`.
pub fn group_fourier_conjugate(dim: usize, f: &[Complex64]) -> Result<Vec<Complex64>> {
    fourier_with_sign(dim, f, -1)
}

fn fourier_with_sign(dim: usize, f: &[Complex64], sign: i64) -> Result<Vec<Complex64>> {
    if f.len() != dim * dim || dim == 0 {
        return Err(Error::DimensionMismatch(format!(
            "a table over Z_{dim} x Z_{dim} needs {} entries, got {}",
            dim * dim,
            f.len()
        )));
    }
    let mut out = vec![ZERO; dim * dim];
    for m in 0..dim {
        for n in 0..dim {
            let mut acc = ZERO;
            for m2 in 0..dim {
                for n2 in 0..dim {
                    let exponent = (n * m2) as i64 - (m * n2) as i64;
                    acc += root_of_unity(dim, sign * exponent) * f[m2 * dim + n2];
                }
            }
            out[m * dim + n] = acc;
        }
    }
    Ok(out)
}
