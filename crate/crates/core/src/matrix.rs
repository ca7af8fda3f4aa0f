// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra used by every other module.
//!
//! Matrices are plain [`nalgebra::DMatrix`] values over [`Complex64`]. Composite
//! systems use the convention that subsystem 1 is the slow index: the product
//! basis vector `|i>|j>` of an `n1 x n2` system sits at row `i * n2 + j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;

/// Absolute tolerance (Frobenius norm) used when a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Selects one factor of a bipartite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    First,
    Second,
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c64(x, 0.0)))
}

pub fn diag(values: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_column_slice(values))
}

pub fn diag_real(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values.iter().map(|&x| c64(x, 0.0)),
    ))
}

/// Pauli matrices in the computational basis.
pub fn pauli_x() -> ComplexMatrix {
    from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> ComplexMatrix {
    from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// `|k><k|` in dimension `n`.
pub fn projector(n: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(k, k)] = ONE;
    m
}

/// Computational basis column vector `|k>`.
pub fn basis_vector(n: usize, k: usize) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(n, 1);
    v[(k, 0)] = ONE;
    v
}

pub fn require_square(m: &ComplexMatrix) -> Result<usize> {
    if m.is_square() {
        Ok(m.nrows())
    } else {
        Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

pub fn ensure_finite(m: &ComplexMatrix) -> Result<()> {
    for (idx, z) in m.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            // column-major storage
            return Err(Error::NonFinite {
                row: idx % m.nrows(),
                col: idx / m.nrows(),
            });
        }
    }
    Ok(())
}

/// Kronecker product; block `(i, j)` of the result is `a[(i, j)] * b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, left to right.
pub fn tensor_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    factors
        .iter()
        .fold(identity(1), |acc, f| acc.kronecker(*f))
}

/// Reduced operator on `keep` of an operator on a `dim1 * dim2` system.
pub fn partial_trace(
    m: &ComplexMatrix,
    dim1: usize,
    dim2: usize,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    let total = dim1 * dim2;
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::DimensionMismatch(format!(
            "partial trace expects a {total}x{total} operator, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let out = match keep {
        Subsystem::First => ComplexMatrix::from_fn(dim1, dim1, |i, k| {
            (0..dim2).map(|j| m[(i * dim2 + j, k * dim2 + j)]).sum()
        }),
        Subsystem::Second => ComplexMatrix::from_fn(dim2, dim2, |j, l| {
            (0..dim1).map(|i| m[(i * dim2 + j, i * dim2 + l)]).sum()
        }),
    };
    Ok(out)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.trace()
}

/// Frobenius norm.
pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.norm()
}

/// Frobenius distance `||a - b||`, or infinity when the shapes differ.
pub fn distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    (a - b).norm()
}

/// Hilbert-Schmidt inner product `Tr[a^dagger b]`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// `||m m^dagger - 1||`.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    (m * m.adjoint() - identity(m.nrows())).norm()
}

pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(m) <= tol
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Only the Hermitian part of `m` is used.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are orthonormal eigenvectors, in the order of `values`.
    pub vectors: ComplexMatrix,
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = require_square(m)?;
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Rebuilds `V f(diag) V^dagger` from an eigen-decomposition.
pub fn spectral_map(eig: &HermitianEigen, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
    let n = eig.values.len();
    let mut scaled = eig.vectors.clone();
    for (j, &lambda) in eig.values.iter().enumerate() {
        let s = f(lambda);
        for i in 0..n {
            scaled[(i, j)] *= s;
        }
    }
    scaled * eig.vectors.adjoint()
}

/// Principal square root of a positive semidefinite matrix.
///
/// Small negative eigenvalues caused by rounding are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    Ok(spectral_map(&eig, |x| c64(x.max(0.0).sqrt(), 0.0)))
}

/// Trace distance `||a - b||_1 / 2` between Hermitian operators.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "trace distance between {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let eig = hermitian_eigen(&(a - b))?;
    Ok(0.5 * eig.values.iter().map(|x| x.abs()).sum::<f64>())
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2` of two density
/// operators.
pub fn state_fidelity(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.shape() != sigma.shape() {
        return Err(Error::DimensionMismatch(format!(
            "fidelity between {:?} and {:?}",
            rho.shape(),
            sigma.shape()
        )));
    }
    let root = psd_sqrt(rho)?;
    let inner = hermitian_eigen(&(&root * sigma * &root))?;
    let t: f64 = inner.values.iter().map(|x| x.max(0.0).sqrt()).sum();
    Ok((t * t).min(1.0))
}

/// Checks that `rho` is Hermitian, positive semidefinite and of unit trace,
/// each to within `tol`.
pub fn validate_density(rho: &ComplexMatrix, tol: f64) -> Result<()> {
    let n = require_square(rho).map_err(|e| Error::InvalidDensity(e.to_string()))?;
    ensure_finite(rho).map_err(|e| Error::InvalidDensity(e.to_string()))?;
    let herm = (rho - rho.adjoint()).norm();
    if herm > tol {
        return Err(Error::InvalidDensity(format!(
            "not Hermitian (residual {herm:.3e})"
        )));
    }
    let tr = rho.trace();
    if (tr - ONE).norm() > tol {
        return Err(Error::InvalidDensity(format!(
            "trace is {tr}, expected 1"
        )));
    }
    let eig = hermitian_eigen(rho)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::InvalidDensity(format!(
            "negative eigenvalue {min:.3e} in dimension {n}"
        )));
    }
    Ok(())
}

/// Singular value decomposition `a = left * diag(singular_values) * right^dagger`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub left: ComplexMatrix,
    /// Non-negative, descending.
    pub singular_values: Vec<f64>,
    pub right: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let s: Vec<Complex64> = self.singular_values.iter().map(|&x| c64(x, 0.0)).collect();
        &self.left * diag(&s) * self.right.adjoint()
    }
}

/// Thin SVD: for an `m x n` input the factors are `m x k` and `n x k`
/// with `k = min(m, n)`.
pub fn svd(a: &ComplexMatrix) -> Svd {
    let k = a.nrows().min(a.ncols());
    if k == 0 {
        return Svd {
            left: ComplexMatrix::zeros(a.nrows(), 0),
            singular_values: Vec::new(),
            right: ComplexMatrix::zeros(a.ncols(), 0),
        };
    }
    let dec = a.clone().svd(true, true);
    let u = dec.u.expect("left vectors requested");
    let v_t = dec.v_t.expect("right vectors requested");
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| dec.singular_values[y].total_cmp(&dec.singular_values[x]));
    let left = ComplexMatrix::from_fn(a.nrows(), k, |i, j| u[(i, order[j])]);
    let right = ComplexMatrix::from_fn(a.ncols(), k, |i, j| v_t[(order[j], i)].conj());
    let singular_values = order
        .iter()
        .map(|&j| dec.singular_values[j].max(0.0))
        .collect();
    Svd {
        left,
        singular_values,
        right,
    }
}

/// Polar decomposition `a = unitary * positive` with `positive = sqrt(a^dagger a)`.
#[derive(Clone, Debug)]
pub struct Polar {
    pub unitary: ComplexMatrix,
    pub positive: ComplexMatrix,
}

/// Polar decomposition of a square matrix.
///
/// The unitary factor is `U W^dagger` from the SVD `a = U S W^dagger`, so a
/// rank-deficient input still yields a well-defined, reproducible unitary.
pub fn polar(a: &ComplexMatrix) -> Result<Polar> {
    require_square(a)?;
    let dec = svd(a);
    let s: Vec<Complex64> = dec.singular_values.iter().map(|&x| c64(x, 0.0)).collect();
    let unitary = &dec.left * dec.right.adjoint();
    let positive = &dec.right * diag(&s) * dec.right.adjoint();
    Ok(Polar {
        unitary,
        positive: hermitian_part(&positive),
    })
}

/// Matrix exponential by scaling and squaring with a Padé approximant.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_square(a)?;
    ensure_finite(a)?;
    Ok(a.clone().exp())
}

/// Determinant of a square matrix.
pub fn det(a: &ComplexMatrix) -> Result<Complex64> {
    require_square(a)?;
    Ok(a.determinant())
}

/// JSON container shared by every file format: `{"rows", "cols", "data"}`
/// with `data` the row-major list of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        ensure_finite(m)?;
        let mut data = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                data.push([z.re, z.im]);
            }
        }
        Ok(Self {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        })
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidArgument(
                "matrix dimensions must be positive".into(),
            ));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.data.len()
            )));
        }
        let m = ComplexMatrix::from_row_iterator(
            self.rows,
            self.cols,
            self.data.iter().map(|&[re, im]| c64(re, im)),
        );
        ensure_finite(&m)?;
        Ok(m)
    }
}

/// Serializes a matrix in the shared JSON format.
pub fn matrix_to_json(m: &ComplexMatrix) -> Result<String> {
    Ok(serde_json::to_string(&MatrixRecord::from_matrix(m)?)?)
}

pub fn matrix_from_json(s: &str) -> Result<ComplexMatrix> {
    serde_json::from_str::<MatrixRecord>(s)?.to_matrix()
}

/// Serde adapter for `ComplexMatrix` fields, using [`MatrixRecord`].
pub mod serde_matrix {
    use super::{ComplexMatrix, MatrixRecord};
    use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &ComplexMatrix, s: S) -> Result<S::Ok, S::Error> {
        MatrixRecord::from_matrix(m)
            .map_err(ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexMatrix, D::Error> {
        MatrixRecord::deserialize(d)?
            .to_matrix()
            .map_err(de::Error::custom)
    }
}

/// Serde adapter for `Vec<ComplexMatrix>` fields.
pub mod serde_matrix_vec {
    use super::{ComplexMatrix, MatrixRecord};
    use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(ms: &[ComplexMatrix], s: S) -> Result<S::Ok, S::Error> {
        ms.iter()
            .map(MatrixRecord::from_matrix)
            .collect::<Result<Vec<_>, _>>()
            .map_err(ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ComplexMatrix>, D::Error> {
        Vec::<MatrixRecord>::deserialize(d)?
            .iter()
            .map(|r| r.to_matrix().map_err(de::Error::custom))
            .collect()
    }
}
