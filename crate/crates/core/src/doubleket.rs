// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bipartite pure states as coefficient matrices.
//!
//! A vector `sum_ij c_ij |i>|j>` of an `N x M` system is stored as the matrix
//! `C = (c_ij)` and written `|C>>`. In this representation local operators act
//! by matrix multiplication, `(A (x) B)|C>> = |A C B^T>>`, and inner products
//! and partial traces of dyads reduce to matrix products:
//!
//! * `<<A|B>> = Tr[A^dagger B]`
//! * `Tr_2[|A>><<B|] = A B^dagger`
//! * `Tr_1[|A>><<B|] = A^T B^*`
//!
//! Transposes and conjugates are always with respect to the computational
//! basis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{
    c64, hermitian_eigen, hs_inner, identity, polar, require_square, svd, unitarity_residual,
    ComplexMatrix, MatrixRecord, Subsystem, DEFAULT_TOL,
};

/// Default tolerance of [`is_max_entangled`].
pub const MAX_ENTANGLED_TOL: f64 = 1e-8;

/// The bipartite vector `|C>>` with coefficient matrix `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleKet {
    mat: ComplexMatrix,
}

impl DoubleKet {
    pub fn new(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    /// `|1>>`, the unnormalized maximally entangled vector `sum_k |k>|k>`.
    pub fn identity(n: usize) -> Self {
        Self::new(identity(n))
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    /// `(N, M)`: dimensions of the first and second factor.
    pub fn dims(&self) -> (usize, usize) {
        self.mat.shape()
    }

    /// Coefficients in the product basis as an `N*M x 1` column, row-major in
    /// `C`.
    pub fn as_vector(&self) -> ComplexMatrix {
        let (n, m) = self.dims();
        ComplexMatrix::from_fn(n * m, 1, |r, _| self.mat[(r / m, r % m)])
    }

    pub fn from_vector(v: &ComplexMatrix, n: usize, m: usize) -> Result<Self> {
        if v.ncols() != 1 || v.nrows() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "a {n}x{m} double-ket needs a {}x1 vector, got {}x{}",
                n * m,
                v.nrows(),
                v.ncols()
            )));
        }
        Ok(Self::new(ComplexMatrix::from_fn(n, m, |i, j| v[(i * m + j, 0)])))
    }

    pub fn norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroOperator);
        }
        Ok(Self::new(&self.mat / c64(n, 0.0)))
    }

    /// Projector-like dyad `|self>><<other|` as a dense operator.
    pub fn dyad(&self, other: &DoubleKet) -> ComplexMatrix {
        self.as_vector() * other.as_vector().adjoint()
    }

    pub fn projector(&self) -> ComplexMatrix {
        self.dyad(self)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&DoubleKetRecord::from(self)?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let record: DoubleKetRecord = serde_json::from_str(s)?;
        if record.kind != "doubleket" {
            return Err(Error::InvalidArgument(format!(
                "expected kind \"doubleket\", found \"{}\"",
                record.kind
            )));
        }
        Ok(Self::new(record.matrix.to_matrix()?))
    }
}

/// File form of a [`DoubleKet`]: the shared matrix container tagged with
/// `"kind": "doubleket"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleKetRecord {
    pub kind: String,
    #[serde(flatten)]
    pub matrix: MatrixRecord,
}

impl DoubleKetRecord {
    pub fn from(k: &DoubleKet) -> Result<Self> {
        Ok(Self {
            kind: "doubleket".into(),
            matrix: MatrixRecord::from_matrix(&k.mat)?,
        })
    }
}

/// `(a (x) b)|C>> = |a C b^T>>`.
pub fn apply_local(a: &ComplexMatrix, b: &ComplexMatrix, k: &DoubleKet) -> Result<DoubleKet> {
    let (n, m) = k.dims();
    if a.ncols() != n || b.ncols() != m {
        return Err(Error::DimensionMismatch(format!(
            "local operators {}x{} and {}x{} cannot act on a {n}x{m} double-ket",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(DoubleKet::new(a * &k.mat * b.transpose()))
}

/// `<<a|b>> = Tr[a^dagger b]`.
pub fn dk_inner(a: &DoubleKet, b: &DoubleKet) -> Result<Complex64> {
    same_dims(a, b)?;
    Ok(hs_inner(&a.mat, &b.mat))
}

/// Partial trace of the dyad `|a>><<b|`, keeping one factor.
pub fn dyad_ptrace(a: &DoubleKet, b: &DoubleKet, keep: Subsystem) -> Result<ComplexMatrix> {
    same_dims(a, b)?;
    Ok(match keep {
        Subsystem::First => &a.mat * b.mat.adjoint(),
        Subsystem::Second => a.mat.transpose() * b.mat.conjugate(),
    })
}

fn same_dims(a: &DoubleKet, b: &DoubleKet) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!(
            "double-kets of shape {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(())
}

/// `sum_i c_i |l_i>|r_i>` with `c_i >= 0` descending.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    /// Columns are the vectors on the first factor.
    pub left: ComplexMatrix,
    /// Columns are the vectors on the second factor.
    pub right: ComplexMatrix,
}

impl SchmidtForm {
    /// Reassembles the coefficient matrix `sum_i c_i l_i r_i^T`.
    pub fn reconstruct(&self) -> DoubleKet {
        let (n, m) = (self.left.nrows(), self.right.nrows());
        let mut mat = ComplexMatrix::zeros(n, m);
        for (i, &c) in self.coefficients.iter().enumerate() {
            mat += self.left.column(i) * self.right.column(i).transpose() * c64(c, 0.0);
        }
        DoubleKet::new(mat)
    }

    /// Number of coefficients above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|&&c| c > tol).count()
    }
}

/// Schmidt decomposition of `|A>>`.
///
/// For square `A` this follows the polar route: with `A = V P`, `P = sqrt(A^dagger A)`
/// and `P = E diag(c) E^dagger`, one has `|A>> = sum_i c_i (V e_i) (x) (e_i^*)`
/// where `e_i` are the columns of `E`. Rectangular inputs use the SVD directly.
/// Each left vector is rephased so its first non-negligible component is real
/// and positive; the right vector absorbs the conjugate phase.
pub fn schmidt(k: &DoubleKet) -> SchmidtForm {
    let a = k.mat();
    let (mut coefficients, mut left, mut right) = if a.is_square() {
        let p = polar(a).expect("square input");
        let eig = hermitian_eigen(&p.positive).expect("square input");
        let n = eig.values.len();
        let order: Vec<usize> = (0..n).rev().collect();
        let e = ComplexMatrix::from_fn(n, n, |i, j| eig.vectors[(i, order[j])]);
        let coefficients = order.iter().map(|&j| eig.values[j].max(0.0)).collect();
        (coefficients, &p.unitary * &e, e.conjugate())
    } else {
        let dec = svd(a);
        (dec.singular_values, dec.left, dec.right.conjugate())
    };
    // eigenvalue rounding can break exact ordering among near-equal values
    let mut order: Vec<usize> = (0..coefficients.len()).collect();
    order.sort_by(|&x, &y| coefficients[y].total_cmp(&coefficients[x]));
    if order.iter().enumerate().any(|(i, &o)| i != o) {
        coefficients = order.iter().map(|&j| coefficients[j]).collect();
        left = ComplexMatrix::from_fn(left.nrows(), order.len(), |i, j| left[(i, order[j])]);
        right = ComplexMatrix::from_fn(right.nrows(), order.len(), |i, j| right[(i, order[j])]);
    }
    for j in 0..coefficients.len() {
        let col = left.column(j);
        let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if let Some(z) = col.iter().find(|z| z.norm() > 1e-8 * max.max(f64::MIN_POSITIVE)) {
            let phase = z.conj() / z.norm();
            for i in 0..left.nrows() {
                left[(i, j)] *= phase;
            }
            for i in 0..right.nrows() {
                right[(i, j)] *= phase.conj();
            }
        }
    }
    SchmidtForm {
        coefficients,
        left,
        right,
    }
}

/// Whether `|A>>` is maximally entangled: `A A^dagger = 1/N` within `tol`
/// (Frobenius norm), equivalently `sqrt(N) A` is unitary.
pub fn is_max_entangled(k: &DoubleKet, tol: f64) -> Result<bool> {
    let n = require_square(k.mat())?;
    let target = identity(n) / c64(n as f64, 0.0);
    Ok((k.mat() * k.mat().adjoint() - target).norm() <= tol)
}

/// The local operator `U V^dagger` carrying `|V>>` to `|U>>`.
pub fn local_connector(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    for (index, m) in [u, v].into_iter().enumerate() {
        let residual = unitarity_residual(m);
        if residual > DEFAULT_TOL {
            return Err(Error::NotUnitary { index, residual });
        }
    }
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch(format!(
            "unitaries of shape {:?} and {:?}",
            u.shape(),
            v.shape()
        )));
    }
    Ok(u * v.adjoint())
}

fn check_square_of(a: &ComplexMatrix, n: usize) -> Result<()> {
    if a.nrows() != n * n || a.ncols() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {0}x{0} operator on a {n}x{n} system, got {1}x{2}",
            n * n,
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// Localizes an operator `A` on `H (x) H` against `|1>>`: returns `Â` with
/// `A|1>> = |Â^T>> = (1 (x) Â)|1>>`.
///
/// Entrywise, `Â[i][j] = sum_l <j|<i| A |l>|l>`.
pub fn hat_map(a: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    check_square_of(a, n)?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|l| a[(j * n + i, l * n + l)]).sum()
    }))
}

/// The contraction `sum_l <i|<j| A |l>|l>` taken with the first index on the
/// first factor. In the row-major convention this is the transpose of
/// [`hat_map`]; it is kept to make that relationship testable.
pub fn hat_map_index_formula(a: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    check_square_of(a, n)?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|l| a[(i * n + j, l * n + l)]).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{distance, pauli_x, pauli_z, tensor, ONE, ZERO};
    use crate::random::{ginibre, haar_unitary, random_state_with, seeded};

    #[test]
    fn bell_state_from_vector() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = ComplexMatrix::from_column_slice(4, 1, &[c64(s, 0.0), ZERO, ZERO, c64(s, 0.0)]);
        let k = DoubleKet::from_vector(&v, 2, 2).unwrap();
        assert!(distance(k.mat(), &(identity(2) * c64(s, 0.0))) < 1e-16);
    }

    #[test]
    fn pauli_x_vector() {
        let v = DoubleKet::new(pauli_x()).as_vector();
        // c_ij at row i*2+j: c_00=0, c_01=1, c_10=1, c_11=0
        assert_eq!(v.as_slice(), &[ZERO, ONE, ONE, ZERO]);
    }

    #[test]
    fn vector_round_trip() {
        let mut rng = seeded(4);
        let v = ginibre(&mut rng, 6, 1);
        let k = DoubleKet::from_vector(&v, 2, 3).unwrap();
        assert_eq!(k.as_vector(), v);
        assert!(DoubleKet::from_vector(&v, 3, 3).is_err());
    }

    #[test]
    fn apply_local_examples() {
        let mut rng = seeded(8);
        let k = DoubleKet::new(ginibre(&mut rng, 3, 3));
        assert_eq!(apply_local(&identity(3), &identity(3), &k).unwrap(), k);

        let u = haar_unitary(&mut rng, 3);
        let out = apply_local(&u, &u.conjugate(), &DoubleKet::identity(3)).unwrap();
        assert!(distance(out.mat(), &identity(3)) < 1e-13);
    }

    #[test]
    fn apply_local_matches_dense_tensor() {
        let mut rng = seeded(12);
        for (n, m) in [(2, 2), (2, 3), (4, 3)] {
            let a = ginibre(&mut rng, n, n);
            let b = ginibre(&mut rng, m, m);
            let k = DoubleKet::new(ginibre(&mut rng, n, m));
            let lhs = apply_local(&a, &b, &k).unwrap().as_vector();
            let rhs = tensor(&a, &b) * k.as_vector();
            assert!(distance(&lhs, &rhs) < 1e-12);
        }
    }

    #[test]
    fn apply_local_rejects_mismatch() {
        let k = DoubleKet::identity(2);
        assert!(apply_local(&identity(3), &identity(2), &k).is_err());
    }

    #[test]
    fn inner_products() {
        let one = DoubleKet::identity(3);
        assert_eq!(dk_inner(&one, &one).unwrap(), c64(3.0, 0.0));
        let x = DoubleKet::new(pauli_x());
        let z = DoubleKet::new(pauli_z());
        assert_eq!(dk_inner(&x, &z).unwrap(), ZERO);

        let mut rng = seeded(5);
        let a = DoubleKet::new(ginibre(&mut rng, 2, 3));
        let b = DoubleKet::new(ginibre(&mut rng, 2, 3));
        let oracle = (a.as_vector().adjoint() * b.as_vector())[(0, 0)];
        assert!((dk_inner(&a, &b).unwrap() - oracle).norm() < 1e-13);
        assert!(dk_inner(&a, &one).is_err());
    }

    #[test]
    fn dyad_partial_traces() {
        let n = 3;
        let k = DoubleKet::new(identity(n) / c64((n as f64).sqrt(), 0.0));
        let r = dyad_ptrace(&k, &k, Subsystem::Second).unwrap();
        assert!(distance(&r, &(identity(n) / c64(n as f64, 0.0))) < 1e-15);

        let p = DoubleKet::new(crate::matrix::diag_real(&[1.0, 0.0]));
        let r = dyad_ptrace(&p, &p, Subsystem::First).unwrap();
        assert_eq!(r, crate::matrix::diag_real(&[1.0, 0.0]));
    }

    #[test]
    fn dyad_partial_traces_match_dense() {
        let mut rng = seeded(6);
        let a = DoubleKet::new(ginibre(&mut rng, 2, 3));
        let b = DoubleKet::new(ginibre(&mut rng, 2, 3));
        let dyad = a.dyad(&b);
        for keep in [Subsystem::First, Subsystem::Second] {
            let oracle = crate::matrix::partial_trace(&dyad, 2, 3, keep).unwrap();
            assert!(distance(&dyad_ptrace(&a, &b, keep).unwrap(), &oracle) < 1e-13);
        }
    }

    #[test]
    fn schmidt_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DoubleKet::new(identity(2) * c64(s, 0.0));
        let f = schmidt(&bell);
        assert!((f.coefficients[0] - s).abs() < 1e-15);
        assert!((f.coefficients[1] - s).abs() < 1e-15);

        // |0>|1>
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = ONE;
        let f = schmidt(&DoubleKet::new(m.clone()));
        assert!((f.coefficients[0] - 1.0).abs() < 1e-15);
        assert!(f.coefficients[1].abs() < 1e-15);
        assert!(distance(f.reconstruct().mat(), &m) < 1e-15);
    }

    #[test]
    fn schmidt_coefficients_are_singular_values() {
        let mut rng = seeded(31);
        for (n, m) in [(2, 2), (3, 3), (4, 4), (2, 4), (5, 3)] {
            let k = DoubleKet::new(ginibre(&mut rng, n, m));
            let f = schmidt(&k);
            let sv = crate::matrix::svd(k.mat()).singular_values;
            for (c, s) in f.coefficients.iter().zip(&sv) {
                assert!((c - s).abs() < 1e-12);
            }
            assert!(distance(f.reconstruct().mat(), k.mat()) < 1e-12);
            let eye = identity(f.coefficients.len());
            assert!(distance(&(f.left.adjoint() * &f.left), &eye) < 1e-12);
            assert!(distance(&(f.right.adjoint() * &f.right), &eye) < 1e-12);
        }
    }

    #[test]
    fn schmidt_phase_convention() {
        let mut rng = seeded(2);
        let k = DoubleKet::new(ginibre(&mut rng, 3, 3));
        let f = schmidt(&k);
        for j in 0..3 {
            let first = f.left[(0, j)];
            assert!(first.im.abs() < 1e-14 && first.re > 0.0);
        }
    }

    #[test]
    fn max_entanglement_tests() {
        let n = 3;
        let r = c64((n as f64).sqrt(), 0.0);
        assert!(is_max_entangled(&DoubleKet::new(identity(n) / r), MAX_ENTANGLED_TOL).unwrap());
        let mut prod = ComplexMatrix::zeros(n, n);
        prod[(0, 0)] = ONE;
        assert!(!is_max_entangled(&DoubleKet::new(prod), MAX_ENTANGLED_TOL).unwrap());
        let mut rng = seeded(17);
        let u = haar_unitary(&mut rng, n);
        assert!(is_max_entangled(&DoubleKet::new(u / r), MAX_ENTANGLED_TOL).unwrap());
        assert!(matches!(
            is_max_entangled(&DoubleKet::new(ComplexMatrix::zeros(2, 3)), 1e-8),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn local_connector_examples() {
        let mut rng = seeded(19);
        let u = haar_unitary(&mut rng, 3);
        assert!(distance(&local_connector(&u, &u).unwrap(), &identity(3)) < 1e-13);

        let w = local_connector(&pauli_x(), &identity(2)).unwrap();
        assert_eq!(w, pauli_x());
        let moved = apply_local(&w, &identity(2), &DoubleKet::identity(2)).unwrap();
        assert_eq!(moved.mat(), &pauli_x());

        let v = haar_unitary(&mut rng, 3);
        let w = local_connector(&u, &v).unwrap();
        let moved = apply_local(&w, &identity(3), &DoubleKet::new(v)).unwrap();
        assert!(distance(moved.mat(), &u) < 1e-12);

        assert!(matches!(
            local_connector(&(identity(2) * c64(2.0, 0.0)), &identity(2)),
            Err(Error::NotUnitary { index: 0, .. })
        ));
    }

    #[test]
    fn hat_map_of_local_operators() {
        let mut rng = seeded(23);
        let b = ginibre(&mut rng, 3, 3);
        let h = hat_map(&tensor(&identity(3), &b), 3).unwrap();
        assert!(distance(&h, &b) < 1e-14);
        let h = hat_map(&tensor(&b, &identity(3)), 3).unwrap();
        assert!(distance(&h, &b.transpose()) < 1e-14);
    }

    #[test]
    fn hat_map_defining_identity() {
        let mut rng = seeded(29);
        for n in [2, 3, 4] {
            let a = ginibre(&mut rng, n * n, n * n);
            let h = hat_map(&a, n).unwrap();
            let lhs = &a * DoubleKet::identity(n).as_vector();
            let rhs = DoubleKet::new(h.transpose()).as_vector();
            assert!(distance(&lhs, &rhs) < 1e-12);
            let local = apply_local(&identity(n), &h, &DoubleKet::identity(n)).unwrap();
            assert!(distance(&lhs, &local.as_vector()) < 1e-12);
        }
    }

    #[test]
    fn literal_index_formula_is_the_transpose() {
        let mut rng = seeded(37);
        let a = ginibre(&mut rng, 9, 9);
        let literal = hat_map_index_formula(&a, 3).unwrap();
        let hat = hat_map(&a, 3).unwrap();
        assert!(distance(&literal, &hat.transpose()) < 1e-15);
        assert!(distance(&literal, &hat) > 1e-3);
    }

    #[test]
    fn hat_map_rejects_wrong_size() {
        assert!(hat_map(&identity(5), 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = seeded(41);
        let k = DoubleKet::new(ginibre(&mut rng, 2, 3));
        let s = k.to_json().unwrap();
        assert!(s.contains("\"kind\":\"doubleket\""));
        assert_eq!(DoubleKet::from_json(&s).unwrap(), k);
        let bad = s.replace("doubleket", "matrix");
        assert!(DoubleKet::from_json(&bad).is_err());
    }

    #[test]
    fn random_states_have_unit_schmidt_weight() {
        let mut rng = seeded(43);
        let v = random_state_with(&mut rng, 12);
        let k = DoubleKet::from_vector(&v, 3, 4).unwrap();
        let total: f64 = schmidt(&k).coefficients.iter().map(|c| c * c).sum();
        assert!((total - 1.0).abs() < 1e-13);
    }
}
