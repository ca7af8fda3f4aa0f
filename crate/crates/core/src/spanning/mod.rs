// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Spanning sets of operators and their completeness checks.
//!
//! A weighted family `{(w_k, B_k)}` of `N x N` operators is complete when any
//! of the following equivalent statements holds (the integral over the label
//! space becomes the weighted sum):
//!
//! 1. `Tr[B_j^dagger B_k]` is a reproducing kernel, `sum_k w_k Tr[B_k^dagger B_j] B_k = B_j`,
//!    and only `A = 0` is orthogonal to every `B_k`;
//! 2. `sum_k w_k Tr[B_k^dagger A] B_k = A` for every `A`;
//! 3. `sum_k w_k <n|B_k^dagger|m><l|B_k|k'> = delta(n, k') delta(m, l)`;
//! 4. `sum_k w_k B_k^dagger A B_k = Tr[A] 1` for every `A`.
//!
//! Two further consequences are checked as well: `sum_k w_k B_k (x) B_k^* = |1>><<1|`
//! and `sum_k w_k (B_k (x) B_k^dagger)|A>> = |A^T>>`.
//!
//! The clause "only `A = 0` is orthogonal to every element" is tested through
//! the frame operator `F = sum_k w_k vec(B_k) vec(B_k)^dagger`, whose smallest
//! eigenvalue must exceed [`FRAME_TOL`].

mod znzn;

pub use znzn::{
    commutation_phase, group_fourier, group_fourier_conjugate, root_of_unity, shift_multiply,
    znzn_basis, ZnZnBasis,
};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::doubleket::{apply_local, DoubleKet};
use crate::error::{Error, Result};
use crate::matrix::{
    c64, hermitian_eigen, hs_inner, identity, serde_matrix_vec, tensor, ComplexMatrix, ONE, ZERO,
};
use crate::random::{random_operator_with, seeded};

/// Minimum frame-operator eigenvalue for a set to count as spanning.
pub const FRAME_TOL: f64 = 1e-8;

/// A finite weighted family of square operators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SpanningSetRecord", into = "SpanningSetRecord")]
pub struct SpanningSet {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    weights: Vec<f64>,
    labels: Vec<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpanningSetRecord {
    dim: usize,
    #[serde(with = "serde_matrix_vec")]
    elements: Vec<ComplexMatrix>,
    weights: Vec<f64>,
    #[serde(default)]
    labels: Vec<Value>,
}

impl TryFrom<SpanningSetRecord> for SpanningSet {
    type Error = Error;

    fn try_from(r: SpanningSetRecord) -> Result<Self> {
        let set = SpanningSet::new(r.elements, r.weights, r.labels)?;
        if set.dim != r.dim {
            return Err(Error::DimensionMismatch(format!(
                "declared dim {} but elements are {}x{}",
                r.dim, set.dim, set.dim
            )));
        }
        Ok(set)
    }
}

impl From<SpanningSet> for SpanningSetRecord {
    fn from(s: SpanningSet) -> Self {
        Self {
            dim: s.dim,
            elements: s.elements,
            weights: s.weights,
            labels: s.labels,
        }
    }
}

impl SpanningSet {
    /// Builds a set; missing labels (an empty `labels`) default to the element
    /// index.
    pub fn new(elements: Vec<ComplexMatrix>, weights: Vec<f64>, labels: Vec<Value>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidArgument("spanning set is empty".into()))?;
        let dim = first.nrows();
        if let Some((k, b)) = elements
            .iter()
            .enumerate()
            .find(|(_, b)| b.nrows() != dim || b.ncols() != dim)
        {
            return Err(Error::DimensionMismatch(format!(
                "element {k} is {}x{}, expected {dim}x{dim}",
                b.nrows(),
                b.ncols()
            )));
        }
        for b in &elements {
            crate::matrix::ensure_finite(b)?;
        }
        if weights.len() != elements.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} elements but {} weights",
                elements.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "weights must be positive and finite, found {w}"
            )));
        }
        let labels = if labels.is_empty() {
            (0..elements.len()).map(Value::from).collect()
        } else if labels.len() == elements.len() {
            labels
        } else {
            return Err(Error::DimensionMismatch(format!(
                "{} elements but {} labels",
                elements.len(),
                labels.len()
            )));
        };
        Ok(Self {
            dim,
            elements,
            weights,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn labels(&self) -> &[Value] {
        &self.labels
    }

    /// `(weight, element)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.weights.iter().copied().zip(self.elements.iter())
    }

    /// `F = sum_k w_k vec(B_k) vec(B_k)^dagger` on the `N^2`-dimensional
    /// operator space.
    pub fn frame_operator(&self) -> ComplexMatrix {
        let n2 = self.dim * self.dim;
        let mut f = ComplexMatrix::zeros(n2, n2);
        for (w, b) in self.iter() {
            let v = DoubleKet::new(b.clone()).as_vector();
            f += &v * v.adjoint() * c64(w, 0.0);
        }
        f
    }

    pub fn frame_min_eigenvalue(&self) -> f64 {
        hermitian_eigen(&self.frame_operator())
            .map(|e| e.values[0])
            .unwrap_or(f64::NAN)
    }

    /// `sum_k w_k Tr[B_k^dagger A] B_k`.
    pub fn expand(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (w, b) in self.iter() {
            out += b * (hs_inner(b, a) * w);
        }
        out
    }

    /// `sum_k w_k B_k^dagger A B_k`.
    pub fn twirl(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (w, b) in self.iter() {
            out += b.adjoint() * a * b * c64(w, 0.0);
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Which identity a [`CheckReport`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    Statement1,
    Statement2,
    Statement3,
    Statement4,
    StdEnt,
    Transposer,
}

/// Outcome of one completeness check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub statement: Statement,
    pub max_residual: f64,
    pub frame_min_eig: f64,
    pub pass: bool,
    pub tol: f64,
}

impl CheckReport {
    fn new(statement: Statement, max_residual: f64, frame_min_eig: f64, tol: f64) -> Self {
        Self {
            statement,
            max_residual,
            frame_min_eig,
            pass: max_residual <= tol,
            tol,
        }
    }
}

/// Reproducing-kernel residual `max_j ||sum_k w_k Tr[B_k^dagger B_j] B_k - B_j||`,
/// together with the frame test.
pub fn check_statement1(s: &SpanningSet, tol: f64) -> CheckReport {
    let frame = s.frame_min_eigenvalue();
    let residual = s
        .elements
        .iter()
        .map(|bj| (s.expand(bj) - bj).norm())
        .fold(0.0, f64::max);
    let mut report = CheckReport::new(Statement::Statement1, residual, frame, tol);
    report.pass &= frame > FRAME_TOL;
    report
}

/// Reconstruction residual of `trials` random unit-norm operators.
pub fn check_statement2(s: &SpanningSet, trials: usize, seed: u64, tol: f64) -> CheckReport {
    let mut rng = seeded(seed);
    let residual = (0..trials)
        .map(|_| {
            let a = random_operator_with(&mut rng, s.dim);
            (s.expand(&a) - a).norm()
        })
        .fold(0.0, f64::max);
    CheckReport::new(Statement::Statement2, residual, s.frame_min_eigenvalue(), tol)
}

/// Largest deviation over all `N^4` index combinations.
pub fn check_statement3(s: &SpanningSet, tol: f64) -> CheckReport {
    let n = s.dim;
    let mut residual: f64 = 0.0;
    for row_n in 0..n {
        for m in 0..n {
            for l in 0..n {
                for k in 0..n {
                    let mut acc = ZERO;
                    for (w, b) in s.iter() {
                        // <n|B^dagger|m> = conj(B[m][n])
                        acc += b[(m, row_n)].conj() * b[(l, k)] * w;
                    }
                    let target = if row_n == k && m == l { ONE } else { ZERO };
                    residual = residual.max((acc - target).norm());
                }
            }
        }
    }
    CheckReport::new(Statement::Statement3, residual, s.frame_min_eigenvalue(), tol)
}

/// Residual of `sum_k w_k B_k^dagger A B_k - Tr[A] 1` over random operators.
pub fn check_statement4(s: &SpanningSet, trials: usize, seed: u64, tol: f64) -> CheckReport {
    let mut rng = seeded(seed);
    let eye = identity(s.dim);
    let residual = (0..trials)
        .map(|_| {
            let a = random_operator_with(&mut rng, s.dim);
            (s.twirl(&a) - &eye * a.trace()).norm()
        })
        .fold(0.0, f64::max);
    CheckReport::new(Statement::Statement4, residual, s.frame_min_eigenvalue(), tol)
}

/// Residual of `sum_k w_k B_k (x) B_k^* - |1>><<1|`.
pub fn std_ent_check(s: &SpanningSet, tol: f64) -> CheckReport {
    let n2 = s.dim * s.dim;
    let mut sum = ComplexMatrix::zeros(n2, n2);
    for (w, b) in s.iter() {
        sum += tensor(b, &b.conjugate()) * c64(w, 0.0);
    }
    let one = DoubleKet::identity(s.dim);
    let residual = (sum - one.projector()).norm();
    CheckReport::new(Statement::StdEnt, residual, s.frame_min_eigenvalue(), tol)
}

/// Residual of `sum_k w_k (B_k (x) B_k^dagger)|A>> - |A^T>>` over random `A`.
pub fn transposer_check(s: &SpanningSet, trials: usize, seed: u64, tol: f64) -> CheckReport {
    let mut rng = seeded(seed);
    let residual = (0..trials)
        .map(|_| {
            let a = DoubleKet::new(random_operator_with(&mut rng, s.dim));
            let mut out = ComplexMatrix::zeros(s.dim, s.dim);
            for (w, b) in s.iter() {
                let moved = apply_local(b, &b.adjoint(), &a).expect("square elements");
                out += moved.mat() * c64(w, 0.0);
            }
            (out - a.mat().transpose()).norm()
        })
        .fold(0.0, f64::max);
    CheckReport::new(Statement::Transposer, residual, s.frame_min_eigenvalue(), tol)
}

/// Runs statements 1 through 4 in order.
pub fn check_statements(s: &SpanningSet, trials: usize, seed: u64, tol: f64) -> Vec<CheckReport> {
    vec![
        check_statement1(s, tol),
        check_statement2(s, trials, seed, tol),
        check_statement3(s, tol),
        check_statement4(s, trials, seed, tol),
    ]
}

/// Statements 1 through 4 followed by the std-ent and transposer identities.
pub fn check_all(s: &SpanningSet, trials: usize, seed: u64, tol: f64) -> Vec<CheckReport> {
    let mut reports = check_statements(s, trials, seed, tol);
    reports.push(std_ent_check(s, tol));
    reports.push(transposer_check(s, trials, seed, tol));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{distance, projector};
    use crate::random::ginibre;

    fn singleton_identity(dim: usize) -> SpanningSet {
        SpanningSet::new(vec![identity(dim)], vec![1.0], vec![]).unwrap()
    }

    #[test]
    fn qubit_basis_statement1() {
        let s = znzn_basis(2).unwrap().spanning_set();
        let r = check_statement1(&s, 1e-12);
        assert!(r.pass);
        assert!(r.max_residual < 1e-12);
        assert!((r.frame_min_eig - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singleton_is_incomplete() {
        let s = singleton_identity(2);
        let r = check_statement1(&s, 1e-10);
        assert!(!r.pass);
        assert!(r.frame_min_eig.abs() < 1e-12);
    }

    #[test]
    fn qutrit_basis_is_complete() {
        let s = znzn_basis(3).unwrap().spanning_set();
        for r in check_all(&s, 10, 1, 1e-10) {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn statement2_examples() {
        let s = znzn_basis(4).unwrap().spanning_set();
        assert!(check_statement2(&s, 50, 3, 1e-11).max_residual < 1e-11);
        assert!(distance(&s.expand(&identity(4)), &identity(4)) < 1e-13);

        // expand(A) = Tr[A] 1 here, so ||expand(A) - A|| <= |Tr A| sqrt(3) + 1 <= 4
        let r = check_statement2(&singleton_identity(3), 20, 3, 1e-10);
        assert!(!r.pass && r.max_residual > 0.1 && r.max_residual <= 4.0 + 1e-12);
    }

    #[test]
    fn statement3_examples() {
        let r = check_statement3(&znzn_basis(2).unwrap().spanning_set(), 1e-15);
        assert!(r.max_residual < 1e-15, "{r:?}");
        let r = check_statement3(&znzn_basis(5).unwrap().spanning_set(), 1e-11);
        assert!(r.pass);
        assert!(!check_statement3(&singleton_identity(2), 1e-10).pass);
    }

    #[test]
    fn statement4_examples() {
        let s = znzn_basis(3).unwrap().spanning_set();
        // traceless input
        let mut a = ComplexMatrix::zeros(3, 3);
        a[(0, 1)] = ONE;
        a[(2, 2)] = c64(1.0, 0.0);
        a[(1, 1)] = c64(-1.0, 0.0);
        assert!(s.twirl(&a).norm() < 1e-11);
        assert!(distance(&s.twirl(&identity(3)), &(identity(3) * c64(3.0, 0.0))) < 1e-13);
        for dim in 2..=6 {
            let s = znzn_basis(dim).unwrap().spanning_set();
            assert!(check_statement4(&s, 10, dim as u64, 1e-10).pass);
        }
    }

    #[test]
    fn std_ent_examples() {
        let r = std_ent_check(&znzn_basis(2).unwrap().spanning_set(), 1e-15);
        assert!(r.max_residual < 1e-15);
        for dim in 2..=8 {
            assert!(std_ent_check(&znzn_basis(dim).unwrap().spanning_set(), 1e-11).pass);
        }
        let s = SpanningSet::new(vec![identity(3) / c64(3f64.sqrt(), 0.0)], vec![1.0], vec![])
            .unwrap();
        let r = std_ent_check(&s, 1e-10);
        assert!(!r.pass && r.max_residual > 0.1);
    }

    #[test]
    fn transposer_examples() {
        let s = znzn_basis(3).unwrap().spanning_set();
        let fixed = |a: &ComplexMatrix| {
            let k = DoubleKet::new(a.clone());
            let mut out = ComplexMatrix::zeros(3, 3);
            for (w, b) in s.iter() {
                out += apply_local(b, &b.adjoint(), &k).unwrap().mat() * c64(w, 0.0);
            }
            out
        };
        assert!(distance(&fixed(&identity(3)), &identity(3)) < 1e-13);
        let mut rng = seeded(2);
        let g = ginibre(&mut rng, 3, 3);
        let sym = &g + g.transpose();
        assert!(distance(&fixed(&sym), &sym) < 1e-12);
        assert!(transposer_check(&s, 20, 4, 1e-11).pass);
    }

    #[test]
    fn transposer_matches_dense_tensor_sum() {
        let s = znzn_basis(3).unwrap().spanning_set();
        let mut dense = ComplexMatrix::zeros(9, 9);
        for (w, b) in s.iter() {
            dense += tensor(b, &b.adjoint()) * c64(w, 0.0);
        }
        let mut rng = seeded(6);
        let a = ginibre(&mut rng, 3, 3);
        let out = dense * DoubleKet::new(a.clone()).as_vector();
        let expected = DoubleKet::new(a.transpose()).as_vector();
        assert!(distance(&out, &expected) < 1e-12);
    }

    #[test]
    fn diagonal_projectors_fail_every_statement() {
        let elements: Vec<_> = (0..3).map(|k| projector(3, k)).collect();
        let s = SpanningSet::new(elements, vec![1.0; 3], vec![]).unwrap();
        for r in check_all(&s, 10, 0, 1e-10) {
            assert!(!r.pass, "{r:?}");
        }
    }

    #[test]
    fn constructor_validation() {
        assert!(SpanningSet::new(vec![], vec![], vec![]).is_err());
        assert!(SpanningSet::new(vec![identity(2), identity(3)], vec![1.0, 1.0], vec![]).is_err());
        assert!(SpanningSet::new(vec![identity(2)], vec![0.0], vec![]).is_err());
        assert!(SpanningSet::new(vec![identity(2)], vec![1.0, 2.0], vec![]).is_err());
        assert!(SpanningSet::new(vec![ComplexMatrix::zeros(2, 3)], vec![1.0], vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = znzn_basis(2).unwrap().spanning_set();
        let text = s.to_json().unwrap();
        let back = SpanningSet::from_json(&text).unwrap();
        assert_eq!(back.elements(), s.elements());
        assert_eq!(back.weights(), s.weights());
        assert_eq!(back.labels(), s.labels());
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["labels"][3], serde_json::json!([1, 1]));
    }

    #[test]
    fn json_rejects_inconsistent_dim() {
        let text = r#"{"dim":3,"elements":[{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}],"weights":[1.0]}"#;
        assert!(SpanningSet::from_json(text).is_err());
    }

    #[test]
    fn check_report_serializes_expected_fields() {
        let r = check_statement1(&znzn_basis(2).unwrap().spanning_set(), 1e-10);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["statement"], "statement1");
        for key in ["max_residual", "frame_min_eig", "pass", "tol"] {
            assert!(v.get(key).is_some());
        }
    }
}
