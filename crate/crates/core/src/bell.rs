// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bell measurements and Bell observables.
//!
//! A family of unitaries `U_k` with weights `w_k` that spans the operator
//! space defines the POVM `Pi_k = w_k |U_k>><<U_k|` on `H (x) H`. Each effect
//! is proportional to the projector on the maximally entangled state
//! `|U_k>>/sqrt(N)`, and the completeness of the family is exactly the
//! statement that the effects sum to the identity.
//!
//! For an injective real labeling `f`, `O = sum_k f_k Pi_k` is a self-adjoint
//! observable whose measurement realizes the POVM.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::doubleket::{is_max_entangled, DoubleKet, MAX_ENTANGLED_TOL};
use crate::error::{Error, Result};
use crate::matrix::{
    c64, hermitian_eigen, identity, serde_matrix, serde_matrix_vec, tensor, unitarity_residual,
    validate_density, ComplexMatrix, DEFAULT_TOL,
};
use crate::spanning::{group_fourier, znzn_basis, SpanningSet};

/// Default minimum separation between observable eigen-labels.
pub const MIN_LABEL_GAP: f64 = 1e-9;

/// Overlap above which an eigenvector counts as matched to an effect.
pub const MATCH_OVERLAP: f64 = 1.0 - 1e-8;

/// A validated Bell POVM.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BellPovm {
    pub dim: usize,
    pub labels: Vec<Value>,
    pub weights: Vec<f64>,
    #[serde(with = "serde_matrix_vec")]
    pub unitaries: Vec<ComplexMatrix>,
    #[serde(with = "serde_matrix_vec")]
    pub effects: Vec<ComplexMatrix>,
}

impl BellPovm {
    /// Builds `Pi_k = w_k |U_k>><<U_k|` and checks that every `U_k` is unitary
    /// and that the effects resolve the identity, both within `tol`.
    pub fn new(unitaries: Vec<ComplexMatrix>, weights: Vec<f64>, tol: f64) -> Result<Self> {
        let labels = (0..unitaries.len()).map(Value::from).collect();
        Self::with_labels(unitaries, weights, labels, tol)
    }

    pub fn with_labels(
        unitaries: Vec<ComplexMatrix>,
        weights: Vec<f64>,
        labels: Vec<Value>,
        tol: f64,
    ) -> Result<Self> {
        // reuse the spanning-set shape and weight validation
        let set = SpanningSet::new(unitaries, weights, labels)?;
        Self::from_spanning_set(&set, tol)
    }

    pub fn from_spanning_set(set: &SpanningSet, tol: f64) -> Result<Self> {
        let dim = set.dim();
        let root_n = c64((dim as f64).sqrt(), 0.0);
        let mut effects = Vec::with_capacity(set.len());
        for (index, (w, u)) in set.iter().enumerate() {
            let residual = unitarity_residual(u);
            if residual > tol {
                return Err(Error::NotUnitary { index, residual });
            }
            if !is_max_entangled(&DoubleKet::new(u / root_n), MAX_ENTANGLED_TOL)? {
                return Err(Error::NotUnitary { index, residual });
            }
            let k = DoubleKet::new(u.clone());
            effects.push(k.projector() * c64(w, 0.0));
        }
        let total: ComplexMatrix = effects.iter().sum();
        let residual = (total - identity(dim * dim)).norm();
        if residual > tol {
            return Err(Error::IncompleteResolution(residual));
        }
        Ok(Self {
            dim,
            labels: set.labels().to_vec(),
            weights: set.weights().to_vec(),
            unitaries: set.elements().to_vec(),
            effects,
        })
    }

    /// The Bell measurement generated by the shift-multiply basis.
    pub fn znzn(dim: usize) -> Result<Self> {
        Self::from_spanning_set(&znzn_basis(dim)?.spanning_set(), DEFAULT_TOL)
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    /// `||sum_k Pi_k - 1||`.
    pub fn resolution_residual(&self) -> f64 {
        let total: ComplexMatrix = self.effects.iter().sum();
        (total - identity(self.dim * self.dim)).norm()
    }
}

/// Born-rule probabilities `p_k = Tr[state Pi_k]`.
pub fn measure(povm: &BellPovm, state: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    let n2 = povm.dim * povm.dim;
    if state.shape() != (n2, n2) {
        return Err(Error::DimensionMismatch(format!(
            "state is {}x{}, POVM acts on dimension {n2}",
            state.nrows(),
            state.ncols()
        )));
    }
    validate_density(state, tol)?;
    Ok(povm
        .effects
        .iter()
        .map(|e| crate::matrix::hs_inner(e, state).re)
        .collect())
}

/// `O = sum_k f_k Pi_k` for an injective labeling `f`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BellObservable {
    pub f: Vec<f64>,
    #[serde(with = "serde_matrix")]
    pub operator: ComplexMatrix,
}

/// Builds the observable, rejecting labelings whose values are closer than
/// `min_gap`.
pub fn bell_observable(povm: &BellPovm, f: &[f64], min_gap: f64) -> Result<BellObservable> {
    if f.len() != povm.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} effects",
            f.len(),
            povm.len()
        )));
    }
    if let Some(x) = f.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite label value {x}")));
    }
    let collisions = collisions(f, min_gap);
    if !collisions.is_empty() {
        let pairs = collisions
            .into_iter()
            .map(|(i, j)| (povm.labels[i].to_string(), povm.labels[j].to_string()))
            .collect();
        return Err(Error::NonInjective(pairs));
    }
    let operator = povm
        .effects
        .iter()
        .zip(f)
        .map(|(e, &x)| e * c64(x, 0.0))
        .sum();
    Ok(BellObservable {
        f: f.to_vec(),
        operator,
    })
}

/// Pairs `(i, j)`, `i < j`, with `|f_i - f_j| < min_gap`.
fn collisions(f: &[f64], min_gap: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]));
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if f[j] - f[i] >= min_gap {
                break;
            }
            out.push((i.min(j), i.max(j)));
        }
    }
    out.sort_unstable();
    out
}

impl BellObservable {
    /// Matches each eigenvector of `O` to the effect it overlaps most, checks
    /// the match is unique and above [`MATCH_OVERLAP`], and returns
    /// `max_k ||P_k - Pi_k||` where `P_k` is the spectral projector assembled
    /// from the eigenvectors matched to effect `k`.
    ///
    /// Meaningful when the effects are orthogonal projectors, as for an
    /// orthonormal unitary basis such as the shift-multiply one.
    pub fn spectral_mismatch(&self, povm: &BellPovm) -> Result<f64> {
        let eig = hermitian_eigen(&self.operator)?;
        let n2 = povm.dim * povm.dim;
        let mut projectors = vec![ComplexMatrix::zeros(n2, n2); povm.len()];
        for col in 0..eig.values.len() {
            let v = eig.vectors.column(col).into_owned();
            let overlaps: Vec<f64> = povm
                .effects
                .iter()
                .map(|e| (v.adjoint() * e * &v)[(0, 0)].re)
                .collect();
            let (best, &best_overlap) = overlaps
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("non-empty POVM");
            let runner_up = overlaps
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != best)
                .map(|(_, &o)| o)
                .fold(f64::NEG_INFINITY, f64::max);
            if best_overlap < MATCH_OVERLAP || runner_up >= MATCH_OVERLAP {
                return Err(Error::InvalidArgument(format!(
                    "eigenvector {col} has no unique matching effect (best overlap {best_overlap:.3e})"
                )));
            }
            if (eig.values[col] - self.f[best]).abs() > 1e-8 {
                return Err(Error::InvalidArgument(format!(
                    "eigenvalue {} does not match label value {}",
                    eig.values[col], self.f[best]
                )));
            }
            projectors[best] += &v * v.adjoint();
        }
        Ok(projectors
            .iter()
            .zip(&povm.effects)
            .map(|(p, e)| (p - e).norm())
            .fold(0.0, f64::max))
    }

    /// Spectrum of `O`, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.operator)?.values)
    }
}

/// The observable for the shift-multiply Bell measurement written as a sum of
/// product operators:
///
/// `O = (1/N^2) sum_g h(-g) U_g (x) U_g^*`, where `h` is [`group_fourier`] of
/// `f` and `-g = (-m, -n) mod N`.
///
/// The `1/N^2` and the reflected argument fix the result to equal the direct
/// form `sum_g f(g) Pi_g` built with weights `1/N`.
pub fn observable_tensor_form(dim: usize, f: &[f64]) -> Result<ComplexMatrix> {
    if f.len() != dim * dim {
        return Err(Error::DimensionMismatch(format!(
            "a table over Z_{dim} x Z_{dim} needs {} entries, got {}",
            dim * dim,
            f.len()
        )));
    }
    let basis = znzn_basis(dim)?;
    let table: Vec<Complex64> = f.iter().map(|&x| c64(x, 0.0)).collect();
    let transformed = group_fourier(dim, &table)?;
    let scale = 1.0 / (dim * dim) as f64;
    let mut out = ComplexMatrix::zeros(dim * dim, dim * dim);
    for (m, n) in basis.labels() {
        let reflected = ((dim - m) % dim) * dim + (dim - n) % dim;
        let coeff = transformed[reflected] * scale;
        let u = basis.element(m, n);
        out += tensor(u, &u.conjugate()) * coeff;
    }
    Ok(out)
}

/// File form of an observable: metadata plus the operator in the shared matrix
/// container.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObservableRecord {
    pub dim: usize,
    pub labels: Vec<Value>,
    pub weights: Vec<f64>,
    pub f: Vec<f64>,
    #[serde(flatten)]
    pub operator: crate::matrix::MatrixRecord,
}

impl ObservableRecord {
    pub fn new(povm: &BellPovm, obs: &BellObservable) -> Result<Self> {
        Ok(Self {
            dim: povm.dim,
            labels: povm.labels.clone(),
            weights: povm.weights.clone(),
            f: obs.f.clone(),
            operator: crate::matrix::MatrixRecord::from_matrix(&obs.operator)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::distance;
    use crate::random::{random_density_with, seeded};
    use rand::seq::SliceRandom;

    #[test]
    fn qubit_bell_povm() {
        let p = BellPovm::znzn(2).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.resolution_residual() < 1e-14);
        // effects are the four Bell projectors: rank one, unit trace, idempotent
        for e in &p.effects {
            assert!((e.trace() - c64(1.0, 0.0)).norm() < 1e-14);
            assert!(distance(&(e * e), e) < 1e-14);
        }
        let phi_plus = DoubleKet::identity(2).projector() / c64(2.0, 0.0);
        assert!(distance(&p.effects[0], &phi_plus) < 1e-15);
    }

    #[test]
    fn qutrit_bell_povm() {
        let p = BellPovm::znzn(3).unwrap();
        assert_eq!(p.len(), 9);
        assert!(p.resolution_residual() < 1e-13);
    }

    #[test]
    fn single_unitary_is_not_a_resolution() {
        let r = BellPovm::new(vec![identity(2)], vec![2.0], DEFAULT_TOL);
        assert!(matches!(r, Err(Error::IncompleteResolution(_))));
    }

    #[test]
    fn non_unitary_element_is_rejected() {
        let b = znzn_basis(2).unwrap();
        let mut us = b.elements().to_vec();
        us[2] = us[2].clone() * c64(1.1, 0.0);
        let r = BellPovm::new(us, vec![0.5; 4], DEFAULT_TOL);
        assert!(matches!(r, Err(Error::NotUnitary { index: 2, .. })));
    }

    #[test]
    fn effect_purity() {
        for dim in [2, 3, 4] {
            let p = BellPovm::znzn(dim).unwrap();
            for (e, &w) in p.effects.iter().zip(&p.weights) {
                let values = hermitian_eigen(e).unwrap().values;
                let top = *values.last().unwrap();
                assert!((top - w * dim as f64).abs() < 1e-12);
                assert!(values[..values.len() - 1].iter().all(|x| x.abs() < 1e-12));
            }
        }
    }

    #[test]
    fn measuring_a_bell_state() {
        let p = BellPovm::znzn(3).unwrap();
        let j = 5;
        let state = DoubleKet::new(p.unitaries[j].clone()).projector() / c64(3.0, 0.0);
        let probs = measure(&p, &state, 1e-10).unwrap();
        for (k, &x) in probs.iter().enumerate() {
            let expected = if k == j { 1.0 } else { 0.0 };
            assert!((x - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn maximally_mixed_state_is_uniform() {
        let p = BellPovm::znzn(3).unwrap();
        let state = identity(9) / c64(9.0, 0.0);
        for x in measure(&p, &state, 1e-10).unwrap() {
            assert!((x - 1.0 / 9.0).abs() < 1e-14);
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        let p = BellPovm::znzn(2).unwrap();
        let mut rng = seeded(1);
        let state = random_density_with(&mut rng, 4);
        let total: f64 = measure(&p, &state, 1e-10).unwrap().iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
        assert!(measure(&p, &identity(4), 1e-10).is_err());
        assert!(measure(&p, &identity(2), 1e-10).is_err());
    }

    #[test]
    fn enumeration_labels_give_integer_spectrum() {
        let p = BellPovm::znzn(2).unwrap();
        let obs = bell_observable(&p, &[0.0, 1.0, 2.0, 3.0], MIN_LABEL_GAP).unwrap();
        let spec = obs.spectrum().unwrap();
        for (x, k) in spec.iter().zip(0..) {
            assert!((x - k as f64).abs() < 1e-13);
        }
        assert!(distance(&obs.operator, &obs.operator.adjoint()) < 1e-15);
    }

    #[test]
    fn constant_labels_are_rejected() {
        let p = BellPovm::znzn(2).unwrap();
        match bell_observable(&p, &[0.0; 4], MIN_LABEL_GAP) {
            Err(Error::NonInjective(pairs)) => {
                assert_eq!(pairs.len(), 6);
                assert_eq!(pairs[0], ("[0,0]".to_string(), "[0,1]".to_string()));
            }
            other => panic!("expected a non-injective error, got {other:?}"),
        }
        let r = bell_observable(&p, &[0.0, 1.0, 1.0 + 1e-12, 3.0], MIN_LABEL_GAP);
        assert!(matches!(r, Err(Error::NonInjective(ref v)) if v.len() == 1));
    }

    #[test]
    fn eigenprojectors_recover_effects() {
        let p = BellPovm::znzn(3).unwrap();
        let mut rng = seeded(77);
        let mut f: Vec<f64> = (0..9).map(|k| k as f64 * 0.37 - 1.0).collect();
        f.shuffle(&mut rng);
        let obs = bell_observable(&p, &f, MIN_LABEL_GAP).unwrap();
        assert!(obs.spectral_mismatch(&p).unwrap() < 1e-10);
    }

    #[test]
    fn spectral_measurement_reproduces_povm_statistics() {
        let p = BellPovm::znzn(2).unwrap();
        let f = [2.5, -1.0, 0.25, 7.0];
        let obs = bell_observable(&p, &f, MIN_LABEL_GAP).unwrap();
        let eig = hermitian_eigen(&obs.operator).unwrap();
        let mut rng = seeded(3);
        let state = random_density_with(&mut rng, 4);
        let probs = measure(&p, &state, 1e-10).unwrap();
        for (col, &lambda) in eig.values.iter().enumerate() {
            let v = eig.vectors.column(col).into_owned();
            let q = (v.adjoint() * &state * &v)[(0, 0)].re;
            let k = f.iter().position(|&x| (x - lambda).abs() < 1e-9).unwrap();
            assert!((q - probs[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_form_of_delta_is_the_bell_projector() {
        let dim = 3;
        let mut f = vec![0.0; 9];
        f[0] = 1.0;
        let o = observable_tensor_form(dim, &f).unwrap();
        let expected = DoubleKet::identity(dim).projector() / c64(dim as f64, 0.0);
        assert!(distance(&o, &expected) < 1e-13);
    }

    #[test]
    fn tensor_form_of_constant_is_identity() {
        let o = observable_tensor_form(2, &[1.5; 4]).unwrap();
        assert!(distance(&o, &(identity(4) * c64(1.5, 0.0))) < 1e-13);
    }

    #[test]
    fn tensor_form_agrees_with_direct_form() {
        let mut rng = seeded(5);
        for dim in [2, 3, 4] {
            let p = BellPovm::znzn(dim).unwrap();
            let mut f: Vec<f64> = (0..dim * dim).map(|k| k as f64).collect();
            f.shuffle(&mut rng);
            let direct = bell_observable(&p, &f, MIN_LABEL_GAP).unwrap().operator;
            let tensor_form = observable_tensor_form(dim, &f).unwrap();
            assert!(distance(&direct, &tensor_form) < 1e-10);
        }
    }

    #[test]
    fn tensor_form_without_reflection_differs() {
        // with the unreflected transform the two forms agree only for
        // labelings symmetric under g -> -g
        let dim = 3;
        let f: Vec<f64> = (0..9).map(|k| k as f64).collect();
        let p = BellPovm::znzn(dim).unwrap();
        let direct = bell_observable(&p, &f, MIN_LABEL_GAP).unwrap().operator;
        let basis = znzn_basis(dim).unwrap();
        let table: Vec<Complex64> = f.iter().map(|&x| c64(x, 0.0)).collect();
        let h = group_fourier(dim, &table).unwrap();
        let mut unreflected = ComplexMatrix::zeros(9, 9);
        for (k, u) in basis.elements().iter().enumerate() {
            unreflected += tensor(u, &u.conjugate()) * (h[k] / 9.0);
        }
        assert!(distance(&direct, &unreflected) > 1e-3);
    }

    #[test]
    fn observable_record_has_metadata() {
        let p = BellPovm::znzn(2).unwrap();
        let obs = bell_observable(&p, &[0.0, 1.0, 2.0, 3.0], MIN_LABEL_GAP).unwrap();
        let v = serde_json::to_value(ObservableRecord::new(&p, &obs).unwrap()).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["rows"], 4);
        assert_eq!(v["weights"][0], 0.5);
        assert_eq!(v["f"][3], 3.0);
    }
}
