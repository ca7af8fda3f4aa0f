// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Teleportation on `H1 (x) H2 (x) H3`.
//!
//! System 1 holds the input, systems 2 and 3 share the resource, and a Bell
//! POVM is measured on systems 1 and 2. Every scheme here is simulated on the
//! full `N^3`-dimensional space: for outcome `k` the unnormalized state left on
//! system 3 is
//!
//! `Tr_12[(Pi_k (x) 1) (rho (x) R)]`
//!
//! where `R` is the resource. With `R = |V>><<V|/N` and `Pi_k = w_k |U_k>><<U_k|`
//! this equals `(w_k/N) V^T U_k^dagger rho U_k V^*`, which the correction
//! `U_k V^*` undoes. A noisy resource `E(|1>><<1|/N)` gives
//! `(w_k/N) Ê(U_k^dagger rho U_k)` where `Ê` is the localized channel; the
//! noisy simulation computes both routes and requires them to agree.

mod channel;
mod fidelity;

pub use channel::KrausChannel;
pub use fidelity::{
    bloch_minimum, epsilon_resource, epsilon_sweep, fidelity_ratio, min_fidelity_analytic,
    min_fidelity_brute, real_family_minimum, BlochPoint, FidelityReport, GOLDEN_ITERATIONS,
};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bell::BellPovm;
use crate::doubleket::DoubleKet;
use crate::error::{Error, Result};
use crate::matrix::{
    c64, hermitian_part, identity, partial_trace, serde_matrix, state_fidelity, tensor,
    trace_distance, unitarity_residual, validate_density, ComplexMatrix, Subsystem, DEFAULT_TOL,
};

/// Probability below which an outcome's conditional state is left undefined.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;

/// One measurement outcome of a teleportation run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TeleportRecord {
    pub label: Value,
    pub probability: f64,
    /// Normalized state on system 3 before correction; `None` when the outcome
    /// has negligible probability.
    #[serde(with = "optional_matrix")]
    pub conditional: Option<ComplexMatrix>,
    #[serde(with = "optional_matrix")]
    pub corrected: Option<ComplexMatrix>,
    /// Fidelity of the corrected state with the input.
    pub fidelity: Option<f64>,
}

mod optional_matrix {
    use crate::matrix::{ComplexMatrix, MatrixRecord};
    use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Option<ComplexMatrix>, s: S) -> Result<S::Ok, S::Error> {
        m.as_ref()
            .map(MatrixRecord::from_matrix)
            .transpose()
            .map_err(ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ComplexMatrix>, D::Error> {
        Option::<MatrixRecord>::deserialize(d)?
            .map(|r| r.to_matrix().map_err(de::Error::custom))
            .transpose()
    }
}

/// `|1>><<1| / N`.
pub fn max_entangled_density(n: usize) -> ComplexMatrix {
    DoubleKet::identity(n).projector() / c64(n as f64, 0.0)
}

/// Unnormalized states on system 3, one per POVM outcome, from the full
/// three-system computation with the given resource on systems 2 and 3.
pub fn conditional_states(
    rho: &ComplexMatrix,
    povm: &BellPovm,
    resource: &ComplexMatrix,
) -> Result<Vec<ComplexMatrix>> {
    let n = povm.dim;
    if rho.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "input state is {}x{}, measurement acts on dimension {n}",
            rho.nrows(),
            rho.ncols()
        )));
    }
    if resource.shape() != (n * n, n * n) {
        return Err(Error::DimensionMismatch(format!(
            "resource is {}x{}, expected {}x{}",
            resource.nrows(),
            resource.ncols(),
            n * n,
            n * n
        )));
    }
    let joint = tensor(rho, resource);
    let eye = identity(n);
    povm.effects
        .iter()
        .map(|e| {
            let measured = tensor(e, &eye) * &joint;
            partial_trace(&measured, n * n, n, Subsystem::Second).map(|m| hermitian_part(&m))
        })
        .collect()
}

fn record(
    label: &Value,
    unnormalized: &ComplexMatrix,
    correction: &ComplexMatrix,
    input: &ComplexMatrix,
) -> Result<TeleportRecord> {
    let probability = unnormalized.trace().re;
    if probability <= NEGLIGIBLE_PROBABILITY {
        return Ok(TeleportRecord {
            label: label.clone(),
            probability: probability.max(0.0),
            conditional: None,
            corrected: None,
            fidelity: None,
        });
    }
    let conditional = unnormalized / c64(probability, 0.0);
    let corrected = hermitian_part(&(correction * &conditional * correction.adjoint()));
    let fidelity = state_fidelity(input, &corrected)?;
    Ok(TeleportRecord {
        label: label.clone(),
        probability,
        conditional: Some(conditional),
        corrected: Some(corrected),
        fidelity: Some(fidelity),
    })
}

/// Teleportation with the maximally entangled resource `|V>>/sqrt(N)`.
///
/// Outcome `k` is corrected with `U_k V^*`.
pub fn ideal_teleport(
    rho: &ComplexMatrix,
    povm: &BellPovm,
    resource_v: &ComplexMatrix,
) -> Result<Vec<TeleportRecord>> {
    let n = povm.dim;
    validate_density(rho, DEFAULT_TOL)?;
    if resource_v.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "resource unitary is {}x{}, expected {n}x{n}",
            resource_v.nrows(),
            resource_v.ncols()
        )));
    }
    let residual = unitarity_residual(resource_v);
    if residual > DEFAULT_TOL {
        return Err(Error::NotUnitary { index: 0, residual });
    }
    let resource = DoubleKet::new(resource_v.clone()).projector() / c64(n as f64, 0.0);
    let states = conditional_states(rho, povm, &resource)?;
    let v_conj = resource_v.conjugate();
    states
        .iter()
        .enumerate()
        .map(|(k, s)| record(&povm.labels[k], s, &(&povm.unitaries[k] * &v_conj), rho))
        .collect()
}

/// The contraction `(<<1|_12 (x) 1_3)(1_1 (x) |1>>_23)` as an operator from
/// system 1 to system 3. It is the identity: it carries `|psi>_1` to `|psi>_3`.
pub fn transfer_operator(n: usize) -> ComplexMatrix {
    let one = DoubleKet::identity(n).as_vector();
    let eye = identity(n);
    let bra = tensor(&one.adjoint(), &eye);
    let ket = tensor(&eye, &one);
    bra * ket
}

/// Localizes a channel on systems 2 and 3 to a channel on system 3 alone.
pub fn localize_channel(e: &KrausChannel) -> Result<KrausChannel> {
    let n = (e.dim() as f64).sqrt().round() as usize;
    if n * n != e.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel dimension {} is not a perfect square",
            e.dim()
        )));
    }
    e.localize(n)
}

/// Teleportation with the resource `E(|1>><<1|/N)`.
///
/// The outcome states are computed by the full simulation and again through
/// `(w_k/N) Ê(U_k^dagger rho U_k)`. Any disagreement larger than `tol`, in
/// probability or in trace distance of the conditional states, is an error.
/// Outcome `k` is corrected with `U_k`.
pub fn noisy_teleport(
    rho: &ComplexMatrix,
    povm: &BellPovm,
    e: &KrausChannel,
    tol: f64,
) -> Result<Vec<TeleportRecord>> {
    let n = povm.dim;
    validate_density(rho, DEFAULT_TOL)?;
    if e.dim() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {}, resource has dimension {}",
            e.dim(),
            n * n
        )));
    }
    let resource = e.apply(&max_entangled_density(n))?;
    let full = conditional_states(rho, povm, &resource)?;
    let local = localize_channel(e)?;
    for (k, state) in full.iter().enumerate() {
        let u = &povm.unitaries[k];
        let scale = c64(povm.weights[k] / n as f64, 0.0);
        let shortcut = local.apply(&(u.adjoint() * rho * u))? * scale;
        let (p_full, p_short) = (state.trace().re, shortcut.trace().re);
        let probability_gap = (p_full - p_short).abs();
        let state_gap = if p_full > NEGLIGIBLE_PROBABILITY && p_short > NEGLIGIBLE_PROBABILITY {
            trace_distance(
                &(state / c64(p_full, 0.0)),
                &hermitian_part(&(shortcut / c64(p_short, 0.0))),
            )?
        } else {
            trace_distance(state, &hermitian_part(&shortcut))?
        };
        if probability_gap > tol || state_gap > tol {
            return Err(Error::ShortcutMismatch {
                outcome: k,
                probability_gap,
                state_gap,
            });
        }
    }
    full.iter()
        .enumerate()
        .map(|(k, s)| record(&povm.labels[k], s, &povm.unitaries[k], rho))
        .collect()
}

/// Outcome of teleporting a pure state with the pure resource `|S>>`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PureOutcome {
    pub label: Value,
    pub probability: f64,
    /// `U_k S^T U_k^dagger psi`, unnormalized.
    #[serde(with = "serde_matrix")]
    pub vector: ComplexMatrix,
    /// Set when the vector vanishes, in which case the outcome never occurs.
    pub zero_norm: bool,
}

/// Teleports the column vector `psi` with resource `|S>>` (rescaled to
/// `Tr[S^dagger S] = 1`).
///
/// Outcome `k` yields `U_k S^T U_k^dagger psi` with probability
/// `w_k ||S^T U_k^dagger psi||^2`. Both are checked against the full
/// three-system simulation to within `tol`.
pub fn pure_resource_teleport(
    psi: &ComplexMatrix,
    s: &ComplexMatrix,
    povm: &BellPovm,
    tol: f64,
) -> Result<Vec<PureOutcome>> {
    let n = povm.dim;
    if psi.shape() != (n, 1) {
        return Err(Error::DimensionMismatch(format!(
            "input vector is {}x{}, expected {n}x1",
            psi.nrows(),
            psi.ncols()
        )));
    }
    if s.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "resource matrix is {}x{}, expected {n}x{n}",
            s.nrows(),
            s.ncols()
        )));
    }
    let psi_norm = psi.norm();
    let s_norm = s.norm();
    if psi_norm == 0.0 || s_norm == 0.0 {
        return Err(Error::ZeroOperator);
    }
    let psi = psi / c64(psi_norm, 0.0);
    let s = s / c64(s_norm, 0.0);
    let s_t = s.transpose();

    let rho = &psi * psi.adjoint();
    let resource = DoubleKet::new(s.clone()).projector();
    let full = conditional_states(&rho, povm, &resource)?;

    let mut out = Vec::with_capacity(povm.len());
    for (k, u) in povm.unitaries.iter().enumerate() {
        let on_third = &s_t * u.adjoint() * &psi;
        let probability = povm.weights[k] * on_third.norm_squared();
        let vector = u * on_third;
        let expected = (&vector * vector.adjoint()) * c64(povm.weights[k], 0.0);
        let corrected_full = u * &full[k] * u.adjoint();
        let gap = (corrected_full - expected).norm();
        if gap > tol {
            return Err(Error::ShortcutMismatch {
                outcome: k,
                probability_gap: (full[k].trace().re - probability).abs(),
                state_gap: gap,
            });
        }
        out.push(PureOutcome {
            label: povm.labels[k].clone(),
            probability,
            zero_norm: probability <= NEGLIGIBLE_PROBABILITY,
            vector,
        });
    }
    Ok(out)
}
