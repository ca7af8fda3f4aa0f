// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::doubleket::hat_map;
use crate::error::{Error, Result};
use crate::matrix::{
    c64, identity, pauli_x, pauli_y, pauli_z, require_square, serde_matrix_vec, tensor,
    ComplexMatrix, Subsystem,
};
use crate::random::haar_unitary;

/// A completely positive map `rho -> sum_mu A_mu rho A_mu^dagger`.
///
/// Construction only checks shapes; trace preservation is a property queried
/// through [`KrausChannel::is_trace_preserving`], since localized channels
/// need not have it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KrausChannel {
    #[serde(rename = "kraus", with = "serde_matrix_vec")]
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::InvalidArgument("channel needs at least one Kraus operator".into()))?;
        let dim = require_square(first)?;
        if let Some(op) = ops.iter().find(|a| a.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operators of shapes {:?} and {:?}",
                first.shape(),
                op.shape()
            )));
        }
        Ok(Self { ops })
    }

    pub fn dim(&self) -> usize {
        self.ops[0].nrows()
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `||sum_mu A_mu^dagger A_mu - 1||`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let sum: ComplexMatrix = self.ops.iter().map(|a| a.adjoint() * a).sum();
        (sum - identity(self.dim())).norm()
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.trace_preservation_residual() <= tol
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "channel on dimension {} applied to a {}x{} operator",
                self.dim(),
                rho.nrows(),
                rho.ncols()
            )));
        }
        Ok(self.ops.iter().map(|a| a * rho * a.adjoint()).sum())
    }

    /// Lifts the channel to one factor of a bipartite system, with the
    /// identity on the other factor of dimension `other_dim`.
    pub fn on_subsystem(&self, which: Subsystem, other_dim: usize) -> Self {
        let eye = identity(other_dim);
        let ops = self
            .ops
            .iter()
            .map(|a| match which {
                Subsystem::First => tensor(a, &eye),
                Subsystem::Second => tensor(&eye, a),
            })
            .collect();
        Self { ops }
    }

    /// Channel on `H` whose Kraus operators are `hat_map(A_mu)`, for a channel
    /// on `H (x) H`.
    pub fn localize(&self, n: usize) -> Result<Self> {
        let ops = self
            .ops
            .iter()
            .map(|a| hat_map(a, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ops })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            ops: vec![identity(dim)],
        }
    }

    /// Qubit depolarizing channel `rho -> (1 - p) rho + p 1/2`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_probability(p)?;
        let k0 = identity(2) * c64((1.0 - 0.75 * p).sqrt(), 0.0);
        let s = c64((p / 4.0).sqrt(), 0.0);
        Ok(Self {
            ops: vec![k0, pauli_x() * s, pauli_y() * s, pauli_z() * s],
        })
    }

    /// Two-qubit depolarizing channel `rho -> (1 - p) rho + p 1/4`, with the
    /// sixteen Pauli products as Kraus operators.
    pub fn two_qubit_depolarizing(p: f64) -> Result<Self> {
        check_probability(p)?;
        let paulis = [identity(2), pauli_x(), pauli_y(), pauli_z()];
        let mut ops = Vec::with_capacity(16);
        for (i, a) in paulis.iter().enumerate() {
            for (j, b) in paulis.iter().enumerate() {
                let w = if i == 0 && j == 0 {
                    1.0 - 15.0 * p / 16.0
                } else {
                    p / 16.0
                };
                ops.push(tensor(a, b) * c64(w.sqrt(), 0.0));
            }
        }
        Ok(Self { ops })
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        check_probability(gamma)?;
        let k0 = crate::matrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()]);
        let k1 = crate::matrix::from_real(2, 2, &[0.0, gamma.sqrt(), 0.0, 0.0]);
        Ok(Self { ops: vec![k0, k1] })
    }

    /// Correlated two-qubit bit flip: `X (x) X` with probability `p`.
    pub fn correlated_flip(p: f64) -> Result<Self> {
        check_probability(p)?;
        let xx = tensor(&pauli_x(), &pauli_x());
        Ok(Self {
            ops: vec![
                identity(4) * c64((1.0 - p).sqrt(), 0.0),
                xx * c64(p.sqrt(), 0.0),
            ],
        })
    }

    /// Random trace-preserving channel from `count` blocks of a Haar isometry.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> Result<Self> {
        if count == 0 || dim == 0 {
            return Err(Error::InvalidArgument(
                "random channel needs positive dimension and Kraus count".into(),
            ));
        }
        let u = haar_unitary(rng, dim * count);
        let ops = (0..count)
            .map(|k| u.view((k * dim, 0), (dim, dim)).into_owned())
            .collect();
        Ok(Self { ops })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: KrausChannel = serde_json::from_str(s)?;
        Self::new(raw.ops)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "probability {p} outside [0, 1]"
        )))
    }
}
