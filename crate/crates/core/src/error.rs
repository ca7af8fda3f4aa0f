// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator {index} is not unitary (residual {residual:.3e})")]
    NotUnitary { index: usize, residual: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("effects do not resolve the identity (residual {0:.3e})")]
    IncompleteResolution(f64),

    #[error("labeling is not injective; colliding labels: {}", format_pairs(.0))]
    NonInjective(Vec<(String, String)>),

    #[error("operator is zero")]
    ZeroOperator,

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "outcome {outcome}: shortcut disagrees with full simulation \
         (probability {probability_gap:.3e}, state {state_gap:.3e})"
    )]
    ShortcutMismatch {
        outcome: usize,
        probability_gap: f64,
        state_gap: f64,
    },

    #[error("quadrature grid is empty")]
    EmptyGrid,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{a} ~ {b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
