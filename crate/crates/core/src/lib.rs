// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Operator bases, Bell measurements and teleportation for bipartite quantum
//! systems.
//!
//! The crate is organized around the correspondence between vectors of
//! `H (x) H` and operators on `H` (see [`doubleket`]):
//!
//! * [`matrix`]: dense complex linear algebra and the shared JSON matrix format.
//! * [`doubleket`]: the `|C>>` calculus, Schmidt form, maximal entanglement and
//!   the localization ("hat") map.
//! * [`spanning`]: spanning sets of operators, the four completeness checks and
//!   the shift-multiply basis of `Z_N x Z_N`.
//! * [`bell`]: Bell POVMs and observables built from unitary spanning sets.
//! * [`teleport`]: teleportation with ideal, noisy and pure non-maximal
//!   resources, plus the qubit minimum-fidelity analysis.
//! * [`cv`]: truncated Fock-space displacement operators and the
//!   Weyl-Heisenberg checks.
//!
//! The guide in `book/` walks through each of these with runnable snippets.

pub mod bell;
pub mod cv;
pub mod doubleket;
pub mod error;
pub mod matrix;
pub mod random;
pub mod spanning;
pub mod teleport;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Subsystem, DEFAULT_TOL};

// The guide's Rust snippets are compiled and run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/double-kets.md")]
    mod double_kets {}
    #[doc = include_str!("../../../book/src/spanning-sets.md")]
    mod spanning_sets {}
    #[doc = include_str!("../../../book/src/bell-measurements.md")]
    mod bell_measurements {}
    #[doc = include_str!("../../../book/src/teleportation.md")]
    mod teleportation {}
    #[doc = include_str!("../../../book/src/fidelity.md")]
    mod fidelity {}
    #[doc = include_str!("../../../book/src/weyl-heisenberg.md")]
    mod weyl_heisenberg {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
