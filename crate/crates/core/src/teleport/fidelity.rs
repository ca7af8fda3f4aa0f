// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Minimum fidelity of qubit teleportation with a pure resource `|S>>`.
//!
//! For input `psi` the corrected output is proportional to `S^T psi`, so the
//! fidelity is `|<psi|S^T|psi>|^2 / <psi|S^* S^T|psi>`. Its minimum over the
//! Bloch sphere depends only on the singular values `s1 >= s2` of `S`:
//!
//! `F_min = 4 det(S~) / Tr^2(S~) = 1 - eps^2`, with `S~ = sqrt(S^dagger S)` and
//! `eps = (s1 - s2) / (s1 + s2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{det, diag_real, psd_sqrt, svd, ComplexMatrix};

/// Golden-section steps per coordinate sweep of the refinement.
pub const GOLDEN_ITERATIONS: usize = 80;

const REFINE_ROUNDS: usize = 40;
const MIN_DENOMINATOR: f64 = 1e-300;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// A pure qubit state `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    pub fn amplitudes(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }

    pub fn state(&self) -> ComplexMatrix {
        let [a, b] = self.amplitudes();
        ComplexMatrix::from_column_slice(2, 1, &[a, b])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub epsilon: Option<f64>,
    pub analytic: Option<f64>,
    pub brute: Option<f64>,
    pub argmin: Option<BlochPoint>,
}

fn require_qubit(s: &ComplexMatrix) -> Result<()> {
    if s.shape() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "resource matrix is {}x{}, expected 2x2",
            s.nrows(),
            s.ncols()
        )));
    }
    if s.norm() == 0.0 {
        return Err(Error::ZeroOperator);
    }
    Ok(())
}

/// `|<psi|S^T|psi>|^2 / <psi|S^* S^T|psi>`, or `None` when `S^T psi = 0`.
pub fn fidelity_ratio(s: &ComplexMatrix, psi: &ComplexMatrix) -> Option<f64> {
    let out = s.transpose() * psi;
    let denom = out.norm_squared();
    if denom <= MIN_DENOMINATOR {
        return None;
    }
    let overlap = (psi.adjoint() * &out)[(0, 0)].norm_sqr();
    Some(overlap / (denom * psi.norm_squared()))
}

/// [`fidelity_ratio`] for a 2x2 matrix, without allocating.
fn qubit_ratio(t: &[Complex64; 4], p: BlochPoint) -> Option<f64> {
    let [a, b] = p.amplitudes();
    // t holds S^T row-major
    let out0 = t[0] * a + t[1] * b;
    let out1 = t[2] * a + t[3] * b;
    let denom = out0.norm_sqr() + out1.norm_sqr();
    if denom <= MIN_DENOMINATOR {
        return None;
    }
    let overlap = a.conj() * out0 + b.conj() * out1;
    Some(overlap.norm_sqr() / denom)
}

fn epsilon_of(s: &ComplexMatrix) -> f64 {
    let sv = svd(s).singular_values;
    (sv[0] - sv[1]) / (sv[0] + sv[1])
}

/// `4 det(S~) / Tr^2(S~)` with `S~ = sqrt(S^dagger S)`.
pub fn min_fidelity_analytic(s: &ComplexMatrix) -> Result<FidelityReport> {
    require_qubit(s)?;
    let s_tilde = psd_sqrt(&(s.adjoint() * s))?;
    let tr = s_tilde.trace().re;
    let f = (4.0 * det(&s_tilde)?.re / (tr * tr)).clamp(0.0, 1.0);
    Ok(FidelityReport {
        epsilon: Some(epsilon_of(s)),
        analytic: Some(f),
        brute: None,
        argmin: None,
    })
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERATIONS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimizes `f` over the Bloch sphere: a `grid x grid` scan of
/// `theta in [0, pi]`, `phi in [0, 2 pi)`, then alternating golden-section
/// searches inside the best cell. Points where `f` is `None` are skipped.
pub fn bloch_minimum<F>(f: F, grid: usize) -> Result<(f64, BlochPoint)>
where
    F: Fn(BlochPoint) -> Option<f64>,
{
    if grid < 2 {
        return Err(Error::EmptyGrid);
    }
    let d_theta = std::f64::consts::PI / (grid - 1) as f64;
    let d_phi = std::f64::consts::TAU / grid as f64;
    let mut best: Option<(f64, BlochPoint)> = None;
    for i in 0..grid {
        for j in 0..grid {
            let p = BlochPoint {
                theta: i as f64 * d_theta,
                phi: j as f64 * d_phi,
            };
            if let Some(v) = f(p) {
                if best.map_or(true, |(b, _)| v < b) {
                    best = Some((v, p));
                }
            }
        }
    }
    let (mut value, mut point) = best.ok_or(Error::EmptyGrid)?;
    let eval = |p: BlochPoint| f(p).unwrap_or(f64::INFINITY);
    let (mut half_theta, mut half_phi) = (d_theta, d_phi);
    for _ in 0..REFINE_ROUNDS {
        let previous = value;
        let lo = (point.theta - half_theta).max(0.0);
        let hi = (point.theta + half_theta).min(std::f64::consts::PI);
        let phi = point.phi;
        let (theta, v) = golden(|t| eval(BlochPoint { theta: t, phi }), lo, hi);
        if v < value {
            value = v;
            point.theta = theta;
        }
        let theta = point.theta;
        let (phi, v) = golden(
            |q| eval(BlochPoint { theta, phi: q }),
            point.phi - half_phi,
            point.phi + half_phi,
        );
        if v < value {
            value = v;
            point.phi = phi.rem_euclid(std::f64::consts::TAU);
        }
        half_theta *= 0.5;
        half_phi *= 0.5;
        if previous - value <= 1e-16 && half_theta < 1e-6 {
            break;
        }
    }
    Ok((value, point))
}

/// Brute-force minimum of the fidelity ratio over the whole Bloch sphere.
///
/// The search runs on `S~ = sqrt(S^dagger S)`, which has the singular values
/// of `S` but differs from it by a local unitary that the correction absorbs.
/// With a raw `S` in a fixed basis the ratio measures overlap with an
/// uncorrected output and can reach zero for a maximally entangled resource.
pub fn min_fidelity_brute(s: &ComplexMatrix, grid: usize) -> Result<FidelityReport> {
    require_qubit(s)?;
    if grid < 100 {
        return Err(Error::InvalidArgument(format!(
            "grid size {grid} below the minimum of 100"
        )));
    }
    let s_tilde = psd_sqrt(&(s.adjoint() * s))?;
    let t = [s_tilde[(0, 0)], s_tilde[(1, 0)], s_tilde[(0, 1)], s_tilde[(1, 1)]];
    let (value, point) = bloch_minimum(|p| qubit_ratio(&t, p), grid)?;
    Ok(FidelityReport {
        epsilon: Some(epsilon_of(s)),
        analytic: None,
        brute: Some(value.clamp(0.0, 1.0)),
        argmin: Some(point),
    })
}

/// Minimum of the fidelity ratio for `S` itself over the real states
/// `cos x|0> + sin x|1>`, `x in [0, pi)`.
pub fn real_family_minimum(s: &ComplexMatrix, grid: usize) -> Result<(f64, f64)> {
    require_qubit(s)?;
    if grid < 2 {
        return Err(Error::EmptyGrid);
    }
    let eval = |x: f64| {
        let psi = ComplexMatrix::from_column_slice(
            2,
            1,
            &[Complex64::new(x.cos(), 0.0), Complex64::new(x.sin(), 0.0)],
        );
        fidelity_ratio(s, &psi).unwrap_or(f64::INFINITY)
    };
    let dx = std::f64::consts::PI / grid as f64;
    let (mut x, mut value) = (0.0, eval(0.0));
    for i in 1..grid {
        let xi = i as f64 * dx;
        let v = eval(xi);
        if v < value {
            x = xi;
            value = v;
        }
    }
    let (xr, vr) = golden(eval, x - dx, x + dx);
    if vr < value {
        x = xr.rem_euclid(std::f64::consts::PI);
        value = vr;
    }
    Ok((value, x))
}

/// `diag(1 + eps, 1 - eps)`.
pub fn epsilon_resource(eps: f64) -> ComplexMatrix {
    diag_real(&[1.0 + eps, 1.0 - eps])
}

/// Analytic and brute-force minimum fidelity for each `eps`.
pub fn epsilon_sweep(eps: &[f64], grid: usize) -> Result<Vec<FidelityReport>> {
    eps.iter()
        .map(|&e| {
            if !(0.0..1.0).contains(&e) {
                return Err(Error::InvalidArgument(format!("epsilon {e} outside [0, 1)")));
            }
            let s = epsilon_resource(e);
            let analytic = min_fidelity_analytic(&s)?;
            let brute = min_fidelity_brute(&s, grid)?;
            Ok(FidelityReport {
                epsilon: Some(e),
                analytic: analytic.analytic,
                brute: brute.brute,
                argmin: brute.argmin,
            })
        })
        .collect()
}
