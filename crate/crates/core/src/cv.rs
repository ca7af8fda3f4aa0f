// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

//! Weyl-Heisenberg constructions on a truncated Fock space.
//!
//! Identities that hold only in infinite dimension are checked on the interior
//! block of photon numbers below `interior_cut`, away from the truncation edge.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{expm, hermitian_eigen, identity, tensor, ComplexMatrix, HermitianEigen};

pub const DEFAULT_N_MAX: usize = 60;
pub const DEFAULT_INTERIOR_CUT: usize = 40;
/// Interior used for the composition law. At `n_max = 60` and `|z|, |w| <= 1`
/// the residual is about `1e-14` below 30 levels and `4e-6` at 40.
pub const WEYL_INTERIOR_CUT: usize = 30;

/// Truncated mode with basis `|0>, ..., |n_max - 1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockSpace {
    pub n_max: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidArgument(format!(
                "truncation {n_max} too small, need at least 2 levels"
            )));
        }
        Ok(Self { n_max })
    }

    /// `a|n> = sqrt(n)|n-1>`.
    pub fn annihilation(&self) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(self.n_max, self.n_max);
        for n in 1..self.n_max {
            a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
        }
        a
    }

    pub fn creation(&self) -> ComplexMatrix {
        self.annihilation().transpose()
    }

    pub fn number(&self) -> ComplexMatrix {
        crate::matrix::diag_real(&(0..self.n_max).map(|n| n as f64).collect::<Vec<_>>())
    }
}

fn generator(z: Complex64, fock: FockSpace) -> ComplexMatrix {
    fock.creation() * z - fock.annihilation() * z.conj()
}

/// `D(z) = exp(z a^dagger - z^* a)` by matrix exponential.
pub fn displacement(z: Complex64, n_max: usize) -> Result<ComplexMatrix> {
    let fock = FockSpace::new(n_max)?;
    expm(&generator(z, fock))
}

/// Builds many displacements of one truncation from a single
/// diagonalization of `i(a^dagger - a)`.
///
/// With `z = r e^{i theta}`, `D(z) = R exp(r(a^dagger - a)) R^dagger` where
/// `R = diag(e^{i theta n})`.
#[derive(Clone, Debug)]
pub struct DisplacementFactory {
    n_max: usize,
    eigen: HermitianEigen,
}

impl DisplacementFactory {
    pub fn new(n_max: usize) -> Result<Self> {
        let fock = FockSpace::new(n_max)?;
        let h = (fock.creation() - fock.annihilation()) * Complex64::i();
        Ok(Self {
            n_max,
            eigen: hermitian_eigen(&h)?,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// The block `D(z)[0..rows, 0..cols]`.
    pub fn block(&self, z: Complex64, rows: usize, cols: usize) -> ComplexMatrix {
        let (r, theta) = z.to_polar();
        let v = &self.eigen.vectors;
        let n = self.n_max;
        let (rows, cols) = (rows.min(n), cols.min(n));
        let phases: Vec<Complex64> = self
            .eigen
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -r * l))
            .collect();
        let mut left = v.rows(0, rows).into_owned();
        for (k, p) in phases.iter().enumerate() {
            for i in 0..rows {
                left[(i, k)] *= p;
            }
        }
        let mut out = left * v.rows(0, cols).adjoint();
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] *= Complex64::from_polar(1.0, theta * (i as f64 - j as f64));
            }
        }
        out
    }

    pub fn displacement(&self, z: Complex64) -> ComplexMatrix {
        self.block(z, self.n_max, self.n_max)
    }
}

/// `Z_12 = a (x) 1 - 1 (x) a^dagger` on two truncated modes. Dense, so only
/// for small truncations; [`z12_apply`] acts on double-kets directly.
pub fn z12_operator(n_max: usize) -> Result<ComplexMatrix> {
    let fock = FockSpace::new(n_max)?;
    let eye = identity(n_max);
    Ok(tensor(&fock.annihilation(), &eye) - tensor(&eye, &fock.creation()))
}

/// `Z_12 |C>> = |a C - C a>>`, since `a` is real in the Fock basis.
pub fn z12_apply(c: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = crate::matrix::require_square(c)?;
    let a = FockSpace::new(n)?.annihilation();
    Ok(&a * c - c * &a)
}

fn check_cut(n_max: usize, interior_cut: usize) -> Result<()> {
    if interior_cut == 0 || interior_cut >= n_max {
        return Err(Error::InvalidArgument(format!(
            "interior cut {interior_cut} must lie in 1..{n_max}"
        )));
    }
    Ok(())
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    #[serde(with = "complex_pair")]
    pub z: Complex64,
    pub n_max: usize,
    pub interior_cut: usize,
    pub residual: f64,
}

/// `||P(Z_12|D(z)>> - z|D(z)>>)|| / ||P|D(z)>>||` with `P` projecting both
/// modes below `interior_cut`.
pub fn eigen_relation_check(z: Complex64, n_max: usize, interior_cut: usize) -> Result<EigenReport> {
    check_cut(n_max, interior_cut)?;
    let d = displacement(z, n_max)?;
    let lhs = z12_apply(&d)? - &d * z;
    let c = interior_cut;
    let residual = lhs.view((0, 0), (c, c)).norm() / d.view((0, 0), (c, c)).norm();
    Ok(EigenReport {
        z,
        n_max,
        interior_cut,
        residual,
    })
}

/// Eigen-relation residual at each truncation of an ascending ladder.
pub fn eigen_ladder(z: Complex64, ladder: &[usize], interior_cut: usize) -> Result<Vec<EigenReport>> {
    if ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("truncation ladder must be ascending".into()));
    }
    ladder
        .iter()
        .map(|&n| eigen_relation_check(z, n, interior_cut))
        .collect()
}

/// True when every value is below the previous one or already at most
/// `floor`, so a ladder that has converged to rounding noise still counts.
pub fn decreasing_to_floor(values: &[f64], floor: f64) -> bool {
    values.windows(2).all(|w| w[1] < w[0] || w[1] <= floor)
}

/// `||D(z)^dagger D(z) - 1||` on the full truncated space.
pub fn unitarity_residual(z: Complex64, n_max: usize) -> Result<f64> {
    Ok(crate::matrix::unitarity_residual(&displacement(z, n_max)?))
}

/// Interior norm of `D(z) D(w) - e^{i Im(z w^*)} D(z + w)`.
pub fn weyl_phase_residual(z: Complex64, w: Complex64, n_max: usize, interior_cut: usize) -> Result<f64> {
    check_cut(n_max, interior_cut)?;
    let phase = Complex64::from_polar(1.0, (z * w.conj()).im);
    let diff = displacement(z, n_max)? * displacement(w, n_max)? - displacement(z + w, n_max)? * phase;
    Ok(diff.view((0, 0), (interior_cut, interior_cut)).norm())
}

/// Lattice points `h(p + iq)` with `|z| <= radius`, each weighted `h^2/pi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacementGrid {
    pub radius: f64,
    pub spacing: f64,
    pub n_max: usize,
    #[serde(skip)]
    pub points: Vec<Complex64>,
    #[serde(skip)]
    pub weights: Vec<f64>,
}

impl DisplacementGrid {
    pub fn square(radius: f64, spacing: f64, n_max: usize) -> Result<Self> {
        if !(radius >= 0.0 && spacing > 0.0 && radius.is_finite() && spacing.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "grid radius {radius} and spacing {spacing} must be finite, spacing positive"
            )));
        }
        FockSpace::new(n_max)?;
        let steps = (radius / spacing).floor() as i64;
        let mut points = Vec::new();
        for p in -steps..=steps {
            for q in -steps..=steps {
                let z = Complex64::new(p as f64 * spacing, q as f64 * spacing);
                if z.norm() <= radius + 1e-12 {
                    points.push(z);
                }
            }
        }
        let w = spacing * spacing / std::f64::consts::PI;
        let weights = vec![w; points.len()];
        Ok(Self {
            radius,
            spacing,
            n_max,
            points,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub radius: f64,
    pub spacing: f64,
    pub n_max: usize,
    pub interior_cut: usize,
    pub points: usize,
    pub residual: f64,
}

/// Largest photon number on which `a_op` has a nonzero entry.
fn photon_support(a_op: &ComplexMatrix) -> Option<usize> {
    let mut top = None;
    for i in 0..a_op.nrows() {
        for j in 0..a_op.ncols() {
            if a_op[(i, j)] != Complex64::new(0.0, 0.0) {
                top = Some(top.map_or(i.max(j), |t: usize| t.max(i).max(j)));
            }
        }
    }
    top
}

/// Compares `sum_j w_j D(z_j)^dagger A D(z_j)` with `Tr[A] 1` on photon
/// numbers below `interior_cut`, returning the Frobenius norm of the
/// difference. `A` must vanish above photon number `interior_cut / 2`.
pub fn wh_depolarizing_check(
    a_op: &ComplexMatrix,
    grid: &DisplacementGrid,
    interior_cut: usize,
) -> Result<QuadratureReport> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let n = grid.n_max;
    check_cut(n, interior_cut)?;
    let dim = crate::matrix::require_square(a_op)?;
    if dim > n {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {dim} exceeds truncation {n}"
        )));
    }
    crate::matrix::ensure_finite(a_op)?;
    let support = photon_support(a_op).map_or(1, |t| t + 1);
    if support - 1 > interior_cut / 2 {
        return Err(Error::InvalidArgument(format!(
            "operator reaches photon number {}, above interior_cut/2 = {}",
            support - 1,
            interior_cut / 2
        )));
    }
    let a_block = a_op.view((0, 0), (support, support)).into_owned();
    let factory = DisplacementFactory::new(n)?;
    let mut sum = ComplexMatrix::zeros(interior_cut, interior_cut);
    for (z, w) in grid.points.iter().zip(&grid.weights) {
        let d = factory.block(*z, support, interior_cut);
        sum += (d.adjoint() * &a_block * &d) * Complex64::new(*w, 0.0);
    }
    let target = identity(interior_cut) * a_op.trace();
    Ok(QuadratureReport {
        radius: grid.radius,
        spacing: grid.spacing,
        n_max: n,
        interior_cut,
        points: grid.len(),
        residual: (sum - target).norm(),
    })
}

/// Quadrature residual for each grid spacing.
pub fn quadrature_ladder(
    a_op: &ComplexMatrix,
    radius: f64,
    spacings: &[f64],
    n_max: usize,
    interior_cut: usize,
) -> Result<Vec<QuadratureReport>> {
    spacings
        .iter()
        .map(|&h| {
            let grid = DisplacementGrid::square(radius, h, n_max)?;
            wh_depolarizing_check(a_op, &grid, interior_cut)
        })
        .collect()
}
