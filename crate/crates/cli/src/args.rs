// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bellbasis", version, about = "Operator bases, Bell measurements and teleportation")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance; each subcommand has its own default.
    #[arg(long, global = true, env = "BELLBASIS_TOL")]
    pub tol: Option<f64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the completeness checks on a spanning set.
    CheckBasis(CheckBasisArgs),
    /// Simulate teleportation of a density matrix.
    Teleport(TeleportArgs),
    /// Tabulate the qubit minimum fidelity against epsilon.
    FidelitySweep(FidelitySweepArgs),
    /// Build a Bell observable in direct and tensor form.
    Observable(ObservableArgs),
    /// Convergence ladders for the truncated Weyl-Heisenberg checks.
    CvCheck(CvCheckArgs),
}

#[derive(Debug, Args)]
pub struct CheckBasisArgs {
    /// Builtin set, e.g. `znzn:3`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub builtin: Option<String>,
    /// Spanning-set JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Random operators per randomized check.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    /// Input density matrix (matrix JSON).
    #[arg(long)]
    pub rho: PathBuf,
    /// Dimension of the shift-multiply Bell measurement; defaults to that of rho.
    #[arg(long)]
    pub n: Option<usize>,
    /// Kraus channel applied to the maximally entangled resource.
    #[arg(long, conflicts_with = "resource")]
    pub channel: Option<PathBuf>,
    /// Unitary V of the resource |V>>/sqrt(N) (matrix JSON).
    #[arg(long)]
    pub resource: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FidelitySweepArgs {
    /// Epsilon values in [0, 1).
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub eps: Vec<f64>,
    /// Bloch-sphere grid size of the brute-force minimizer (at least 100).
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ObservableArgs {
    #[arg(long)]
    pub n: usize,
    /// Label values, one per outcome in (m, n) row-major order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["f_file", "random_f"])]
    pub f: Option<Vec<f64>>,
    /// JSON array of label values.
    #[arg(long)]
    pub f_file: Option<PathBuf>,
    /// Draw a random injective labeling from the seed.
    #[arg(long, conflicts_with = "f_file")]
    pub random_f: bool,
    /// Minimum separation between label values.
    #[arg(long, default_value_t = bellbasis::bell::MIN_LABEL_GAP)]
    pub min_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeOperator {
    /// `|0><0|`
    Vacuum,
    /// `|0><1|`, traceless
    Coherence,
}

#[derive(Debug, Args)]
pub struct CvCheckArgs {
    /// Ascending truncations for the eigen-relation ladder.
    #[arg(long, value_delimiter = ',', default_value = "40,60,80")]
    pub ladder: Vec<usize>,
    /// Interior cut of the eigen-relation check; must be below every rung.
    #[arg(long, default_value_t = 30)]
    pub cut: usize,
    /// Displacement `re` or `re,im`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1.5")]
    pub z: Vec<f64>,
    /// Radius of the quadrature grid.
    #[arg(long, default_value_t = 6.0)]
    pub radius: f64,
    /// Grid spacings, coarse to fine.
    #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.25")]
    pub spacings: Vec<f64>,
    /// Truncation used for the quadrature check.
    #[arg(long, default_value_t = bellbasis::cv::DEFAULT_N_MAX)]
    pub quad_n_max: usize,
    /// Interior cut of the quadrature check.
    #[arg(long, default_value_t = 10)]
    pub quad_cut: usize,
    #[arg(long, value_enum, default_value_t = ProbeOperator::Vacuum)]
    pub operator: ProbeOperator,
}
