// Copyright 2026 The bellbasis Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;

use bellbasis::bell::{bell_observable, observable_tensor_form, BellPovm};
use bellbasis::cv::{decreasing_to_floor, eigen_ladder, quadrature_ladder, EigenReport, QuadratureReport};
use bellbasis::matrix::{
    c64, distance, identity, matrix_from_json, trace_distance, validate_density, ComplexMatrix,
    MatrixRecord,
};
use bellbasis::spanning::{check_all, znzn_basis, CheckReport, SpanningSet};
use bellbasis::teleport::{
    epsilon_sweep, ideal_teleport, noisy_teleport, BlochPoint, KrausChannel, TeleportRecord,
};
use rand::Rng;
use serde::Serialize;
use serde_json::Value;

use crate::args::{
    CheckBasisArgs, Common, CvCheckArgs, FidelitySweepArgs, Format, ObservableArgs, ProbeOperator,
    TeleportArgs,
};

/// Input problems map to exit code 2, failed checks to exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl From<bellbasis::Error> for Failure {
    fn from(e: bellbasis::Error) -> Self {
        match e {
            bellbasis::Error::ShortcutMismatch { .. } | bellbasis::Error::NonInjective(_) => {
                Failure::Check(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub body: String,
    pub summary: String,
    pub pass: bool,
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    matrix_from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn tolerance(common: &Common, default: f64) -> Result<f64, Failure> {
    let tol = common.tol.unwrap_or(default);
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Failure::Input(format!("tolerance must be positive, got {tol}")))
    }
}

fn parse_builtin(name: &str) -> Result<SpanningSet, Failure> {
    let dim = name
        .strip_prefix("znzn:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| Failure::Input(format!("unknown builtin `{name}`, expected znzn:N")))?;
    Ok(znzn_basis(dim)?.spanning_set())
}

#[derive(Serialize)]
struct BasisReport {
    source: String,
    dim: usize,
    elements: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    statements: Vec<CheckReport>,
    identities: Vec<CheckReport>,
    pass: bool,
}

pub fn check_basis(args: &CheckBasisArgs, common: &Common) -> Result<Outcome, Failure> {
    let tol = tolerance(common, 1e-10)?;
    let (source, set) = match (&args.builtin, &args.file) {
        (Some(name), _) => (name.clone(), parse_builtin(name)?),
        (None, Some(path)) => {
            let set = SpanningSet::from_json(&read(path)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), set)
        }
        (None, None) => return Err(Failure::Input("need --builtin or --file".into())),
    };
    let mut reports = check_all(&set, args.trials, common.seed, tol);
    let identities = reports.split_off(4);
    let passed = reports.iter().filter(|r| r.pass).count();
    let worst = reports.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let report = BasisReport {
        source,
        dim: set.dim(),
        elements: set.len(),
        trials: args.trials,
        seed: common.seed,
        tol,
        pass: passed == reports.len(),
        statements: reports,
        identities,
    };
    Ok(Outcome {
        summary: format!(
            "check-basis {}: {}/4 statements pass, max residual {worst:.3e}",
            report.source, passed
        ),
        pass: report.pass,
        body: json(&report)?,
    })
}

#[derive(Serialize)]
struct TeleportReport {
    dim: usize,
    scheme: &'static str,
    tol: f64,
    total_probability: f64,
    min_fidelity: Option<f64>,
    /// Largest trace distance between a corrected output and the input.
    max_trace_distance: f64,
    records: Vec<TeleportRecord>,
    pass: bool,
}

pub fn teleport(args: &TeleportArgs, common: &Common) -> Result<Outcome, Failure> {
    let tol = tolerance(common, 1e-10)?;
    let rho = read_matrix(&args.rho)?;
    validate_density(&rho, 1e-10)?;
    let n = args.n.unwrap_or(rho.nrows());
    if n != rho.nrows() {
        return Err(Failure::Input(format!(
            "rho has dimension {}, measurement dimension is {n}",
            rho.nrows()
        )));
    }
    let povm = BellPovm::znzn(n)?;
    let (scheme, records) = match (&args.channel, &args.resource) {
        (Some(path), _) => {
            let ch = KrausChannel::from_json(&read(path)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            ("noisy", noisy_teleport(&rho, &povm, &ch, tol)?)
        }
        (None, Some(path)) => ("ideal", ideal_teleport(&rho, &povm, &read_matrix(path)?)?),
        (None, None) => ("ideal", ideal_teleport(&rho, &povm, &identity(n))?),
    };
    let total_probability: f64 = records.iter().map(|r| r.probability).sum();
    let min_fidelity = records.iter().filter_map(|r| r.fidelity).reduce(f64::min);
    let mut max_trace_distance: f64 = 0.0;
    for r in &records {
        if let Some(c) = &r.corrected {
            max_trace_distance = max_trace_distance.max(trace_distance(c, &rho)?);
        }
    }
    let uniform = 1.0 / (n * n) as f64;
    let pass = match scheme {
        "ideal" => {
            max_trace_distance <= tol
                && records.iter().all(|r| (r.probability - uniform).abs() <= tol)
        }
        _ => (total_probability - 1.0).abs() <= tol,
    };
    let report = TeleportReport {
        dim: n,
        scheme,
        tol,
        total_probability,
        min_fidelity,
        max_trace_distance,
        records,
        pass,
    };
    Ok(Outcome {
        summary: format!(
            "teleport ({scheme}, N = {n}): min fidelity {}, max trace distance {max_trace_distance:.3e}",
            min_fidelity.map_or("n/a".into(), |f| format!("{f:.12}"))
        ),
        pass,
        body: json(&report)?,
    })
}

#[derive(Serialize)]
struct SweepRow {
    epsilon: f64,
    analytic: f64,
    brute: f64,
    expected: f64,
    argmin: Option<BlochPoint>,
}

#[derive(Serialize)]
struct SweepReport {
    grid: usize,
    tol: f64,
    max_dev_analytic: f64,
    max_dev_brute: f64,
    rows: Vec<SweepRow>,
    pass: bool,
}

/// Bound on `|F_analytic - (1 - eps^2)|`.
const ANALYTIC_TOL: f64 = 1e-9;

pub fn fidelity_sweep(args: &FidelitySweepArgs, common: &Common) -> Result<Outcome, Failure> {
    let tol = tolerance(common, 1e-6)?;
    let reports = epsilon_sweep(&args.eps, args.grid)?;
    let rows: Vec<SweepRow> = reports
        .into_iter()
        .map(|r| {
            let e = r.epsilon.unwrap_or_default();
            SweepRow {
                epsilon: e,
                analytic: r.analytic.unwrap_or(f64::NAN),
                brute: r.brute.unwrap_or(f64::NAN),
                expected: 1.0 - e * e,
                argmin: r.argmin,
            }
        })
        .collect();
    let dev = |f: fn(&SweepRow) -> f64| {
        rows.iter()
            .map(|r| (f(r) - r.expected).abs())
            .fold(0.0, f64::max)
    };
    let max_dev_analytic = dev(|r| r.analytic);
    let max_dev_brute = dev(|r| r.brute);
    let pass = max_dev_analytic <= ANALYTIC_TOL && max_dev_brute <= tol;
    let summary = format!(
        "fidelity-sweep: {} rows, max |F - (1 - eps^2)| analytic {max_dev_analytic:.3e}, brute {max_dev_brute:.3e}",
        rows.len()
    );
    let body = match args.format {
        Format::Json => json(&SweepReport {
            grid: args.grid,
            tol,
            max_dev_analytic,
            max_dev_brute,
            rows,
            pass,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["epsilon", "analytic", "brute", "expected"])
                .map_err(|e| Failure::Input(e.to_string()))?;
            for r in &rows {
                w.serialize((r.epsilon, r.analytic, r.brute, r.expected))
                    .map_err(|e| Failure::Input(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Failure::Input(e.to_string()))?
        }
    };
    Ok(Outcome { body, summary, pass })
}

#[derive(Serialize)]
struct ObservableReport {
    dim: usize,
    labels: Vec<Value>,
    f: Vec<f64>,
    tol: f64,
    direct: MatrixRecord,
    tensor: MatrixRecord,
    agreement_residual: f64,
    spectral_mismatch: f64,
    spectrum: Vec<f64>,
    pass: bool,
}

pub fn observable(args: &ObservableArgs, common: &Common) -> Result<Outcome, Failure> {
    let tol = tolerance(common, 1e-10)?;
    let povm = BellPovm::znzn(args.n)?;
    let f: Vec<f64> = match (&args.f, &args.f_file, args.random_f) {
        (Some(f), _, _) => f.clone(),
        (None, Some(path), _) => serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        (None, None, true) => {
            let mut rng = bellbasis::random::seeded(common.seed);
            (0..povm.len()).map(|_| rng.random_range(-1.0..1.0)).collect()
        }
        (None, None, false) => {
            return Err(Failure::Input("need --f, --f-file or --random-f".into()))
        }
    };
    let obs = bell_observable(&povm, &f, args.min_gap)?;
    let tensor = observable_tensor_form(args.n, &f)?;
    let agreement_residual = distance(&obs.operator, &tensor);
    let spectral_mismatch = obs.spectral_mismatch(&povm)?;
    let pass = agreement_residual <= tol && spectral_mismatch <= tol.max(1e-8);
    let report = ObservableReport {
        dim: args.n,
        labels: povm.labels.clone(),
        f,
        tol,
        direct: MatrixRecord::from_matrix(&obs.operator)?,
        tensor: MatrixRecord::from_matrix(&tensor)?,
        agreement_residual,
        spectral_mismatch,
        spectrum: obs.spectrum()?,
        pass,
    };
    Ok(Outcome {
        summary: format!(
            "observable (N = {}): direct vs tensor residual {agreement_residual:.3e}",
            args.n
        ),
        pass,
        body: json(&report)?,
    })
}

#[derive(Serialize)]
struct CvReport {
    tol: f64,
    eigen: Vec<EigenReport>,
    eigen_decreasing: bool,
    quadrature: Vec<QuadratureReport>,
    quadrature_decreasing: bool,
    pass: bool,
}

/// Residuals below this count as converged when checking ladder trends.
const NOISE_FLOOR: f64 = 1e-12;

pub fn cv_check(args: &CvCheckArgs, common: &Common) -> Result<Outcome, Failure> {
    let tol = tolerance(common, 1e-6)?;
    let z = match args.z.as_slice() {
        [re] => c64(*re, 0.0),
        [re, im] => c64(*re, *im),
        _ => return Err(Failure::Input("--z takes `re` or `re,im`".into())),
    };
    let eigen = eigen_ladder(z, &args.ladder, args.cut)?;
    let n = args.quad_n_max;
    let mut probe = ComplexMatrix::zeros(n, n);
    match args.operator {
        ProbeOperator::Vacuum => probe[(0, 0)] = c64(1.0, 0.0),
        ProbeOperator::Coherence => probe[(0, 1)] = c64(1.0, 0.0),
    }
    let quadrature = quadrature_ladder(&probe, args.radius, &args.spacings, n, args.quad_cut)?;
    let er: Vec<f64> = eigen.iter().map(|r| r.residual).collect();
    let qr: Vec<f64> = quadrature.iter().map(|r| r.residual).collect();
    let eigen_decreasing = decreasing_to_floor(&er, NOISE_FLOOR);
    let quadrature_decreasing = decreasing_to_floor(&qr, NOISE_FLOOR);
    let finest = er.last().copied().unwrap_or(f64::INFINITY);
    let pass = eigen_decreasing && quadrature_decreasing && finest <= tol;
    let sci = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ");
    let summary = format!(
        "cv-check: eigen residuals [{}], quadrature residuals [{}]",
        sci(&er),
        sci(&qr)
    );
    Ok(Outcome {
        body: json(&CvReport {
            tol,
            eigen,
            eigen_decreasing,
            quadrature,
            quadrature_decreasing,
            pass,
        })?,
        summary,
        pass,
    })
}
