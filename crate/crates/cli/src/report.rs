//! Output rendering: JSON reports with a stable shape, and CSV for
//! trajectory and histogram data.
//!
//! Determinism contract: identical (config, seed) must produce identical
//! bytes. Struct fields serialize in declaration order, floats print as
//! shortest round-trip decimals (both serde_json and `Display` do this),
//! and nothing here depends on thread count or hash order.

use hyperlap::chm::{CommutativityReport, HistogramSeries, InvarianceReport};
use hyperlap::harmonic::DirichletSolution;
use hyperlap::ratio::format_rat;
use hyperlap::spectral::Certificate;
use hyperlap::stochastic::{AbsorptionReport, EmpiricalKernel, WalkTrajectory};
use hyperlap::{Rat, Spectrum};
use nalgebra::DMatrix;
use serde::Serialize;

/// A matrix or vector entry: exact rational (as text), exact integer, or
/// floating point.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
    Float(f64),
}

/// Exact matrix entry: always rational text, `"3/2"`, `"0"`, `"-1"`.
fn exact_entry(r: Rat) -> Scalar {
    Scalar::Text(format_rat(r))
}

/// Exact degree/weight entry: a plain JSON number when integral.
fn exact_weight(r: Rat) -> Scalar {
    if *r.denom() == 1 {
        Scalar::Int(*r.numer())
    } else {
        Scalar::Text(format_rat(r))
    }
}

pub fn exact_weights(v: &[Rat]) -> Vec<Scalar> {
    v.iter().map(|&r| exact_weight(r)).collect()
}

pub fn float_weights(v: &[f64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::Float(x)).collect()
}

pub fn exact_matrix(m: &DMatrix<Rat>) -> Vec<Vec<Scalar>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| exact_entry(m[(i, j)])).collect())
        .collect()
}

pub fn float_matrix(m: &DMatrix<f64>) -> Vec<Vec<Scalar>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| Scalar::Float(m[(i, j)])).collect())
        .collect()
}

/// `laplacian`: the factorization and assembled operator.
#[derive(Serialize)]
pub struct OperatorReport {
    pub input: String,
    pub variant: String,
    pub vertices: Vec<String>,
    pub exact: bool,
    /// Degree/weight vector: `D` for walks, `t` or `d` for the signed kinds.
    pub degrees: Vec<Scalar>,
    /// Affinity matrix `A` for walks, signed adjacency for the signed kinds.
    pub affinity: Vec<Vec<Scalar>>,
    pub laplacian: Vec<Vec<Scalar>>,
    /// The affinity matrix is symmetric (reversible walk / always for the
    /// signed kinds).
    pub symmetric: bool,
}

/// `effective-graph`: the weighted graph whose walk is the hypergraph walk.
#[derive(Serialize)]
pub struct EffectiveGraphReport {
    pub input: String,
    pub variant: String,
    pub vertices: Vec<String>,
    pub exact: bool,
    pub degrees: Vec<Scalar>,
    pub weights: Vec<Vec<Scalar>>,
    pub symmetric: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Eigenvalues {
    Real(Vec<f64>),
    /// `[re, im]` pairs when the operator is not symmetrizable.
    Complex(Vec<[f64; 2]>),
}

/// `spectrum`: eigenvalues under the variant's weighted inner product.
#[derive(Serialize)]
pub struct SpectrumReport {
    pub input: String,
    pub variant: String,
    pub vertices: Vec<String>,
    /// Inner-product weights used for symmetrization.
    pub weights: Vec<f64>,
    /// Certified real (self-adjoint route) vs complex fallback.
    pub real: bool,
    pub eigenvalues: Eigenvalues,
}

impl SpectrumReport {
    pub fn eigenvalues_of(spectrum: &Spectrum) -> (bool, Eigenvalues) {
        match spectrum.real() {
            Some((vals, _)) => (true, Eigenvalues::Real(vals.to_vec())),
            None => (
                false,
                Eigenvalues::Complex(
                    spectrum
                        .eigenvalue_pairs()
                        .into_iter()
                        .map(|(re, im)| [re, im])
                        .collect(),
                ),
            ),
        }
    }
}

/// `certify`: the spectral-interval certificate.
#[derive(Serialize)]
pub struct CertifyReport {
    pub input: String,
    pub variant: String,
    pub vertices: Vec<String>,
    pub certificate: Certificate,
}

/// `walk` (trajectory mode): sampled paths as vertex names.
#[derive(Serialize)]
pub struct WalkReport {
    pub input: String,
    pub variant: String,
    pub start: String,
    pub steps: usize,
    pub walkers: usize,
    pub seed: u64,
    pub trajectories: Vec<Vec<String>>,
}

/// `walk --empirical`: transition-count estimate of the kernel.
#[derive(Serialize)]
pub struct EmpiricalReport {
    pub input: String,
    pub variant: String,
    pub start: String,
    pub seed: u64,
    pub kernel: EmpiricalKernel,
}

/// `walk --absorb`: hitting statistics.
#[derive(Serialize)]
pub struct AbsorptionCliReport {
    pub input: String,
    pub variant: String,
    pub start: String,
    pub boundary: Vec<String>,
    pub seed: u64,
    pub cap: u64,
    pub report: AbsorptionReport,
}

/// `evolve`: the evolved distribution / observable series.
#[derive(Serialize)]
pub struct EvolveReport {
    pub input: String,
    pub variant: String,
    pub mode: String,
    pub steps: usize,
    pub vertices: Vec<String>,
    /// `states[t]` after `t` steps; `states[0]` is the input vector.
    pub states: Vec<Vec<f64>>,
}

/// `dirichlet`: boundary data and the solved function.
#[derive(Serialize)]
pub struct DirichletReport {
    pub input: String,
    pub variant: String,
    pub vertices: Vec<String>,
    pub boundary: Vec<(String, f64)>,
    pub solution: DirichletSolution,
}

/// `chm` with `--state`: one orbit.
#[derive(Serialize)]
pub struct OrbitReport {
    pub input: String,
    pub laplacian: String,
    pub map: String,
    pub mu: f64,
    pub eps: f64,
    pub mode: String,
    pub steps: usize,
    pub vertices: Vec<String>,
    pub states: Vec<Vec<f64>>,
}

/// `chm --invariance`.
#[derive(Serialize)]
pub struct InvarianceCliReport {
    pub input: String,
    pub laplacian: String,
    pub map: String,
    pub mu: f64,
    pub eps: f64,
    pub vertices: Vec<String>,
    pub report: InvarianceReport,
}

/// `chm --commutativity`.
#[derive(Serialize)]
pub struct CommutativityCliReport {
    pub input: String,
    pub laplacian: String,
    pub map: String,
    pub mu: f64,
    pub eps: f64,
    pub seed: u64,
    pub report: CommutativityReport,
}

/// `chm --ensemble`.
#[derive(Serialize)]
pub struct EnsembleReport {
    pub input: String,
    pub laplacian: String,
    pub map: String,
    pub mu: f64,
    pub eps: f64,
    pub mode: String,
    pub seed: u64,
    pub vertices: Vec<String>,
    pub series: HistogramSeries,
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// CSV of sampled walks: `walker,step,vertex`.
pub fn trajectories_csv(names: &[String], walks: &[WalkTrajectory]) -> String {
    let mut out = String::from("walker,step,vertex\n");
    for (w, walk) in walks.iter().enumerate() {
        for (t, &v) in walk.positions.iter().enumerate() {
            out.push_str(&format!("{w},{t},{}\n", names[v]));
        }
    }
    out
}

/// CSV of a per-vertex time series: `step,<name>,...`.
pub fn series_csv(names: &[String], states: &[Vec<f64>]) -> String {
    let mut out = String::from("step");
    for name in names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (t, state) in states.iter().enumerate() {
        out.push_str(&format!("{t}"));
        for x in state {
            out.push_str(&format!(",{x}"));
        }
        out.push('\n');
    }
    out
}

/// CSV of ensemble histograms: one row per (time, vertex, bin).
pub fn ensemble_csv(names: &[String], series: &HistogramSeries) -> String {
    let mut out = String::from("step,vertex,min,max,bin,bin_lo,bin_hi,count\n");
    for (t, row) in series.histograms.iter().enumerate() {
        for (v, h) in row.iter().enumerate() {
            let width = (h.hi - h.lo) / series.bins as f64;
            for (b, &count) in h.counts.iter().enumerate() {
                let lo = h.lo + b as f64 * width;
                let hi = if b + 1 == series.bins { h.hi } else { h.lo + (b + 1) as f64 * width };
                out.push_str(&format!(
                    "{t},{},{},{},{b},{lo},{hi},{count}\n",
                    names[v], h.min, h.max
                ));
            }
        }
    }
    out
}
