//! Coupled map dynamics driven by the Laplace operators.
//!
//! A state assigns a value in `[0, 1]` to every vertex. One step applies a
//! scalar map `f` (tent or logistic, [`ScalarMap`]) to every coordinate and
//! then mixes through the coupling operator `C = I - eps * O`
//! ([`CouplingOperator`]), where `O` is a walk Laplacian or a signed
//! Laplacian: `x <- C f(x)`.
//!
//! Whether the unit box survives this depends entirely on `C`.  For a walk
//! Laplacian and `eps` in `[0, 1]`, `C` is row-stochastic and nonnegative,
//! every coordinate of `C y` is a convex combination, and the box is
//! invariant. Outside that regime — `eps` beyond `[0, 1]`, or a signed
//! operator whose positive off-diagonal entries make `C` carry negative
//! entries at any `eps > 0` — the box leaks, and [`invariance_report`]
//! produces the exact attainable interval per coordinate along with a
//! concrete escaping state. [`ensemble_run`] watches the same phenomenon
//! statistically: seeded random ensembles binned into per-time, per-vertex
//! histograms.
//!
//! On the sub-box `[0, 1/4]^N` the tent map is linear, so stepping and
//! mixing commute there: `(C f)^2 = C^2 f^2`. [`commutativity_check`]
//! verifies this numerically through four independently computed routes.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chemical::ChemicalLaplacian;
use crate::error::{Error, Result};
use crate::walk::RwLaplacian;

/// Which scalar family a [`ScalarMap`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    /// `x -> (mu/2) * min(x, 1 - x)`.
    Tent,
    /// `x -> mu * x * (1 - x)`.
    Logistic,
}

/// How map evaluation treats points outside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    /// Evaluating outside `[0, 1]` is an error ([`Error::DomainViolation`]).
    Strict,
    /// The defining formula is evaluated on all of the real line, so
    /// escaped trajectories can keep running and be observed.
    Extended,
}

/// A tent or logistic map with parameter `mu` in `(0, 4]`, the range on
/// which `[0, 1]` maps into itself (the image is exactly `[0, mu/4]`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarMap {
    kind: MapKind,
    mu: f64,
}

impl ScalarMap {
    fn new(kind: MapKind, mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 || mu > 4.0 {
            return Err(Error::InvalidParameter {
                name: "mu",
                message: format!("mu must lie in (0, 4], got {mu}"),
            });
        }
        Ok(ScalarMap { kind, mu })
    }

    /// The tent map `(mu/2) * min(x, 1 - x)`.
    pub fn tent(mu: f64) -> Result<Self> {
        Self::new(MapKind::Tent, mu)
    }

    /// The logistic map `mu * x * (1 - x)`.
    pub fn logistic(mu: f64) -> Result<Self> {
        Self::new(MapKind::Logistic, mu)
    }

    /// The family tag.
    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// The parameter.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Largest value attained on `[0, 1]`, namely `mu / 4` at `x = 1/2`.
    pub fn max_value(&self) -> f64 {
        self.mu / 4.0
    }

    /// Evaluate at `x` under the given mode.
    pub fn apply(&self, x: f64, mode: EvalMode) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        if mode == EvalMode::Strict && !(0.0..=1.0).contains(&x) {
            return Err(Error::DomainViolation { value: x });
        }
        Ok(match self.kind {
            MapKind::Tent => 0.5 * self.mu * x.min(1.0 - x),
            MapKind::Logistic => self.mu * x * (1.0 - x),
        })
    }
}

/// What kind of operator a coupling was built from; informational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingKind {
    RandomWalk,
    Chemical,
    Custom,
}

/// The linear mixing step `C = I - eps * O`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingOperator {
    names: Vec<String>,
    eps: f64,
    matrix: DMatrix<f64>,
    kind: CouplingKind,
}

impl CouplingOperator {
    fn build(
        names: Vec<String>,
        operator: &DMatrix<f64>,
        eps: f64,
        kind: CouplingKind,
    ) -> Result<Self> {
        let n = names.len();
        if operator.nrows() != n || operator.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: operator.nrows().max(operator.ncols()),
            });
        }
        if !eps.is_finite() {
            return Err(Error::InvalidParameter {
                name: "eps",
                message: format!("coupling strength must be finite, got {eps}"),
            });
        }
        if operator.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - eps * operator[(i, j)]
        });
        Ok(CouplingOperator {
            names,
            eps,
            matrix,
            kind,
        })
    }

    /// Couple through a walk Laplacian.
    pub fn from_rw(l: &RwLaplacian, eps: f64) -> Result<Self> {
        Self::build(
            l.vertex_names().to_vec(),
            &l.to_f64(),
            eps,
            CouplingKind::RandomWalk,
        )
    }

    /// Couple through a signed Laplacian.
    pub fn from_chemical(c: &ChemicalLaplacian, eps: f64) -> Result<Self> {
        Self::build(
            c.vertex_names().to_vec(),
            &c.to_f64(),
            eps,
            CouplingKind::Chemical,
        )
    }

    /// Couple through an arbitrary operator matrix.
    pub fn from_matrix(names: Vec<String>, operator: &DMatrix<f64>, eps: f64) -> Result<Self> {
        Self::build(names, operator, eps, CouplingKind::Custom)
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// The coupling strength `eps`.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// What the operator was built from.
    pub fn kind(&self) -> CouplingKind {
        self.kind
    }

    /// The assembled matrix `C = I - eps * O`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Apply `C` to a state.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.names.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[(i, j)] * x[j]).sum())
            .collect()
    }
}

/// One dynamics step `x <- C f(x)`.
pub fn chm_step(
    coupling: &CouplingOperator,
    map: &ScalarMap,
    x: &[f64],
    mode: EvalMode,
) -> Result<Vec<f64>> {
    let n = coupling.vertex_count();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    let mut y = Vec::with_capacity(n);
    for &xi in x {
        y.push(map.apply(xi, mode)?);
    }
    let out = coupling.apply(&y);
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(out)
}

/// A state that demonstrably leaves the unit box in one step.
#[derive(Debug, Clone, Serialize)]
pub struct EscapeWitness {
    /// Coordinate that escapes.
    pub coordinate: usize,
    /// The starting state inside `[0, 1]^N` (entries `0` and `1/2`).
    pub state: Vec<f64>,
    /// The full image `C f(state)`.
    pub image: Vec<f64>,
    /// The escaping coordinate's value.
    pub value: f64,
    /// Escapes below `0` (otherwise above `1`).
    pub below: bool,
}

/// Outcome of [`invariance_report`].
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub eps: f64,
    /// Largest value the scalar map attains on `[0, 1]` (`mu / 4`).
    pub map_max: f64,
    /// `C` is nonnegative with unit row sums — the convexity regime in
    /// which invariance is automatic.
    pub row_stochastic: bool,
    /// The unit box maps into itself under `C f`.
    pub invariant: bool,
    /// Exact attainable interval of each coordinate of `C f(x)` over the
    /// unit box.
    pub coordinate_ranges: Vec<(f64, f64)>,
    /// A concrete escaping state when not invariant.
    pub witness: Option<EscapeWitness>,
}

/// Decide — exactly, not by sampling — whether `[0, 1]^N` is invariant
/// under one step, and exhibit an escaping state when it is not.
///
/// Over the unit box the map image of each coordinate fills `[0, mu/4]`
/// independently, so coordinate `i` of `C f(x)` attains exactly
/// `[neg_i * mu/4, pos_i * mu/4]`, where `neg_i`/`pos_i` sum the
/// negative/positive entries of row `i` of `C`. The witness realizes the
/// violated end of that interval with a state of entries `0` and `1/2`.
pub fn invariance_report(coupling: &CouplingOperator, map: &ScalarMap) -> InvarianceReport {
    let n = coupling.vertex_count();
    let c = coupling.matrix();
    let hi = map.max_value();
    let tol = 1e-12;

    let mut row_stochastic = true;
    let mut coordinate_ranges = Vec::with_capacity(n);
    let mut violation: Option<(usize, bool)> = None;
    for i in 0..n {
        let mut neg = 0.0;
        let mut pos = 0.0;
        let mut row_sum = 0.0;
        for j in 0..n {
            let w = c[(i, j)];
            row_sum += w;
            if w < 0.0 {
                neg += w;
            } else {
                pos += w;
            }
        }
        if neg < -tol || (row_sum - 1.0).abs() > tol {
            row_stochastic = false;
        }
        let lo_i = neg * hi;
        let hi_i = pos * hi;
        if violation.is_none() {
            if lo_i < -tol {
                violation = Some((i, true));
            } else if hi_i > 1.0 + tol {
                violation = Some((i, false));
            }
        }
        coordinate_ranges.push((lo_i, hi_i));
    }

    let witness = violation.map(|(i, below)| {
        // f(1/2) = mu/4 and f(0) = 0 for both families, so a {0, 1/2}
        // state realizes the extreme of coordinate i

        let state: Vec<f64> = (0..n)
            .map(|j| {
                let pick = if below { c[(i, j)] < 0.0 } else { c[(i, j)] > 0.0 };
                if pick {
                    0.5
                } else {
                    0.0
                }
            })
            .collect();
        let mapped: Vec<f64> = state
            .iter()
            .map(|&x| map.apply(x, EvalMode::Extended).expect("finite input"))
            .collect();
        let image = coupling.apply(&mapped);
        EscapeWitness {
            coordinate: i,
            value: image[i],
            state,
            image,
            below,
        }
    });

    InvarianceReport {
        eps: coupling.eps(),
        map_max: hi,
        row_stochastic,
        invariant: witness.is_none(),
        coordinate_ranges,
        witness,
    }
}

/// Outcome of [`commutativity_check`].
#[derive(Debug, Clone, Serialize)]
pub struct CommutativityReport {
    pub mu: f64,
    pub eps: f64,
    /// Sampled states in `[0, 1/4]^N`.
    pub samples: usize,
    /// Largest pairwise deviation across the four evaluation routes.
    pub max_deviation: f64,
    /// Deviation stayed below `1e-12`.
    pub ok: bool,
}

/// Verify that stepping and mixing commute on `[0, 1/4]^N` for the tent
/// family: `(C f)^2 = C^2 f^2` there, because the tent map is linear below
/// `1/2` and `C` is linear everywhere.
///
/// Four routes are compared on seeded random states: the two dynamic
/// compositions, and their common closed form `(mu^2 / 4) C^2 x` computed
/// two independent ways (nested scalar loops and the squared matrix). The
/// identity needs intermediate values to stay in the tent map's linear
/// region; couplings that throw states beyond `1/2` — strong signed
/// couplings, for instance — genuinely break it, and the report says so.
pub fn commutativity_check(
    coupling: &CouplingOperator,
    map: &ScalarMap,
    samples: usize,
    seed: u64,
) -> Result<CommutativityReport> {
    if map.kind() != MapKind::Tent {
        return Err(Error::InvalidParameter {
            name: "map",
            message: "the commutativity identity is a tent-family statement; \
                      the logistic map is not linear on [0, 1/4]"
                .into(),
        });
    }
    let n = coupling.vertex_count();
    let c = coupling.matrix();
    let half_mu = 0.5 * map.mu();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation = 0.0_f64;

    let csq = c * c;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..0.25)).collect();

        // route 1: step twice
        let step1 = chm_step(coupling, map, &x, EvalMode::Extended)?;
        let route_step = chm_step(coupling, map, &step1, EvalMode::Extended)?;

        // route 2: map twice, then mix twice
        let ffx: Vec<f64> = x
            .iter()
            .map(|&v| map.apply(map.apply(v, EvalMode::Extended)?, EvalMode::Extended))
            .collect::<Result<_>>()?;
        let route_mix = coupling.apply(&coupling.apply(&ffx));

        // route 3: nested scalar loops of (mu/2) C (mu/2) C x
        let inner: Vec<f64> = (0..n)
            .map(|i| half_mu * (0..n).map(|j| c[(i, j)] * x[j]).sum::<f64>())
            .collect();
        let route_nested: Vec<f64> = (0..n)
            .map(|i| half_mu * (0..n).map(|j| c[(i, j)] * inner[j]).sum::<f64>())
            .collect();

        // route 4: closed form (mu^2/4) C^2 x
        let route_closed: Vec<f64> = (0..n)
            .map(|i| {
                half_mu * half_mu * (0..n).map(|j| csq[(i, j)] * x[j]).sum::<f64>()
            })
            .collect();

        let routes = [&route_step, &route_mix, &route_nested, &route_closed];
        for (a, first) in routes.iter().enumerate() {
            for second in &routes[a + 1..] {
                for (x, y) in first.iter().zip(second.iter()) {
                    max_deviation = max_deviation.max((x - y).abs());
                }
            }
        }
    }

    Ok(CommutativityReport {
        mu: map.mu(),
        eps: coupling.eps(),
        samples,
        max_deviation,
        ok: max_deviation <= 1e-12,
    })
}

/// Parameters of an [`ensemble_run`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnsembleSpec {
    /// Number of independent initial states, drawn uniformly in `[0, 1)^N`.
    pub states: usize,
    /// Steps to run each state.
    pub steps: usize,
    /// Histogram bins per (time, vertex) pair.
    pub bins: usize,
    /// Seed; state `m` uses stream `m`.
    pub seed: u64,
    /// Evaluation mode; use [`EvalMode::Extended`] to observe escapes.
    pub mode: EvalMode,
}

/// Histogram of one (time, vertex) pair across the ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeHistogram {
    /// Bin range, always covering at least `[0, 1]`.
    pub lo: f64,
    pub hi: f64,
    /// Smallest and largest value observed.
    pub min: f64,
    pub max: f64,
    /// Counts per bin; sums to the ensemble size.
    pub counts: Vec<u64>,
}

/// Outcome of [`ensemble_run`]: `histograms[t][v]` describes vertex `v`
/// at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramSeries {
    pub states: usize,
    pub steps: usize,
    pub bins: usize,
    /// Some value left `[0, 1]` at some time.
    pub domain_escaped: bool,
    pub histograms: Vec<Vec<NodeHistogram>>,
}

#[derive(Clone)]
struct Extremes {
    min: Vec<f64>,
    max: Vec<f64>,
    escaped: bool,
}

impl Extremes {
    fn new(len: usize) -> Self {
        Extremes {
            min: vec![f64::MAX; len],
            max: vec![f64::MIN; len],
            escaped: false,
        }
    }

    fn merge(mut self, other: Extremes) -> Self {
        for (a, b) in self.min.iter_mut().zip(other.min) {
            *a = a.min(b);
        }
        for (a, b) in self.max.iter_mut().zip(other.max) {
            *a = a.max(b);
        }
        self.escaped |= other.escaped;
        self
    }
}

fn run_trajectory(
    coupling: &CouplingOperator,
    map: &ScalarMap,
    spec: &EnsembleSpec,
    index: usize,
    mut visit: impl FnMut(usize, &[f64]),
) -> Result<()> {
    let n = coupling.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    visit(0, &x);
    for t in 1..=spec.steps {
        x = chm_step(coupling, map, &x, spec.mode)?;
        visit(t, &x);
    }
    Ok(())
}

/// Run a seeded ensemble and histogram every (time, vertex) pair.
///
/// Two deterministic passes: the first finds each pair's observed extremes
/// (and whether anything left the unit box), the second re-runs the same
/// trajectories — same seed, same streams — and bins them into ranges
/// expanded to cover at least `[0, 1]`. Trajectories run in parallel;
/// results are independent of thread count.
pub fn ensemble_run(
    coupling: &CouplingOperator,
    map: &ScalarMap,
    spec: &EnsembleSpec,
) -> Result<HistogramSeries> {
    let n = coupling.vertex_count();
    if spec.states == 0 || spec.bins == 0 {
        return Err(Error::InvalidParameter {
            name: "ensemble",
            message: "states and bins must be positive".into(),
        });
    }
    let slots = (spec.steps + 1) * n;

    // pass 1: extremes
    let extremes = (0..spec.states)
        .into_par_iter()
        .try_fold(
            || Extremes::new(slots),
            |mut acc, m| -> Result<Extremes> {
                run_trajectory(coupling, map, spec, m, |t, x| {
                    for (v, &val) in x.iter().enumerate() {
                        let k = t * n + v;
                        acc.min[k] = acc.min[k].min(val);
                        acc.max[k] = acc.max[k].max(val);
                        if !(0.0..=1.0).contains(&val) {
                            acc.escaped = true;
                        }
                    }
                })?;
                Ok(acc)
            },
        )
        .try_reduce(|| Extremes::new(slots), |a, b| Ok(a.merge(b)));
    let extremes = extremes?;

    let lo: Vec<f64> = extremes.min.iter().map(|&m| m.min(0.0)).collect();
    let hi: Vec<f64> = extremes.max.iter().map(|&m| m.max(1.0)).collect();

    // pass 2: identical trajectories, now binned
    let counts = (0..spec.states)
        .into_par_iter()
        .try_fold(
            || vec![0u64; slots * spec.bins],
            |mut acc, m| -> Result<Vec<u64>> {
                run_trajectory(coupling, map, spec, m, |t, x| {
                    for (v, &val) in x.iter().enumerate() {
                        let k = t * n + v;
                        let width = hi[k] - lo[k];
                        let mut bin = ((val - lo[k]) / width * spec.bins as f64) as usize;
                        if bin >= spec.bins {
                            bin = spec.bins - 1;
                        }
                        acc[k * spec.bins + bin] += 1;
                    }
                })?;
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u64; slots * spec.bins],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )?;

    let histograms = (0..=spec.steps)
        .map(|t| {
            (0..n)
                .map(|v| {
                    let k = t * n + v;
                    NodeHistogram {
                        lo: lo[k],
                        hi: hi[k],
                        min: extremes.min[k],
                        max: extremes.max[k],
                        counts: counts[k * spec.bins..(k + 1) * spec.bins].to_vec(),
                    }
                })
                .collect()
        })
        .collect();

    Ok(HistogramSeries {
        states: spec.states,
        steps: spec.steps,
        bins: spec.bins,
        domain_escaped: extremes.escaped,
        histograms,
    })
}
