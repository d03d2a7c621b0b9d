//! Seeded stochastic simulation of the walks and their distribution flow.
//!
//! Everything here is driven by a row-stochastic kernel in floating point
//! (usually [`crate::walk::WalkFactorization::kernel_f64`]) and a `u64`
//! seed. Single steps are drawn with the alias method ([`AliasTable`]), so
//! a step costs O(1) regardless of degree. Parallel runs give every walker
//! its own counter-mode stream of the same seeded generator, which makes
//! results independent of thread scheduling: the same seed always yields
//! the same report, bit for bit.
//!
//! Two deterministic companions are included: [`evolve_distribution`]
//! pushes a distribution (or pulls back a function) through the kernel
//! exactly, and [`absorbing_walk`] estimates hitting statistics that the
//! Dirichlet solver of [`crate::harmonic`] computes analytically — each is
//! a check on the other.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on steps per walker in [`absorbing_walk`]; a walker exceeding
/// it reports [`Error::AbsorptionTimeout`].
pub const DEFAULT_ABSORPTION_CAP: u64 = 10_000_000;

/// Alias-method sampler over `0..n` (Vose's construction): O(n) to build,
/// O(1) per draw, two uniform variates each.
#[derive(Debug, Clone)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    /// Build from nonnegative weights (not necessarily normalized).
    pub fn new(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "weights",
                message: "alias table needs at least one weight".into(),
            });
        }
        let mut sum = 0.0;
        for &w in weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "weights",
                    message: format!("weights must be finite and nonnegative, got {w}"),
                });
            }
            sum += w;
        }
        if sum <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "weights",
                message: "weights sum to zero".into(),
            });
        }
        let mut scaled: Vec<f64> = weights.iter().map(|&w| w * n as f64 / sum).collect();
        let mut prob = vec![1.0; n];
        let mut alias: Vec<usize> = (0..n).collect();
        let mut small: Vec<usize> = Vec::with_capacity(n);
        let mut large: Vec<usize> = Vec::with_capacity(n);
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(s), Some(l)) = (small.pop(), large.pop()) {
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] += scaled[s] - 1.0;
            if scaled[l] < 1.0 {
                small.push(l);
            } else {
                large.push(l);
            }
        }
        // leftovers are 1 up to roundoff
        Ok(AliasTable { prob, alias })
    }

    /// Draw one index.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let i = rng.random_range(0..self.prob.len());
        if rng.random::<f64>() < self.prob[i] {
            i
        } else {
            self.alias[i]
        }
    }
}

/// A walk stepper: one alias table per kernel row.
#[derive(Debug, Clone)]
pub struct WalkSimulator {
    rows: Vec<AliasTable>,
}

impl WalkSimulator {
    /// Build from a square kernel with nonnegative rows of positive sum.
    /// Rows are normalized, so exact stochasticity is not required here —
    /// the factorization types enforce it upstream.
    pub fn new(kernel: &DMatrix<f64>) -> Result<Self> {
        let n = kernel.nrows();
        if kernel.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: kernel.ncols(),
            });
        }
        let rows = (0..n)
            .map(|i| {
                let row: Vec<f64> = (0..n).map(|j| kernel[(i, j)]).collect();
                AliasTable::new(&row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WalkSimulator { rows })
    }

    /// Number of states.
    pub fn state_count(&self) -> usize {
        self.rows.len()
    }

    /// Draw the successor of `state`.
    pub fn step<R: Rng + ?Sized>(&self, state: usize, rng: &mut R) -> usize {
        self.rows[state].sample(rng)
    }

    fn check_state(&self, state: usize, what: &'static str) -> Result<()> {
        if state >= self.rows.len() {
            return Err(Error::InvalidParameter {
                name: what,
                message: format!(
                    "state {state} out of range (n = {})",
                    self.rows.len()
                ),
            });
        }
        Ok(())
    }
}

/// One sampled walk: `positions[0]` is the start, one entry per step after.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkTrajectory {
    pub positions: Vec<usize>,
}

/// Walker `w` of a run uses the seed's stream `w`, so trajectories do not
/// depend on how many walkers run beside them.
fn walker_rng(seed: u64, walker: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walker);
    rng
}

/// Sample a single trajectory (stream 0 of `seed`).
pub fn simulate_walk(
    sim: &WalkSimulator,
    start: usize,
    steps: usize,
    seed: u64,
) -> Result<WalkTrajectory> {
    sim.check_state(start, "start")?;
    let mut rng = walker_rng(seed, 0);
    let mut positions = Vec::with_capacity(steps + 1);
    positions.push(start);
    let mut state = start;
    for _ in 0..steps {
        state = sim.step(state, &mut rng);
        positions.push(state);
    }
    Ok(WalkTrajectory { positions })
}

/// Sample `walkers` independent trajectories in parallel, walker `w` on
/// stream `w`. The result is identical to `walkers` sequential calls and
/// does not depend on thread count.
pub fn simulate_walks(
    sim: &WalkSimulator,
    start: usize,
    steps: usize,
    walkers: usize,
    seed: u64,
) -> Result<Vec<WalkTrajectory>> {
    sim.check_state(start, "start")?;
    Ok((0..walkers)
        .into_par_iter()
        .map(|w| {
            let mut rng = walker_rng(seed, w as u64);
            let mut positions = Vec::with_capacity(steps + 1);
            positions.push(start);
            let mut state = start;
            for _ in 0..steps {
                state = sim.step(state, &mut rng);
                positions.push(state);
            }
            WalkTrajectory { positions }
        })
        .collect())
}

/// Transition counts of one long trajectory, as estimates of the kernel.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalKernel {
    /// Total steps taken.
    pub steps: usize,
    /// Departures observed from each state.
    pub visits: Vec<u64>,
    /// `counts[i][j]`: observed `i -> j` transitions.
    pub counts: Vec<Vec<u64>>,
    /// Row-normalized counts; zero where a state was never left.
    pub p_hat: Vec<Vec<f64>>,
    /// Binomial standard error `sqrt(p_hat (1 - p_hat) / visits)`.
    pub std_err: Vec<Vec<f64>>,
}

/// Walk `steps` steps from `start` (stream 0 of `seed`) and tally the
/// transition frequencies out of every state.
pub fn empirical_kernel(
    sim: &WalkSimulator,
    start: usize,
    steps: usize,
    seed: u64,
) -> Result<EmpiricalKernel> {
    sim.check_state(start, "start")?;
    let n = sim.state_count();
    let mut counts = vec![vec![0u64; n]; n];
    let mut visits = vec![0u64; n];
    let mut rng = walker_rng(seed, 0);
    let mut state = start;
    for _ in 0..steps {
        let next = sim.step(state, &mut rng);
        counts[state][next] += 1;
        visits[state] += 1;
        state = next;
    }
    let mut p_hat = vec![vec![0.0; n]; n];
    let mut std_err = vec![vec![0.0; n]; n];
    for i in 0..n {
        if visits[i] == 0 {
            continue;
        }
        let m = visits[i] as f64;
        for j in 0..n {
            let p = counts[i][j] as f64 / m;
            p_hat[i][j] = p;
            std_err[i][j] = (p * (1.0 - p) / m).sqrt();
        }
    }
    Ok(EmpiricalKernel {
        steps,
        visits,
        counts,
        p_hat,
        std_err,
    })
}

/// Which side of the kernel [`evolve_distribution`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvolveMode {
    /// Push a distribution forward: `p <- P^T p`, i.e.
    /// `p'(j) = sum_i p(i) P(i, j)`. Conserves total mass.
    Forward,
    /// Pull a function back: `f <- P f`, the expected value of `f` one
    /// step ahead. Conserves constants, but not sums in general.
    Backward,
}

/// The evolved vectors, one per time `0..=steps`.
#[derive(Debug, Clone, Serialize)]
pub struct OccupationSeries {
    pub mode: EvolveMode,
    /// `states[t]` is the vector after `t` steps; `states[0]` is the input.
    pub states: Vec<Vec<f64>>,
}

impl OccupationSeries {
    /// The final vector.
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("series always holds the input")
    }
}

/// Evolve a vector through the kernel for `steps` steps.
///
/// In [`EvolveMode::Forward`] the input must be a probability distribution
/// (nonnegative, summing to one within `1e-9`); it is *not* renormalized
/// along the way, so mass conservation is a property being exhibited, not
/// enforced. In [`EvolveMode::Backward`] any finite vector is accepted.
pub fn evolve_distribution(
    kernel: &DMatrix<f64>,
    initial: &[f64],
    steps: usize,
    mode: EvolveMode,
) -> Result<OccupationSeries> {
    let n = kernel.nrows();
    if kernel.ncols() != n || initial.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: initial.len().min(kernel.ncols()),
        });
    }
    if initial.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    if mode == EvolveMode::Forward {
        if let Some(&bad) = initial.iter().find(|&&x| x < 0.0) {
            return Err(Error::InvalidParameter {
                name: "initial",
                message: format!("distributions must be nonnegative, got {bad}"),
            });
        }
        let total: f64 = initial.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter {
                name: "initial",
                message: format!("distribution sums to {total}, expected 1"),
            });
        }
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push(initial.to_vec());
    let mut current = initial.to_vec();
    for _ in 0..steps {
        let next: Vec<f64> = match mode {
            EvolveMode::Forward => (0..n)
                .map(|j| (0..n).map(|i| current[i] * kernel[(i, j)]).sum())
                .collect(),
            EvolveMode::Backward => (0..n)
                .map(|i| (0..n).map(|j| kernel[(i, j)] * current[j]).sum())
                .collect(),
        };
        if next.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        states.push(next.clone());
        current = next;
    }
    Ok(OccupationSeries { mode, states })
}

/// Hitting statistics of walkers absorbed at a boundary.
#[derive(Debug, Clone, Serialize)]
pub struct AbsorptionReport {
    /// Boundary vertices, in the order given.
    pub boundary: Vec<usize>,
    /// Walkers absorbed at each boundary vertex.
    pub counts: Vec<u64>,
    /// `counts / walkers` — the estimated hitting probabilities.
    pub frequency: Vec<f64>,
    /// Binomial standard error of each frequency.
    pub std_err: Vec<f64>,
    /// Total walkers run.
    pub walkers: usize,
    /// Average steps until absorption.
    pub mean_steps: f64,
}

/// Run `walkers` independent walkers from `start` until each hits a
/// boundary vertex, in parallel (walker `w` on stream `w` of `seed`).
///
/// The frequency of absorption at boundary vertex `b` estimates the
/// harmonic function that [`crate::harmonic::solve_dirichlet`] computes
/// for boundary data `1` at `b` and `0` elsewhere. A walker that takes
/// more than `cap` steps aborts the run with
/// [`Error::AbsorptionTimeout`].
pub fn absorbing_walk(
    sim: &WalkSimulator,
    start: usize,
    boundary: &[usize],
    walkers: usize,
    seed: u64,
    cap: u64,
) -> Result<AbsorptionReport> {
    let n = sim.state_count();
    sim.check_state(start, "start")?;
    if boundary.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let mut mask = vec![false; n];
    for &b in boundary {
        if b >= n {
            return Err(Error::InvalidParameter {
                name: "boundary",
                message: format!("vertex index {b} out of range (n = {n})"),
            });
        }
        if mask[b] {
            return Err(Error::InvalidParameter {
                name: "boundary",
                message: format!("vertex index {b} listed twice"),
            });
        }
        mask[b] = true;
    }
    if mask[start] {
        return Err(Error::InvalidParameter {
            name: "start",
            message: "start vertex lies on the boundary".into(),
        });
    }
    if cap == 0 {
        return Err(Error::InvalidParameter {
            name: "cap",
            message: "step cap must be positive".into(),
        });
    }

    let outcomes: Vec<(usize, u64)> = (0..walkers)
        .into_par_iter()
        .map(|w| -> Result<(usize, u64)> {
            let mut rng = walker_rng(seed, w as u64);
            let mut state = start;
            let mut taken = 0u64;
            loop {
                state = sim.step(state, &mut rng);
                taken += 1;
                if mask[state] {
                    return Ok((state, taken));
                }
                if taken >= cap {
                    return Err(Error::AbsorptionTimeout { cap });
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let slot: std::collections::HashMap<usize, usize> = boundary
        .iter()
        .enumerate()
        .map(|(k, &b)| (b, k))
        .collect();
    let mut counts = vec![0u64; boundary.len()];
    let mut total_steps = 0u64;
    for (b, steps) in &outcomes {
        counts[slot[b]] += 1;
        total_steps += steps;
    }
    let frequency: Vec<f64> = counts.iter().map(|&c| c as f64 / walkers as f64).collect();
    let std_err: Vec<f64> = frequency
        .iter()
        .map(|&f| (f * (1.0 - f) / walkers as f64).sqrt())
        .collect();
    Ok(AbsorptionReport {
        boundary: boundary.to_vec(),
        counts,
        frequency,
        std_err,
        walkers,
        mean_steps: total_steps as f64 / walkers as f64,
    })
}
