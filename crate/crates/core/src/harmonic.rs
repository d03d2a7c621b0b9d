//! Harmonic functions, the maximum principle, and Dirichlet problems.
//!
//! The maximum principle belongs to operators of the shape `G - A` with `A`
//! nonnegative (zero diagonal) and `G` the diagonal of row sums of `A` —
//! equivalently: nonpositive off-diagonal entries and zero row sums. Every
//! walk Laplacian lands in this class; the signed operators of
//! [`crate::chemical`] generally do not, and they really can carry
//! non-constant harmonic functions, so class membership is checked, never
//! assumed.
//!
//! [`check_maximum_principle`] diagnoses an arbitrary matrix against a
//! candidate function: is the matrix in the class, is the function
//! harmonic, and does the principle's conclusion (harmonic and connected
//! implies constant) hold. [`solve_dirichlet`] solves the boundary-value
//! problem for in-class operators and refuses anything else, because
//! outside the class the solution loses its meaning as a hitting
//! probability and need not respect the boundary bounds.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ratio::to_f64;
use crate::walk::RwLaplacian;

/// Tolerance for the structural class test (off-diagonal signs, row sums)
/// and the harmonicity residual.
const CLASS_TOL: f64 = 1e-9;

/// An operator `diag(g) - a` known to be in the maximum-principle class.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralLaplacian {
    names: Vec<String>,
    g: Vec<f64>,
    a: DMatrix<f64>,
}

impl GeneralLaplacian {
    /// Build from a nonnegative affinity matrix with zero diagonal; the
    /// diagonal `g` is its row sums, so the operator has zero row sums by
    /// construction. Rows must not vanish entirely.
    pub fn new(names: Vec<String>, a: DMatrix<f64>) -> Result<Self> {
        let n = names.len();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: a.nrows().max(a.ncols()),
            });
        }
        let mut g = vec![0.0; n];
        for i in 0..n {
            if a[(i, i)] != 0.0 {
                return Err(Error::InvalidParameter {
                    name: "affinity",
                    message: format!("nonzero diagonal entry at {:?}", names[i]),
                });
            }
            for j in 0..n {
                let w = a[(i, j)];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "affinity",
                        message: format!(
                            "entry ({:?}, {:?}) must be finite and nonnegative, got {w}",
                            names[i], names[j]
                        ),
                    });
                }
                g[i] += w;
            }
            if g[i] == 0.0 {
                return Err(Error::IsolatedVertex {
                    vertex: names[i].clone(),
                });
            }
        }
        Ok(GeneralLaplacian { names, g, a })
    }

    /// Every walk Laplacian is in the class: `g = 1`, `a` the kernel.
    pub fn from_rw(l: &RwLaplacian) -> Self {
        let f = l.factorization();
        GeneralLaplacian {
            names: f.vertex_names().to_vec(),
            g: vec![1.0; f.vertex_count()],
            a: f.kernel_f64(),
        }
    }

    /// The unnormalized graph Laplacian `D - W` of a weighted graph.
    pub fn unnormalized(graph: &WeightedGraph) -> Self {
        let n = graph.vertex_count();
        let a = DMatrix::from_fn(n, n, |i, j| to_f64(graph.weight(i, j)));
        let g = (0..n).map(|v| to_f64(graph.out_degree(v))).collect();
        GeneralLaplacian {
            names: graph.vertex_names().to_vec(),
            g,
            a,
        }
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// The operator as a dense matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.names.len();
        DMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { self.g[i] } else { 0.0 };
            d - self.a[(i, j)]
        })
    }
}

/// Try to read a matrix as `diag(g) - a` with `a >= 0` and zero row sums.
/// Returns the nonnegative affinity on success, a human-readable reason on
/// failure.
fn classify(m: &DMatrix<f64>) -> std::result::Result<DMatrix<f64>, String> {
    let n = m.nrows();
    let scale = m.iter().fold(1.0_f64, |acc, &x| acc.max(x.abs()));
    let tol = CLASS_TOL * scale;
    let mut a = DMatrix::from_element(n, n, 0.0);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            let x = m[(i, j)];
            if !x.is_finite() {
                return Err(format!("non-finite entry at ({i}, {j})"));
            }
            row_sum += x;
            if i != j {
                if x > tol {
                    return Err(format!(
                        "positive off-diagonal entry {x} at ({i}, {j})"
                    ));
                }
                a[(i, j)] = -x.min(0.0);
            }
        }
        if row_sum.abs() > tol {
            return Err(format!("row {i} sums to {row_sum}, not zero"));
        }
    }
    Ok(a)
}

/// Whether the undirected support of `a` restricted to `keep` is connected.
fn support_connected(a: &DMatrix<f64>, keep: &[usize]) -> bool {
    if keep.len() <= 1 {
        return true;
    }
    let pos: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); keep.len()];
    for (ki, &i) in keep.iter().enumerate() {
        for &j in keep {
            if i != j && (a[(i, j)] > 0.0 || a[(j, i)] > 0.0) {
                adj[ki].push(pos[&j]);
            }
        }
    }
    let mut seen = vec![false; keep.len()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == keep.len()
}

/// Outcome of [`check_maximum_principle`].
#[derive(Debug, Clone, Serialize)]
pub struct MaxPrincipleReport {
    /// The matrix has the `G - A` shape the principle needs.
    pub in_class: bool,
    /// Why it does not, when it does not.
    pub class_violation: Option<String>,
    /// `f` is harmonic for the matrix (residual below tolerance).
    pub harmonic: bool,
    /// `max_v |(M f)(v)|`.
    pub residual: f64,
    /// The affinity support graph is connected (only meaningful in class).
    pub support_connected: bool,
    /// `f` is constant up to tolerance.
    pub constant: bool,
    /// `max f - min f`.
    pub spread: f64,
    /// The principle's implication held: an in-class matrix with connected
    /// support admits no non-constant harmonic function. Vacuously true
    /// when the premises fail — see `in_class` for why a counterexample
    /// candidate is not actually a counterexample.
    pub principle_upheld: bool,
}

/// Test a matrix and a candidate function against the maximum principle.
///
/// Accepts *any* square matrix: out-of-class inputs are not an error here,
/// because diagnosing how a non-constant harmonic function coexists with an
/// operator is the whole point. A signed operator with a harmonic
/// non-constant function produces `in_class: false`, `harmonic: true`,
/// `constant: false`, and `principle_upheld: true` — the principle never
/// claimed anything outside its class.
pub fn check_maximum_principle(m: &DMatrix<f64>, f: &[f64]) -> Result<MaxPrincipleReport> {
    let n = m.nrows();
    if m.ncols() != n || f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: f.len().min(m.ncols()),
        });
    }
    if f.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let fscale = f.iter().fold(1.0_f64, |acc, &x| acc.max(x.abs()));
    let mscale = m.iter().fold(1.0_f64, |acc, &x| acc.max(x.abs()));

    let classified = classify(m);
    let (in_class, class_violation, support) = match classified {
        Ok(a) => {
            let all: Vec<usize> = (0..n).collect();
            let connected = support_connected(&a, &all);
            (true, None, connected)
        }
        Err(reason) => (false, Some(reason), false),
    };

    let fv = DVector::from_column_slice(f);
    let residual = (m * &fv).iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    let harmonic = residual <= CLASS_TOL * mscale * fscale;

    let fmax = f.iter().fold(f64::MIN, |a, &b| a.max(b));
    let fmin = f.iter().fold(f64::MAX, |a, &b| a.min(b));
    let spread = fmax - fmin;
    let constant = spread <= CLASS_TOL * fscale;

    let principle_upheld = !(in_class && support && harmonic) || constant;
    Ok(MaxPrincipleReport {
        in_class,
        class_violation,
        harmonic,
        residual,
        support_connected: support,
        constant,
        spread,
        principle_upheld,
    })
}

/// Outcome of [`solve_dirichlet`].
#[derive(Debug, Clone, Serialize)]
pub struct DirichletSolution {
    /// The full function: prescribed on the boundary, solved in the
    /// interior.
    pub values: Vec<f64>,
    /// Boundary vertex indices, in the order given.
    pub boundary: Vec<usize>,
    /// Interior vertex indices, ascending.
    pub interior: Vec<usize>,
    /// `max` over interior vertices of `|(M f)(v)|` for the solved `f`.
    pub residual: f64,
    /// The interior values stayed inside `[min, max]` of the boundary
    /// data, as the maximum principle demands.
    pub within_bounds: bool,
}

/// Solve the Dirichlet problem `(M f)(v) = 0` for all interior `v`, with
/// `f` prescribed on the boundary.
///
/// `m` must be in the maximum-principle class
/// ([`Error::OutsideMaxPrincipleClass`] otherwise) — for a walk Laplacian
/// the solution at `v` is exactly the expected boundary value seen by a
/// walker started at `v`, which is what the absorbing simulations in
/// [`crate::stochastic`] estimate. The affinity support among interior
/// vertices must be connected.
pub fn solve_dirichlet(
    m: &DMatrix<f64>,
    boundary: &[(usize, f64)],
) -> Result<DirichletSolution> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.ncols(),
        });
    }
    if boundary.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let a = classify(m).map_err(|reason| Error::OutsideMaxPrincipleClass { reason })?;

    let mut is_boundary = vec![false; n];
    for &(v, value) in boundary {
        if v >= n {
            return Err(Error::InvalidParameter {
                name: "boundary",
                message: format!("vertex index {v} out of range (n = {n})"),
            });
        }
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        if is_boundary[v] {
            return Err(Error::InvalidParameter {
                name: "boundary",
                message: format!("vertex index {v} listed twice"),
            });
        }
        is_boundary[v] = true;
    }
    let interior: Vec<usize> = (0..n).filter(|&v| !is_boundary[v]).collect();

    let mut values = vec![0.0; n];
    for &(v, value) in boundary {
        values[v] = value;
    }

    if !interior.is_empty() {
        if !support_connected(&a, &interior) {
            return Err(Error::DisconnectedInterior);
        }
        let k = interior.len();
        let mii = DMatrix::from_fn(k, k, |r, c| m[(interior[r], interior[c])]);
        let rhs = DVector::from_fn(k, |r, _| {
            -boundary
                .iter()
                .map(|&(b, value)| m[(interior[r], b)] * value)
                .sum::<f64>()
        });
        let solved = mii
            .full_piv_lu()
            .solve(&rhs)
            .ok_or(Error::SingularSystem)?;
        for (r, &v) in interior.iter().enumerate() {
            values[v] = solved[r];
        }
    }

    let fv = DVector::from_column_slice(&values);
    let mf = m * &fv;
    let residual = interior
        .iter()
        .map(|&v| mf[v].abs())
        .fold(0.0_f64, f64::max);

    let bmax = boundary.iter().map(|&(_, x)| x).fold(f64::MIN, f64::max);
    let bmin = boundary.iter().map(|&(_, x)| x).fold(f64::MAX, f64::min);
    let guard = 1e-12 * 1.0_f64.max(bmax.abs()).max(bmin.abs());
    let within_bounds = interior
        .iter()
        .all(|&v| values[v] >= bmin - guard && values[v] <= bmax + guard);

    Ok(DirichletSolution {
        values,
        boundary: boundary.iter().map(|&(v, _)| v).collect(),
        interior,
        residual,
        within_bounds,
    })
}
