//! Signed Laplace operators for oriented hypergraphs.
//!
//! Where the oriented random walk needs every vertex to have somewhere to
//! go ([`crate::walk::WalkVariant::OrientedWalk`]), the operators here are
//! defined for *every* oriented hypergraph. They replace shared-hyperedge
//! counting by *signed* counting: two distinct vertices contribute `+1` for
//! each hyperedge where they sit on opposite sides (anti-oriented) and `-1`
//! for each where they sit on the same side (co-oriented). The resulting
//! signed adjacency [`oriented_adjacency`] can have negative entries, so
//! these operators generally sit outside random-walk theory — they can
//! violate the maximum principle and push coupled dynamics out of an
//! invariant box, which is exactly what makes them interesting for
//! reaction-network models.
//!
//! Two normalizations are provided (see [`ChemicalKind`]): by the number of
//! incident hyperedges `t(v)` or by the degree `d(v) = sum (|e|-1)`. Both
//! factor through the signed incidence matrix `B` ([`signed_incidence`]) as
//! `T^{-1} B^T B` and `D^{-1} B^T B`, which makes them self-adjoint with
//! respect to the `t`- and `d`-weighted inner products and nonnegative,
//! with spectrum inside `[0, psi]` for `psi` the largest hyperedge
//! cardinality. The same factorization yields a matrix-free evaluation
//! route ([`boundary_apply`] / [`adjoint_apply`] / [`chemical_apply`]) used
//! to cross-check the assembled matrices.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::ratio::{matrix_to_f64, rint, to_f64, Rat};

/// Which normalization a signed Laplace operator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChemicalKind {
    /// `I - T^{-1} A°` with `T = diag(t)`: each row normalized by the
    /// number of hyperedges at the vertex.
    Normalized,
    /// `D^{-1} T - D^{-1} A°` with `D = diag(d)`: normalized by the degree
    /// `d(v) = sum_{e: v in e} (|e| - 1)`.
    DegreeNormalized,
}

/// An assembled signed Laplace operator. Built by [`chemical`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChemicalLaplacian {
    names: Vec<String>,
    t: Vec<Rat>,
    d: Vec<Rat>,
    a: DMatrix<Rat>,
    kind: ChemicalKind,
    matrix: DMatrix<Rat>,
    psi: usize,
    uniform: bool,
}

impl ChemicalLaplacian {
    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Which normalization this operator uses.
    pub fn kind(&self) -> ChemicalKind {
        self.kind
    }

    /// The signed adjacency `A°` (anti-oriented minus co-oriented counts).
    pub fn adjacency(&self) -> &DMatrix<Rat> {
        &self.a
    }

    /// The operator as an exact rational matrix.
    pub fn matrix(&self) -> &DMatrix<Rat> {
        &self.matrix
    }

    /// The operator in floating point.
    pub fn to_f64(&self) -> DMatrix<f64> {
        matrix_to_f64(&self.matrix)
    }

    /// The weights that make this operator self-adjoint: `t` for
    /// [`ChemicalKind::Normalized`], `d` for
    /// [`ChemicalKind::DegreeNormalized`].
    pub fn weights_f64(&self) -> Vec<f64> {
        let w = match self.kind {
            ChemicalKind::Normalized => &self.t,
            ChemicalKind::DegreeNormalized => &self.d,
        };
        w.iter().map(|&x| to_f64(x)).collect()
    }

    /// The largest hyperedge cardinality `psi` — the right end of the
    /// spectral interval `[0, psi]` — and whether every hyperedge attains
    /// it (the spectrum reaches `psi` only in that uniform case, and then
    /// only for special sign patterns).
    pub fn cardinality_bound(&self) -> (usize, bool) {
        (self.psi, self.uniform)
    }
}

/// The signed adjacency `A°`: for `i != j`, the number of hyperedges where
/// `v_i` and `v_j` are anti-oriented minus the number where they are
/// co-oriented; zero on the diagonal.
pub fn oriented_adjacency(h: &OrientedHypergraph) -> DMatrix<Rat> {
    let n = h.vertex_count();
    let mut a = DMatrix::from_element(n, n, rint(0));
    for e in h.edges() {
        for &u in &e.inputs {
            for &v in &e.inputs {
                if u != v {
                    a[(u, v)] -= rint(1);
                }
            }
            for &v in &e.outputs {
                a[(u, v)] += rint(1);
                a[(v, u)] += rint(1);
            }
        }
        for &u in &e.outputs {
            for &v in &e.outputs {
                if u != v {
                    a[(u, v)] -= rint(1);
                }
            }
        }
    }
    a
}

/// The signed incidence matrix `B` (hyperedges as rows, vertices as
/// columns): `+1` where the vertex is an input, `-1` where it is an output,
/// `0` elsewhere. `B^T B` has diagonal `t` and off-diagonal `-A°`, which is
/// the unnormalized core both operators share.
pub fn signed_incidence(h: &OrientedHypergraph) -> DMatrix<Rat> {
    let m = h.edge_count();
    let n = h.vertex_count();
    let mut b = DMatrix::from_element(m, n, rint(0));
    for (row, e) in h.edges().iter().enumerate() {
        for &v in &e.inputs {
            b[(row, v)] = rint(1);
        }
        for &v in &e.outputs {
            b[(row, v)] = rint(-1);
        }
    }
    b
}

/// Assemble a signed Laplace operator. The input must be connected.
pub fn chemical(h: &OrientedHypergraph, kind: ChemicalKind) -> Result<ChemicalLaplacian> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = h.vertex_count();
    let a = oriented_adjacency(h);
    let t: Vec<Rat> = (0..n).map(|v| rint(h.degree_t(v) as i64)).collect();
    let d: Vec<Rat> = (0..n).map(|v| rint(h.degree_d(v) as i64)).collect();
    let matrix = match kind {
        ChemicalKind::Normalized => DMatrix::from_fn(n, n, |i, j| {
            let delta = if i == j { rint(1) } else { rint(0) };
            delta - a[(i, j)] / t[i]
        }),
        ChemicalKind::DegreeNormalized => DMatrix::from_fn(n, n, |i, j| {
            let core = if i == j { t[i] } else { rint(0) } - a[(i, j)];
            core / d[i]
        }),
    };
    let (psi, uniform) = h.max_cardinality();
    Ok(ChemicalLaplacian {
        names: h.vertex_names().to_vec(),
        t,
        d,
        a,
        kind,
        matrix,
        psi,
        uniform,
    })
}

/// The signed boundary map: for each hyperedge, the sum of `f` over its
/// inputs minus the sum over its outputs. Returns one value per hyperedge.
pub fn boundary_apply(h: &OrientedHypergraph, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: h.vertex_count(),
            actual: f.len(),
        });
    }
    Ok(h.edges()
        .iter()
        .map(|e| {
            let ins: f64 = e.inputs.iter().map(|&v| f[v]).sum();
            let outs: f64 = e.outputs.iter().map(|&v| f[v]).sum();
            ins - outs
        })
        .collect())
}

/// The adjoint of [`boundary_apply`] with respect to the weighted vertex
/// inner product selected by `kind` (`t`-weighted for
/// [`ChemicalKind::Normalized`], `d`-weighted for
/// [`ChemicalKind::DegreeNormalized`]) and the plain inner product on
/// hyperedges: `(adjoint g)(v) = (1 / w(v)) * sum_{e: v in e} sign_e(v) g(e)`.
pub fn adjoint_apply(h: &OrientedHypergraph, kind: ChemicalKind, g: &[f64]) -> Result<Vec<f64>> {
    if g.len() != h.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: h.edge_count(),
            actual: g.len(),
        });
    }
    let n = h.vertex_count();
    let mut out = vec![0.0; n];
    for (row, e) in h.edges().iter().enumerate() {
        for &v in &e.inputs {
            out[v] += g[row];
        }
        for &v in &e.outputs {
            out[v] -= g[row];
        }
    }
    for (v, val) in out.iter_mut().enumerate() {
        let w = match kind {
            ChemicalKind::Normalized => h.degree_t(v),
            ChemicalKind::DegreeNormalized => h.degree_d(v),
        };
        *val /= w as f64;
    }
    Ok(out)
}

/// Matrix-free evaluation of a signed Laplace operator: applies the
/// boundary map and then its adjoint. Agrees with
/// `chemical(h, kind).matrix()` applied to `f` (up to floating-point
/// roundoff); the two routes cross-check each other in the test suite.
pub fn chemical_apply(h: &OrientedHypergraph, kind: ChemicalKind, f: &[f64]) -> Result<Vec<f64>> {
    let g = boundary_apply(h, f)?;
    adjoint_apply(h, kind, &g)
}
