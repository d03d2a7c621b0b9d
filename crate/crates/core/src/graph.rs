//! Weighted graphs, two-coloring, and graph walk operators.
//!
//! Graphs here mostly arise as *effective graphs* of hypergraph walks (see
//! [`crate::walk::WalkFactorization::effective_graph`]): a weighted graph
//! whose normalized Laplace operator reproduces the hypergraph walk exactly.
//! Weights stay rational so that reproduction is an entrywise identity, not
//! an approximation.

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{rint, Rat};

/// A finite graph with nonnegative rational edge weights and no self-loops.
///
/// Asymmetric weight matrices describe directed graphs; `is_symmetric`
/// reports which case applies.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    names: Vec<String>,
    weights: DMatrix<Rat>,
    symmetric: bool,
}

impl WeightedGraph {
    /// Build a graph from vertex names and a weight matrix `w`, where
    /// `w[(i, j)]` is the weight of the edge from `i` to `j`.
    ///
    /// Requires a square matrix matching `names`, nonnegative entries, a
    /// zero diagonal, and no isolated vertex (each vertex needs a positive
    /// incident weight in at least one direction).
    pub fn new(names: Vec<String>, weights: DMatrix<Rat>) -> Result<Self> {
        let n = names.len();
        if weights.nrows() != n || weights.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: weights.nrows().max(weights.ncols()),
            });
        }
        if n == 0 {
            return Err(Error::EmptyHypergraph);
        }
        for i in 0..n {
            if !weights[(i, i)].is_zero() {
                return Err(Error::InvalidParameter {
                    name: "weights",
                    message: format!("nonzero diagonal at vertex {:?}", names[i]),
                });
            }
            for j in 0..n {
                if weights[(i, j)] < rint(0) {
                    return Err(Error::InvalidParameter {
                        name: "weights",
                        message: format!(
                            "negative weight between {:?} and {:?}",
                            names[i], names[j]
                        ),
                    });
                }
            }
        }
        for v in 0..n {
            let touched = (0..n).any(|u| !weights[(v, u)].is_zero() || !weights[(u, v)].is_zero());
            if !touched {
                return Err(Error::IsolatedVertex {
                    vertex: names[v].clone(),
                });
            }
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| weights[(i, j)] == weights[(j, i)]));
        Ok(WeightedGraph {
            names,
            weights,
            symmetric,
        })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// The weight matrix.
    pub fn weights(&self) -> &DMatrix<Rat> {
        &self.weights
    }

    /// Weight of the edge from `i` to `j`.
    pub fn weight(&self, i: usize, j: usize) -> Rat {
        self.weights[(i, j)]
    }

    /// Whether the weight matrix is symmetric.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Sum of outgoing weights at `v`.
    pub fn out_degree(&self, v: usize) -> Rat {
        (0..self.vertex_count())
            .map(|u| self.weights[(v, u)])
            .fold(rint(0), |a, b| a + b)
    }

    /// Sum of incoming weights at `v`.
    pub fn in_degree(&self, v: usize) -> Rat {
        (0..self.vertex_count())
            .map(|u| self.weights[(u, v)])
            .fold(rint(0), |a, b| a + b)
    }

    /// Degree of `v`; for symmetric graphs in- and out-degree coincide.
    pub fn degree(&self, v: usize) -> Rat {
        self.out_degree(v)
    }

    /// All ordered pairs `(i, j, w)` with positive weight.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Rat)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |i| {
            (0..n).filter_map(move |j| {
                let w = self.weights[(i, j)];
                (!w.is_zero()).then_some((i, j, w))
            })
        })
    }

    /// Connectivity of the underlying undirected support.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for (u, seen_u) in seen.iter_mut().enumerate() {
                let linked = !self.weights[(v, u)].is_zero() || !self.weights[(u, v)].is_zero();
                if linked && !*seen_u {
                    *seen_u = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }
}

/// Outcome of the two-coloring sweep in [`is_bipartite`].
#[derive(Debug, Clone, Serialize)]
pub struct BipartiteReport {
    /// Whether a proper two-coloring exists.
    pub bipartite: bool,
    /// The color classes when `bipartite` holds.
    pub classes: Option<(Vec<usize>, Vec<usize>)>,
}

/// Breadth-first two-coloring of a symmetric connected graph.
///
/// This is the purely combinatorial bipartiteness test; spectral statements
/// about the largest eigenvalue are checked *against* it, never the other
/// way around.
pub fn is_bipartite(g: &WeightedGraph) -> Result<BipartiteReport> {
    if !g.is_symmetric() {
        return Err(Error::NonSymmetricAffinity);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut color = vec![None::<bool>; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    color[0] = Some(false);
    while let Some(v) = queue.pop_front() {
        for u in 0..n {
            if g.weight(v, u).is_zero() {
                continue;
            }
            match color[u] {
                None => {
                    color[u] = Some(!color[v].unwrap());
                    queue.push_back(u);
                }
                Some(c) if c == color[v].unwrap() => {
                    return Ok(BipartiteReport {
                        bipartite: false,
                        classes: None,
                    });
                }
                Some(_) => {}
            }
        }
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (v, c) in color.iter().enumerate() {
        match c {
            Some(false) => a.push(v),
            Some(true) => b.push(v),
            None => unreachable!("connected graph colors every vertex"),
        }
    }
    Ok(BipartiteReport {
        bipartite: true,
        classes: Some((a, b)),
    })
}

/// Which normalized graph operator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `L = I - D_out^{-1} W`: row `v` averages over the out-neighbors of
    /// `v`. Zero row sums; the walk operator proper.
    Forward,
    /// `L* = I - W D_in^{-1}`: entry `(w, z)` is `-w(w, z) / d_in(z)`. Zero
    /// column sums; transports distributions backward. For symmetric graphs
    /// this is exactly the transpose of [`Direction::Forward`].
    Backward,
}

/// Normalized Laplace operator of a weighted graph, exact over rationals.
///
/// Errors on a zero out-degree (forward) or zero in-degree (backward)
/// vertex, since the corresponding normalization is undefined.
pub fn graph_rw_laplacian(g: &WeightedGraph, direction: Direction) -> Result<DMatrix<Rat>> {
    let n = g.vertex_count();
    let mut m = DMatrix::from_element(n, n, rint(0));
    match direction {
        Direction::Forward => {
            for v in 0..n {
                let d = g.out_degree(v);
                if d.is_zero() {
                    return Err(Error::ZeroOutDegree {
                        vertex: g.vertex_names()[v].clone(),
                    });
                }
                for u in 0..n {
                    m[(v, u)] = if u == v {
                        rint(1) - g.weight(v, u) / d
                    } else {
                        -g.weight(v, u) / d
                    };
                }
            }
        }
        Direction::Backward => {
            let din: Vec<Rat> = (0..n).map(|z| g.in_degree(z)).collect();
            for (z, d) in din.iter().enumerate() {
                if d.is_zero() {
                    return Err(Error::ZeroInDegree {
                        vertex: g.vertex_names()[z].clone(),
                    });
                }
            }
            for w in 0..n {
                for z in 0..n {
                    m[(w, z)] = if w == z {
                        rint(1) - g.weight(w, z) / din[z]
                    } else {
                        -g.weight(w, z) / din[z]
                    };
                }
            }
        }
    }
    Ok(m)
}
