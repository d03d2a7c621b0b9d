//! Random-walk factorizations `(D, A)` and their Laplace operators.
//!
//! Every walk here is described by a diagonal matrix `D` and a nonnegative
//! affinity matrix `A` with zero diagonal whose rows sum to the diagonal of
//! `D`. The transition kernel is `P = D^{-1} A` (row-stochastic) and the
//! Laplace operator is `L = I - P`. All of this is exact over rationals;
//! see [`crate::ratio`].
//!
//! [`factorize`] derives `(D, A)` from a hypergraph for the four walk
//! variants of [`WalkVariant`]; [`factorize_graph`] does the same for a
//! weighted graph in either direction; and
//! [`WalkFactorization::from_kernel`] imports an externally defined
//! row-stochastic kernel as the trivial factorization `D = I`, `A = P`.
//!
//! The central structural fact is that none of this leaves graph theory:
//! [`WalkFactorization::effective_graph`] builds the weighted graph with
//! `w(i, j) = A[(i, j)]`, and the forward normalized Laplace operator of
//! that graph ([`graph_rw_laplacian`]) reproduces `L` entry by entry, with
//! graph degrees equal to the diagonal of `D`.

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Direction, WeightedGraph};
#[cfg(test)]
use crate::graph::graph_rw_laplacian;
use crate::hypergraph::{AnyHypergraph, Hypergraph, OrientedHypergraph};
use crate::ratio::{matrix_to_f64, rat, rint, to_f64, Rat};

/// The walk rules that produce a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkVariant {
    /// Pick a co-membership slot uniformly: `D_ii = sum_e (|e|-1)` over
    /// hyperedges containing `v_i`, `A_ij = #` shared hyperedges.
    Simple,
    /// Pick a hyperedge uniformly, then a co-member uniformly:
    /// `D_ii = t(v_i)`, `A_ij = sum_e 1 / (|e|-1)` over shared hyperedges.
    TwoStep,
    /// Weight each shared hyperedge by its size: `A_ij = sum_e (|e|-1)`,
    /// `D_ii = sum_j A_ij`. Larger hyperedges attract the walker.
    EdgeSizeBiased,
    /// On an oriented hypergraph: pick a hyperedge containing `v` uniformly
    /// among all `t(v)`, then a vertex anti-oriented to `v` in it uniformly.
    /// Construction fails if some choice has no anti-oriented vertex.
    OrientedWalk,
    /// Walk along a weighted graph's edges, rows normalized by out-degree.
    GraphForward,
    /// Walk along a weighted graph's reversed edges, rows normalized by
    /// in-degree. Its Laplacian transposes to the backward graph operator.
    GraphBackward,
}

/// A walk factorization `(D, A)`; see the [module docs](self).
#[derive(Debug, Clone, PartialEq)]
pub struct WalkFactorization {
    names: Vec<String>,
    d: Vec<Rat>,
    a: DMatrix<Rat>,
    variant: WalkVariant,
    symmetric: bool,
}

impl WalkFactorization {
    fn build(
        names: Vec<String>,
        d: Vec<Rat>,
        a: DMatrix<Rat>,
        variant: WalkVariant,
    ) -> Result<Self> {
        let n = names.len();
        if d.len() != n || a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: d.len().max(a.nrows()).max(a.ncols()),
            });
        }
        for i in 0..n {
            if !a[(i, i)].is_zero() {
                return Err(Error::NotStochastic {
                    reason: format!("nonzero diagonal affinity at {:?}", names[i]),
                });
            }
            let mut row = rint(0);
            for j in 0..n {
                if a[(i, j)] < rint(0) {
                    return Err(Error::NotStochastic {
                        reason: format!("negative affinity at ({:?}, {:?})", names[i], names[j]),
                    });
                }
                row += a[(i, j)];
            }
            if d[i] <= rint(0) || row.is_zero() {
                return Err(Error::ZeroTransitionWeight {
                    vertex: names[i].clone(),
                });
            }
            if row != d[i] {
                return Err(Error::NotStochastic {
                    reason: format!(
                        "row sum {} does not match degree {} at {:?}",
                        row, d[i], names[i]
                    ),
                });
            }
        }
        let symmetric = a == a.transpose();
        Ok(WalkFactorization {
            names,
            d,
            a,
            variant,
            symmetric,
        })
    }

    /// Import an externally defined row-stochastic kernel `p` as the
    /// trivial factorization `D = I`, `A = p`.
    ///
    /// The kernel must be nonnegative with zero diagonal, every row must sum
    /// to one exactly, and its support must be connected.
    pub fn from_kernel(names: Vec<String>, p: DMatrix<Rat>) -> Result<Self> {
        let n = names.len();
        let f = Self::build(names, vec![rint(1); n], p, WalkVariant::GraphForward)?;
        if !f.effective_graph().is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(f)
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// The walk rule this factorization came from.
    pub fn variant(&self) -> WalkVariant {
        self.variant
    }

    /// Diagonal of `D`.
    pub fn degrees(&self) -> &[Rat] {
        &self.d
    }

    /// The affinity matrix `A`.
    pub fn affinity(&self) -> &DMatrix<Rat> {
        &self.a
    }

    /// Whether `A` is symmetric (the walk is reversible).
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The row-stochastic transition kernel `P = D^{-1} A`, exact.
    pub fn transition_kernel(&self) -> DMatrix<Rat> {
        let n = self.vertex_count();
        DMatrix::from_fn(n, n, |i, j| self.a[(i, j)] / self.d[i])
    }

    /// The transition kernel in floating point.
    pub fn kernel_f64(&self) -> DMatrix<f64> {
        matrix_to_f64(&self.transition_kernel())
    }

    /// Diagonal of `D` in floating point (the natural spectral weights).
    pub fn degrees_f64(&self) -> Vec<f64> {
        self.d.iter().map(|&x| to_f64(x)).collect()
    }

    /// Assemble the Laplace operator `L = I - D^{-1} A`.
    pub fn assemble(&self) -> RwLaplacian {
        let n = self.vertex_count();
        let p = self.transition_kernel();
        let matrix = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                rint(1) - p[(i, j)]
            } else {
                -p[(i, j)]
            }
        });
        RwLaplacian {
            matrix,
            factorization: self.clone(),
        }
    }

    /// The weighted graph with `w(i, j) = A[(i, j)]`.
    ///
    /// Its forward normalized Laplace operator equals [`Self::assemble`]
    /// entrywise, and its degrees equal the diagonal of `D` — the walk is a
    /// graph walk in disguise.
    pub fn effective_graph(&self) -> WeightedGraph {
        WeightedGraph::new(self.names.clone(), self.a.clone())
            .expect("factorization invariants imply a valid graph")
    }
}

/// The Laplace operator `L = I - D^{-1} A` of a walk factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct RwLaplacian {
    matrix: DMatrix<Rat>,
    factorization: WalkFactorization,
}

impl RwLaplacian {
    /// The operator as an exact rational matrix. Rows sum to zero.
    pub fn matrix(&self) -> &DMatrix<Rat> {
        &self.matrix
    }

    /// The operator in floating point.
    pub fn to_f64(&self) -> DMatrix<f64> {
        matrix_to_f64(&self.matrix)
    }

    /// The factorization this operator was assembled from.
    pub fn factorization(&self) -> &WalkFactorization {
        &self.factorization
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        self.factorization.vertex_names()
    }

    /// The adjoint (backward) operator: the matrix transpose, with zero
    /// column sums and the same spectrum.
    pub fn transpose_operator(&self) -> DMatrix<Rat> {
        self.matrix.transpose()
    }
}

/// Derive the factorization of a hypergraph walk.
///
/// The input must be connected. [`WalkVariant::OrientedWalk`] needs an
/// oriented hypergraph; the three symmetric variants accept either flavour
/// and ignore orientation. The graph variants are produced by
/// [`factorize_graph`], not here.
pub fn factorize(h: &AnyHypergraph, variant: WalkVariant) -> Result<WalkFactorization> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    match variant {
        WalkVariant::Simple | WalkVariant::TwoStep | WalkVariant::EdgeSizeBiased => {
            let underlying = h.underlying();
            factorize_symmetric(&underlying, variant)
        }
        WalkVariant::OrientedWalk => match h {
            AnyHypergraph::Oriented(oh) => factorize_oriented(oh),
            AnyHypergraph::Undirected(_) => Err(Error::OrientedInputRequired),
        },
        WalkVariant::GraphForward | WalkVariant::GraphBackward => Err(Error::InvalidParameter {
            name: "variant",
            message: "graph variants are built with factorize_graph".into(),
        }),
    }
}

fn factorize_symmetric(h: &Hypergraph, variant: WalkVariant) -> Result<WalkFactorization> {
    let n = h.vertex_count();
    let mut a = DMatrix::from_element(n, n, rint(0));
    for e in h.edges() {
        let k = e.cardinality() as i64;
        let weight = match variant {
            WalkVariant::Simple => rint(1),
            WalkVariant::TwoStep => rat(1, k - 1),
            WalkVariant::EdgeSizeBiased => rint(k - 1),
            _ => unreachable!("symmetric factorization handles symmetric variants only"),
        };
        for &u in &e.members {
            for &v in &e.members {
                if u != v {
                    a[(u, v)] += weight;
                }
            }
        }
    }
    let d: Vec<Rat> = match variant {
        // For these two the degree has a standalone meaning; compute it
        // independently of A so the row-sum identity stays a real check.
        WalkVariant::Simple => (0..n).map(|v| rint(h.degree_d(v) as i64)).collect(),
        WalkVariant::TwoStep => (0..n).map(|v| rint(h.degree_t(v) as i64)).collect(),
        WalkVariant::EdgeSizeBiased => (0..n)
            .map(|v| (0..n).map(|u| a[(v, u)]).fold(rint(0), |x, y| x + y))
            .collect(),
        _ => unreachable!(),
    };
    WalkFactorization::build(h.vertex_names().to_vec(), d, a, variant)
}

fn factorize_oriented(h: &OrientedHypergraph) -> Result<WalkFactorization> {
    let n = h.vertex_count();
    let mut a = DMatrix::from_element(n, n, rint(0));
    for e in h.edges() {
        for v in e.members() {
            let anti = e
                .anti_oriented_to(v)
                .expect("members() only yields contained vertices");
            if anti.is_empty() {
                return Err(Error::NoAntiOrientedPartner {
                    vertex: h.name(v).to_owned(),
                    edge: e.name.clone(),
                });
            }
            let share = rat(1, anti.len() as i64);
            for &u in anti {
                a[(v, u)] += share;
            }
        }
    }
    let d: Vec<Rat> = (0..n).map(|v| rint(h.degree_t(v) as i64)).collect();
    WalkFactorization::build(
        h.vertex_names().to_vec(),
        d,
        a,
        WalkVariant::OrientedWalk,
    )
}

/// Factorize a weighted graph walk.
///
/// Forward walks along the edges (`D = d_out`, `A = W`); backward walks
/// along the reversed edges (`D = d_in`, `A = W^T`). The Laplacian of the
/// backward factorization transposes to the backward operator of
/// [`graph_rw_laplacian`].
pub fn factorize_graph(g: &WeightedGraph, direction: Direction) -> Result<WalkFactorization> {
    let n = g.vertex_count();
    match direction {
        Direction::Forward => {
            let d: Vec<Rat> = (0..n).map(|v| g.out_degree(v)).collect();
            for (v, deg) in d.iter().enumerate() {
                if deg.is_zero() {
                    return Err(Error::ZeroOutDegree {
                        vertex: g.vertex_names()[v].clone(),
                    });
                }
            }
            WalkFactorization::build(
                g.vertex_names().to_vec(),
                d,
                g.weights().clone(),
                WalkVariant::GraphForward,
            )
        }
        Direction::Backward => {
            let d: Vec<Rat> = (0..n).map(|v| g.in_degree(v)).collect();
            for (v, deg) in d.iter().enumerate() {
                if deg.is_zero() {
                    return Err(Error::ZeroInDegree {
                        vertex: g.vertex_names()[v].clone(),
                    });
                }
            }
            WalkFactorization::build(
                g.vertex_names().to_vec(),
                d,
                g.weights().transpose(),
                WalkVariant::GraphBackward,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse;

    const RUNNING: &str = "\
hypergraph undirected
vertices v1 v2 v3 v4
edge e1 v1 v2 v4
edge e2 v1 v2
edge e3 v1 v3
";

    fn running() -> AnyHypergraph {
        parse(RUNNING).unwrap()
    }

    fn rats(xs: &[(i64, i64)]) -> Vec<Rat> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn two_step_factorization_of_running_example() {
        let f = factorize(&running(), WalkVariant::TwoStep).unwrap();
        assert_eq!(f.degrees(), &[rint(3), rint(2), rint(1), rint(1)]);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &rats(&[
                (0, 1), (3, 2), (1, 1), (1, 2),
                (3, 2), (0, 1), (0, 1), (1, 2),
                (1, 1), (0, 1), (0, 1), (0, 1),
                (1, 2), (1, 2), (0, 1), (0, 1),
            ]),
        );
        assert_eq!(f.affinity(), &expected);
        assert!(f.is_symmetric());

        let l = f.assemble();
        assert_eq!(
            l.matrix().row(0).iter().copied().collect::<Vec<_>>(),
            rats(&[(1, 1), (-1, 2), (-1, 3), (-1, 6)])
        );
        assert_eq!(
            l.matrix().row(2).iter().copied().collect::<Vec<_>>(),
            rats(&[(-1, 1), (0, 1), (1, 1), (0, 1)])
        );
    }

    #[test]
    fn simple_factorization_of_running_example() {
        let f = factorize(&running(), WalkVariant::Simple).unwrap();
        assert_eq!(f.degrees(), &[rint(4), rint(3), rint(1), rint(2)]);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &rats(&[
                (0, 1), (2, 1), (1, 1), (1, 1),
                (2, 1), (0, 1), (0, 1), (1, 1),
                (1, 1), (0, 1), (0, 1), (0, 1),
                (1, 1), (1, 1), (0, 1), (0, 1),
            ]),
        );
        assert_eq!(f.affinity(), &expected);
    }

    #[test]
    fn edge_size_biased_factorization_of_running_example() {
        let f = factorize(&running(), WalkVariant::EdgeSizeBiased).unwrap();
        assert_eq!(f.degrees(), &[rint(6), rint(5), rint(1), rint(4)]);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &rats(&[
                (0, 1), (3, 1), (1, 1), (2, 1),
                (3, 1), (0, 1), (0, 1), (2, 1),
                (1, 1), (0, 1), (0, 1), (0, 1),
                (2, 1), (2, 1), (0, 1), (0, 1),
            ]),
        );
        assert_eq!(f.affinity(), &expected);
    }

    #[test]
    fn effective_graph_reproduces_the_walk_exactly() {
        for variant in [
            WalkVariant::Simple,
            WalkVariant::TwoStep,
            WalkVariant::EdgeSizeBiased,
        ] {
            let f = factorize(&running(), variant).unwrap();
            let g = f.effective_graph();
            // graph degrees = D, entry by entry as rationals
            for v in 0..4 {
                assert_eq!(g.degree(v), f.degrees()[v]);
            }
            let via_graph = graph_rw_laplacian(&g, Direction::Forward).unwrap();
            assert_eq!(&via_graph, f.assemble().matrix());
        }
        // the frozen effective weights of the two-step walk
        let g = factorize(&running(), WalkVariant::TwoStep)
            .unwrap()
            .effective_graph();
        assert_eq!(g.weight(0, 1), rat(3, 2));
        assert_eq!(g.weight(0, 2), rint(1));
        assert_eq!(g.weight(0, 3), rat(1, 2));
        assert_eq!(g.weight(1, 3), rat(1, 2));
        assert_eq!(g.weight(1, 2), rint(0));
        assert_eq!(g.weight(2, 3), rint(0));
    }

    #[test]
    fn oriented_walk_three_vertex_example() {
        // e1: v1 -> {v2, v3}; e2: v2 -> v1; e3: v3 -> v1
        let text = "\
hypergraph oriented
edge e1 in:v1 out:v2,v3
edge e2 in:v2 out:v1
edge e3 in:v3 out:v1
";
        let h = parse(text).unwrap();
        let f = factorize(&h, WalkVariant::OrientedWalk).unwrap();
        assert_eq!(f.degrees(), &[rint(3), rint(2), rint(2)]);
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &rats(&[
                (0, 1), (3, 2), (3, 2),
                (2, 1), (0, 1), (0, 1),
                (2, 1), (0, 1), (0, 1),
            ]),
        );
        assert_eq!(f.affinity(), &expected);
        assert!(!f.is_symmetric());

        // still a graph walk: the (directed) effective graph reproduces L
        let g = f.effective_graph();
        assert!(!g.is_symmetric());
        let via_graph = graph_rw_laplacian(&g, Direction::Forward).unwrap();
        assert_eq!(&via_graph, f.assemble().matrix());
    }

    #[test]
    fn oriented_walk_on_graphs_ignores_orientation() {
        // one-in-one-out hyperedges form a graph; whichever way each edge
        // points, the oriented walk is the plain graph walk.
        let a = parse("hypergraph oriented\nvertices a b c\nedge e1 in:a out:b\nedge e2 in:c out:b\n")
            .unwrap();
        let b = parse("hypergraph oriented\nvertices a b c\nedge e1 in:b out:a\nedge e2 in:b out:c\n")
            .unwrap();
        let fa = factorize(&a, WalkVariant::OrientedWalk).unwrap();
        let fb = factorize(&b, WalkVariant::OrientedWalk).unwrap();
        assert_eq!(fa.affinity(), fb.affinity());
        assert_eq!(fa.degrees(), fb.degrees());
        // and equals the two-step walk on the underlying hypergraph
        let two = factorize(&a, WalkVariant::TwoStep).unwrap();
        assert_eq!(fa.affinity(), two.affinity());
        assert_eq!(fa.degrees(), two.degrees());
    }

    #[test]
    fn oriented_walk_rejections() {
        // all-inputs hyperedge: no anti-oriented partner anywhere
        let h = parse("hypergraph oriented\nedge e in:a,b\nedge f in:b out:a\n").unwrap();
        assert!(matches!(
            factorize(&h, WalkVariant::OrientedWalk),
            Err(Error::NoAntiOrientedPartner { .. })
        ));
        // undirected input
        assert!(matches!(
            factorize(&running(), WalkVariant::OrientedWalk),
            Err(Error::OrientedInputRequired)
        ));
        // graph variants are not hypergraph variants
        assert!(matches!(
            factorize(&running(), WalkVariant::GraphForward),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn symmetric_variants_accept_oriented_input() {
        let oriented = parse("hypergraph oriented\nedge e1 in:v1,v4 out:v2\nedge e2 in:v2 out:v1\n")
            .unwrap();
        let f = factorize(&oriented, WalkVariant::TwoStep).unwrap();
        let underlying = AnyHypergraph::Undirected(oriented.underlying());
        let g = factorize(&underlying, WalkVariant::TwoStep).unwrap();
        assert_eq!(f.affinity(), g.affinity());
        assert_eq!(f.degrees(), g.degrees());
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let h = parse("hypergraph undirected\nedge e1 a b\nedge e2 c d\n").unwrap();
        assert!(matches!(
            factorize(&h, WalkVariant::TwoStep),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn kernel_import() {
        let swap = DMatrix::from_row_slice(2, 2, &rats(&[(0, 1), (1, 1), (1, 1), (0, 1)]));
        let f = WalkFactorization::from_kernel(vec!["a".into(), "b".into()], swap).unwrap();
        assert_eq!(f.degrees(), &[rint(1), rint(1)]);
        assert_eq!(f.variant(), WalkVariant::GraphForward);

        let not_stochastic =
            DMatrix::from_row_slice(2, 2, &rats(&[(0, 1), (1, 2), (1, 1), (0, 1)]));
        assert!(matches!(
            WalkFactorization::from_kernel(vec!["a".into(), "b".into()], not_stochastic),
            Err(Error::NotStochastic { .. })
        ));

        let lazy = DMatrix::from_row_slice(2, 2, &rats(&[(1, 2), (1, 2), (1, 1), (0, 1)]));
        assert!(matches!(
            WalkFactorization::from_kernel(vec!["a".into(), "b".into()], lazy),
            Err(Error::NotStochastic { .. })
        ));
    }

    #[test]
    fn graph_factorizations_and_the_backward_operator() {
        // directed triangle a -> b -> c -> a plus a reverse edge a -> c
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let mut w = DMatrix::from_element(3, 3, rint(0));
        w[(0, 1)] = rint(2);
        w[(1, 2)] = rint(1);
        w[(2, 0)] = rint(1);
        w[(0, 2)] = rint(1);
        let g = WeightedGraph::new(names, w).unwrap();

        let fwd = factorize_graph(&g, Direction::Forward).unwrap();
        assert_eq!(fwd.degrees(), &[rint(3), rint(1), rint(1)]);
        assert_eq!(
            &graph_rw_laplacian(&g, Direction::Forward).unwrap(),
            fwd.assemble().matrix()
        );

        let bwd = factorize_graph(&g, Direction::Backward).unwrap();
        assert_eq!(bwd.degrees(), &[rint(1), rint(2), rint(2)]);
        // the backward operator is the transpose of the reversed walk's L
        assert_eq!(
            graph_rw_laplacian(&g, Direction::Backward).unwrap(),
            bwd.assemble().transpose_operator()
        );
    }

    #[test]
    fn transpose_operator_has_zero_column_sums() {
        let f = factorize(&running(), WalkVariant::TwoStep).unwrap();
        let lt = f.assemble().transpose_operator();
        for j in 0..4 {
            assert_eq!(lt.column(j).iter().fold(rint(0), |a, b| a + *b), rint(0));
        }
    }

    #[test]
    fn multi_hyperedges_count_with_multiplicity() {
        let h = parse("hypergraph undirected\nedge e1 a b\nedge e2 a b\nedge e3 b c\n").unwrap();
        let f = factorize(&h, WalkVariant::Simple).unwrap();
        assert_eq!(f.affinity()[(0, 1)], rint(2));
        assert_eq!(f.degrees()[0], rint(2));
    }
}
