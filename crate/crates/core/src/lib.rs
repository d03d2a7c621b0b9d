//! Random walks, Laplace operators, and coupled-map dynamics on
//! hypergraphs.
//!
//! A hypergraph is a vertex set with subsets (hyperedges) of any size; the
//! oriented flavour splits each hyperedge into inputs and outputs, the way
//! a chemical reaction splits into reactants and products. This crate
//! builds the operators that drive diffusion on such structures and the
//! machinery to study them:
//!
//! - [`hypergraph`] — the two hypergraph types, a line-based text format,
//!   and parsing ([`parse`], [`parse_oriented`]).
//! - [`walk`] — factorizations `(D, A)` of the random walk Laplacian
//!   `L = I - D^{-1} A` for several walk variants ([`factorize`]), all in
//!   exact rational arithmetic. Every variant is the walk of an ordinary
//!   weighted graph on the same vertices ([`WalkFactorization::effective_graph`]).
//! - [`graph`] — weighted graphs, their walk Laplacians, bipartiteness.
//! - [`chemical`] — the signed Laplacian of an oriented hypergraph, where
//!   co-oriented neighbours repel and anti-oriented neighbours attract,
//!   with its incidence factorization and matrix-free operator route.
//! - [`spectral`] — eigendecomposition through the weighted symmetrization,
//!   Rayleigh quotients, spectral-interval certificates ([`certify_rw`],
//!   [`certify_chemical`]), and randomized min-max verification.
//! - [`harmonic`] — the maximum-principle operator class, harmonicity
//!   diagnostics, and Dirichlet boundary problems ([`solve_dirichlet`]).
//! - [`stochastic`] — seeded, scheduler-independent Monte Carlo: alias-table
//!   walk simulation, empirical kernel estimates, distribution evolution,
//!   and absorbing-boundary estimators.
//! - [`chm`] — coupled map dynamics `x <- C f(x)` with `C = I - eps * O`:
//!   exact unit-box invariance analysis with escape witnesses, a
//!   commutativity identity check, and ensemble histograms.
//! - [`corpus`] — worked examples and seeded random generators for tests
//!   and benchmarks.
//!
//! Everything that can be exact is exact: degree and affinity matrices,
//! Laplacian entries, and effective-graph weights are rational
//! ([`Rat`]); floating point enters only for eigenvalues, linear solves,
//! and simulation.
//!
//! ```
//! use hyperlap::{corpus, factorize, WalkVariant};
//!
//! let h = corpus::running_example();
//! let walk = factorize(&h.clone().into(), WalkVariant::TwoStep).unwrap();
//! let graph = walk.effective_graph();
//! // the walk on the hypergraph is the walk on its effective graph
//! assert_eq!(
//!     hyperlap::graph_rw_laplacian(&graph, hyperlap::Direction::Forward).unwrap(),
//!     *walk.assemble().matrix(),
//! );
//! ```

pub mod chemical;
pub mod chm;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod harmonic;
pub mod hypergraph;
pub mod ratio;
pub mod spectral;
pub mod stochastic;
pub mod walk;

pub use chemical::{
    adjoint_apply, boundary_apply, chemical, chemical_apply, oriented_adjacency, signed_incidence,
    ChemicalKind, ChemicalLaplacian,
};
pub use chm::{
    chm_step, commutativity_check, ensemble_run, invariance_report, CommutativityReport,
    CouplingKind, CouplingOperator, EnsembleSpec, EscapeWitness, EvalMode, HistogramSeries,
    InvarianceReport, MapKind, NodeHistogram, ScalarMap,
};
pub use error::{Error, Result};
pub use graph::{graph_rw_laplacian, is_bipartite, BipartiteReport, Direction, WeightedGraph};
pub use harmonic::{
    check_maximum_principle, solve_dirichlet, DirichletSolution, GeneralLaplacian,
    MaxPrincipleReport,
};
pub use hypergraph::{
    parse, parse_oriented, parse_undirected, AnyHypergraph, Hyperedge, Hypergraph, OrientedEdge,
    OrientedHypergraph,
};
pub use ratio::{rat, rint, Rat};
pub use spectral::{
    certify_chemical, certify_rw, eigen_decompose, rayleigh_quotient, verify_minmax,
    weighted_quotient, Certificate, Extremal, MinMaxReport, QuadraticForm, Spectrum, SPECTRAL_TOL,
};
pub use stochastic::{
    absorbing_walk, empirical_kernel, evolve_distribution, simulate_walk, simulate_walks,
    AbsorptionReport, AliasTable, EmpiricalKernel, EvolveMode, OccupationSeries, WalkSimulator,
    WalkTrajectory, DEFAULT_ABSORPTION_CAP,
};
pub use walk::{factorize, factorize_graph, RwLaplacian, WalkFactorization, WalkVariant};

impl From<Hypergraph> for AnyHypergraph {
    fn from(h: Hypergraph) -> Self {
        AnyHypergraph::Undirected(h)
    }
}

impl From<OrientedHypergraph> for AnyHypergraph {
    fn from(h: OrientedHypergraph) -> Self {
        AnyHypergraph::Oriented(h)
    }
}
