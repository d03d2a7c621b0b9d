//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. Variants split
//! into two broad groups: *validation* errors, raised when the input itself is
//! malformed (bad file syntax, a hyperedge with one vertex, a walk variant
//! applied to the wrong kind of hypergraph, ...), and *computation* errors,
//! raised when a numerical procedure cannot finish (singular interior block,
//! non-finite state, ...). [`Error::is_validation`] exposes the split so
//! front-ends can map it to exit codes.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions raised by this crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    // ------------------------------------------------ input & structure
    /// Syntax error in the hypergraph text format.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The hypergraph has no hyperedges at all.
    #[error("hypergraph has no hyperedges")]
    EmptyHypergraph,

    /// A hyperedge with fewer than two vertices.
    #[error("hyperedge {edge:?} has fewer than two vertices")]
    SingletonEdge { edge: String },

    /// The same vertex listed twice inside one hyperedge.
    #[error("vertex {vertex:?} listed more than once in hyperedge {edge:?}")]
    DuplicateMember { edge: String, vertex: String },

    /// A vertex of an oriented hyperedge placed on both sides.
    #[error("vertex {vertex:?} is both an input and an output of hyperedge {edge:?}")]
    InputAndOutput { edge: String, vertex: String },

    /// The same vertex declared twice in a vertex list.
    #[error("duplicate vertex {vertex:?} in vertex list")]
    DuplicateVertex { vertex: String },

    /// Two hyperedges sharing a name. Repeated hyperedges with identical
    /// content are fine — give them distinct names.
    #[error("duplicate hyperedge name {edge:?}")]
    DuplicateEdge { edge: String },

    /// A vertex referenced but never declared (when an explicit vertex list
    /// fixes the vertex set), or looked up by an unknown name.
    #[error("unknown vertex {vertex:?}")]
    UnknownVertex { vertex: String },

    /// A declared vertex contained in no hyperedge.
    #[error("vertex {vertex:?} is isolated (contained in no hyperedge)")]
    IsolatedVertex { vertex: String },

    /// The (underlying) hypergraph or graph is not connected.
    #[error("input is not connected")]
    Disconnected,

    /// A scalar or structural argument outside its documented range.
    #[error("invalid {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// Vector or matrix dimensions do not line up.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    // ------------------------------------------------ walk construction
    /// An orientation-dependent operator was asked for on an undirected
    /// hypergraph.
    #[error("this operator needs an oriented hypergraph")]
    OrientedInputRequired,

    /// The oriented walk picks a hyperedge uniformly and then moves to an
    /// anti-oriented vertex; a (vertex, hyperedge) pair with no such vertex
    /// leaves the walk undefined, so construction is rejected.
    #[error(
        "vertex {vertex:?} has no anti-oriented partner in hyperedge {edge:?}; \
         the oriented walk is undefined there"
    )]
    NoAntiOrientedPartner { vertex: String, edge: String },

    /// A vertex whose affinity row is identically zero cannot take a step.
    #[error("vertex {vertex:?} has zero total transition weight")]
    ZeroTransitionWeight { vertex: String },

    /// Forward graph walk from a vertex with no outgoing weight.
    #[error("vertex {vertex:?} has zero out-degree")]
    ZeroOutDegree { vertex: String },

    /// Backward graph operator at a vertex with no incoming weight.
    #[error("vertex {vertex:?} has zero in-degree")]
    ZeroInDegree { vertex: String },

    /// An imported kernel that is not row-stochastic with zero diagonal.
    #[error("matrix is not a walk kernel: {reason}")]
    NotStochastic { reason: String },

    // ------------------------------------------------ spectral & harmonic
    /// Operation requires a symmetric affinity matrix (a reversible walk).
    #[error("affinity matrix is not symmetric; this operation needs a reversible walk")]
    NonSymmetricAffinity,

    /// Rayleigh quotients of the zero function are undefined.
    #[error("the zero function has no Rayleigh quotient")]
    ZeroFunction,

    /// The eigensolver did not converge or returned unusable output.
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    /// The operator is not of the form `G - A` with nonnegative `A` and
    /// matching row sums, so maximum-principle machinery does not apply.
    #[error("operator is outside the max-principle class: {reason}")]
    OutsideMaxPrincipleClass { reason: String },

    /// Boundary-value problem with an empty boundary set.
    #[error("boundary set is empty")]
    EmptyBoundary,

    /// The interior of a boundary-value problem is not connected.
    #[error("interior is not connected")]
    DisconnectedInterior,

    /// The interior block of the system could not be solved.
    #[error("interior system is singular")]
    SingularSystem,

    // ------------------------------------------------ dynamics & simulation
    /// A scalar map was evaluated outside its domain `[0, 1]` in strict mode.
    #[error("scalar map evaluated outside [0,1]: x = {value}")]
    DomainViolation { value: f64 },

    /// A state vector picked up a NaN or infinity.
    #[error("state contains a non-finite entry")]
    NonFinite,

    /// An absorbing walker ran for too long without hitting the boundary.
    #[error("walker exceeded {cap} steps without absorption")]
    AbsorptionTimeout { cap: u64 },
}

impl Error {
    /// `true` when the error denotes malformed input or configuration,
    /// `false` when a computation failed on well-formed input.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Eigensolver(_)
                | Error::SingularSystem
                | Error::NonFinite
                | Error::AbsorptionTimeout { .. }
                | Error::DomainViolation { .. }
        )
    }
}
