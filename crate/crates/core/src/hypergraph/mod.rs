//! Hypergraphs, oriented hypergraphs, and their structural queries.
//!
//! A [`Hypergraph`] is a finite vertex set together with named hyperedges,
//! each a set of at least two distinct vertices. An [`OrientedHypergraph`]
//! additionally splits every hyperedge into disjoint *input* and *output*
//! sides; one side may be empty, but never both. Both types forbid isolated
//! vertices and duplicate memberships inside a hyperedge. Repeated hyperedges
//! with identical content are allowed (under distinct names) and are counted
//! with multiplicity by every degree, affinity, and adjacency in this crate.
//!
//! The text format lives in [`parse`]; [`Hypergraph::to_text`] and
//! [`OrientedHypergraph::to_text`] emit the canonical form that parses back
//! to an identical structure.

mod parse;

pub use parse::{parse, parse_oriented, parse_undirected};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// An unordered hyperedge: a named set of at least two vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    /// Name used in the text format and in error messages.
    pub name: String,
    /// Distinct vertex indices, in first-listed order.
    pub members: Vec<usize>,
}

impl Hyperedge {
    /// Number of vertices in the hyperedge.
    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    /// Whether the hyperedge contains vertex `v`.
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }
}

/// An oriented hyperedge: disjoint input and output vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedEdge {
    /// Name used in the text format and in error messages.
    pub name: String,
    /// Input vertices (distinct, disjoint from `outputs`).
    pub inputs: Vec<usize>,
    /// Output vertices (distinct, disjoint from `inputs`).
    pub outputs: Vec<usize>,
}

impl OrientedEdge {
    /// Total number of vertices on both sides.
    pub fn cardinality(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    /// All members, inputs first.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.inputs.iter().chain(self.outputs.iter()).copied()
    }

    /// Whether the hyperedge contains vertex `v` on either side.
    pub fn contains(&self, v: usize) -> bool {
        self.inputs.contains(&v) || self.outputs.contains(&v)
    }

    /// Orientation sign of `v` in this hyperedge: `+1` for an input, `-1`
    /// for an output, `0` if absent.
    pub fn sign(&self, v: usize) -> i64 {
        if self.inputs.contains(&v) {
            1
        } else if self.outputs.contains(&v) {
            -1
        } else {
            0
        }
    }

    /// The side anti-oriented to `v`: outputs if `v` is an input, inputs if
    /// `v` is an output, `None` if `v` is not in the hyperedge.
    pub fn anti_oriented_to(&self, v: usize) -> Option<&[usize]> {
        if self.inputs.contains(&v) {
            Some(&self.outputs)
        } else if self.outputs.contains(&v) {
            Some(&self.inputs)
        } else {
            None
        }
    }
}

/// Shared vertex bookkeeping for both hypergraph flavours.
#[derive(Debug, Clone, PartialEq, Eq)]
struct VertexSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VertexSet {
    fn new(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex {
                    vertex: name.clone(),
                });
            }
        }
        Ok(VertexSet { names, index })
    }

    /// Resolve a vertex name; when `open` is true, unseen names are appended.
    fn resolve(&mut self, name: &str, open: bool) -> Result<usize> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        if !open {
            return Err(Error::UnknownVertex {
                vertex: name.to_owned(),
            });
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        Ok(i)
    }
}

/// An undirected hypergraph. See the [module docs](self) for the invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: VertexSet,
    edges: Vec<Hyperedge>,
}

/// An oriented hypergraph. See the [module docs](self) for the invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedHypergraph {
    vertices: VertexSet,
    edges: Vec<OrientedEdge>,
}

/// Either hypergraph flavour, as returned by [`parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyHypergraph {
    Undirected(Hypergraph),
    Oriented(OrientedHypergraph),
}

fn check_edge_name(seen: &mut HashMap<String, ()>, name: &str) -> Result<()> {
    if seen.insert(name.to_owned(), ()).is_some() {
        return Err(Error::DuplicateEdge {
            edge: name.to_owned(),
        });
    }
    Ok(())
}

fn check_isolated(n: usize, used: &[bool], names: &[String]) -> Result<()> {
    for v in 0..n {
        if !used[v] {
            return Err(Error::IsolatedVertex {
                vertex: names[v].clone(),
            });
        }
    }
    Ok(())
}

impl Hypergraph {
    /// Build a hypergraph from vertex names and named hyperedges.
    ///
    /// If `vertex_names` is empty the vertex set is inferred from the edges
    /// in order of first appearance; otherwise it fixes the vertex order and
    /// edges may only reference declared names.
    pub fn new<S: AsRef<str>>(
        vertex_names: Vec<String>,
        edges: Vec<(String, Vec<S>)>,
    ) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyHypergraph);
        }
        let open = vertex_names.is_empty();
        let mut vertices = VertexSet::new(vertex_names)?;
        let mut seen_names = HashMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (name, members) in edges {
            check_edge_name(&mut seen_names, &name)?;
            if members.len() < 2 {
                return Err(Error::SingletonEdge { edge: name });
            }
            let mut ids = Vec::with_capacity(members.len());
            for m in &members {
                let id = vertices.resolve(m.as_ref(), open)?;
                if ids.contains(&id) {
                    return Err(Error::DuplicateMember {
                        edge: name,
                        vertex: m.as_ref().to_owned(),
                    });
                }
                ids.push(id);
            }
            built.push(Hyperedge { name, members: ids });
        }
        let mut used = vec![false; vertices.names.len()];
        for e in &built {
            for &v in &e.members {
                used[v] = true;
            }
        }
        check_isolated(vertices.names.len(), &used, &vertices.names)?;
        Ok(Hypergraph {
            vertices,
            edges: built,
        })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    /// Number of hyperedges (with multiplicity).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices.names
    }

    /// Name of vertex `v`.
    pub fn name(&self, v: usize) -> &str {
        &self.vertices.names[v]
    }

    /// Index of a vertex by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.index.get(name).copied()
    }

    /// The hyperedges.
    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Number of hyperedges containing `v` (with multiplicity).
    pub fn degree_t(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Sum of `|e| - 1` over hyperedges containing `v`: the number of
    /// co-membership slots at `v`, counted with multiplicity.
    pub fn degree_d(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.cardinality() - 1)
            .sum()
    }

    /// Number of hyperedges containing both `u` and `v` (with multiplicity).
    pub fn co_membership(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.contains(u) && e.contains(v))
            .count()
    }

    /// Hyperedges containing both `u` and `v`.
    pub fn shared_edges(&self, u: usize, v: usize) -> impl Iterator<Item = &Hyperedge> {
        self.edges
            .iter()
            .filter(move |e| e.contains(u) && e.contains(v))
    }

    /// Largest hyperedge cardinality and whether every hyperedge attains it.
    pub fn max_cardinality(&self) -> (usize, bool) {
        let psi = self
            .edges
            .iter()
            .map(Hyperedge::cardinality)
            .max()
            .unwrap_or(0);
        let uniform = self.edges.iter().all(|e| e.cardinality() == psi);
        (psi, uniform)
    }

    /// Whether every pair of vertices is linked by a chain of co-memberships.
    pub fn is_connected(&self) -> bool {
        connected_via(self.vertex_count(), self.edges.iter().map(|e| &e.members))
    }

    /// Canonical text form; parses back to an identical hypergraph.
    pub fn to_text(&self) -> String {
        let mut out = String::from("hypergraph undirected\n");
        out.push_str(&vertices_line(&self.vertices.names));
        for e in &self.edges {
            out.push_str("edge ");
            out.push_str(&e.name);
            for &v in &e.members {
                out.push(' ');
                out.push_str(self.name(v));
            }
            out.push('\n');
        }
        out
    }
}

impl OrientedHypergraph {
    /// Build an oriented hypergraph from vertex names and named hyperedges,
    /// each given as `(name, inputs, outputs)`.
    ///
    /// One side of a hyperedge may be empty, but not both, and the total
    /// cardinality must be at least two. See [`Hypergraph::new`] for how
    /// `vertex_names` is interpreted.
    pub fn new<S: AsRef<str>>(
        vertex_names: Vec<String>,
        edges: Vec<(String, Vec<S>, Vec<S>)>,
    ) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyHypergraph);
        }
        let open = vertex_names.is_empty();
        let mut vertices = VertexSet::new(vertex_names)?;
        let mut seen_names = HashMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (name, ins, outs) in edges {
            check_edge_name(&mut seen_names, &name)?;
            if ins.len() + outs.len() < 2 {
                return Err(Error::SingletonEdge { edge: name });
            }
            let mut inputs = Vec::with_capacity(ins.len());
            let mut outputs = Vec::with_capacity(outs.len());
            for m in &ins {
                let id = vertices.resolve(m.as_ref(), open)?;
                if inputs.contains(&id) {
                    return Err(Error::DuplicateMember {
                        edge: name,
                        vertex: m.as_ref().to_owned(),
                    });
                }
                inputs.push(id);
            }
            for m in &outs {
                let id = vertices.resolve(m.as_ref(), open)?;
                if inputs.contains(&id) {
                    return Err(Error::InputAndOutput {
                        edge: name,
                        vertex: m.as_ref().to_owned(),
                    });
                }
                if outputs.contains(&id) {
                    return Err(Error::DuplicateMember {
                        edge: name,
                        vertex: m.as_ref().to_owned(),
                    });
                }
                outputs.push(id);
            }
            built.push(OrientedEdge {
                name,
                inputs,
                outputs,
            });
        }
        let mut used = vec![false; vertices.names.len()];
        for e in &built {
            for v in e.members() {
                used[v] = true;
            }
        }
        check_isolated(vertices.names.len(), &used, &vertices.names)?;
        Ok(OrientedHypergraph {
            vertices,
            edges: built,
        })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    /// Number of hyperedges (with multiplicity).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices.names
    }

    /// Name of vertex `v`.
    pub fn name(&self, v: usize) -> &str {
        &self.vertices.names[v]
    }

    /// Index of a vertex by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.index.get(name).copied()
    }

    /// The hyperedges.
    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    /// Number of hyperedges containing `v` on either side.
    pub fn degree_t(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Sum of `|e| - 1` over hyperedges containing `v`.
    pub fn degree_d(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.cardinality() - 1)
            .sum()
    }

    /// Largest hyperedge cardinality and whether every hyperedge attains it.
    pub fn max_cardinality(&self) -> (usize, bool) {
        let psi = self
            .edges
            .iter()
            .map(OrientedEdge::cardinality)
            .max()
            .unwrap_or(0);
        let uniform = self.edges.iter().all(|e| e.cardinality() == psi);
        (psi, uniform)
    }

    /// Connectivity of the underlying (orientation-forgetting) hypergraph.
    pub fn is_connected(&self) -> bool {
        connected_via(
            self.vertex_count(),
            self.edges.iter().map(|e| {
                // members() allocates nothing; collect for the shared helper
                e.inputs
                    .iter()
                    .chain(e.outputs.iter())
                    .copied()
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// Forget the orientation: every hyperedge becomes the union of its
    /// input and output sides.
    pub fn underlying(&self) -> Hypergraph {
        Hypergraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    // hyperedges are sets; canonical index order keeps
                    // orientation-reversal a no-op on the underlying shape
                    let mut members: Vec<usize> = e.members().collect();
                    members.sort_unstable();
                    Hyperedge {
                        name: e.name.clone(),
                        members,
                    }
                })
                .collect(),
        }
    }

    /// Swap the input and output side of every hyperedge.
    pub fn reversed(&self) -> Self {
        OrientedHypergraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| OrientedEdge {
                    name: e.name.clone(),
                    inputs: e.outputs.clone(),
                    outputs: e.inputs.clone(),
                })
                .collect(),
        }
    }

    /// Canonical text form; parses back to an identical hypergraph.
    pub fn to_text(&self) -> String {
        let mut out = String::from("hypergraph oriented\n");
        out.push_str(&vertices_line(&self.vertices.names));
        for e in &self.edges {
            out.push_str("edge ");
            out.push_str(&e.name);
            if !e.inputs.is_empty() {
                out.push_str(" in:");
                out.push_str(&join_names(&e.inputs, &self.vertices.names));
            }
            if !e.outputs.is_empty() {
                out.push_str(" out:");
                out.push_str(&join_names(&e.outputs, &self.vertices.names));
            }
            out.push('\n');
        }
        out
    }
}

impl AnyHypergraph {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        match self {
            AnyHypergraph::Undirected(h) => h.vertex_count(),
            AnyHypergraph::Oriented(h) => h.vertex_count(),
        }
    }

    /// Vertex names in index order.
    pub fn vertex_names(&self) -> &[String] {
        match self {
            AnyHypergraph::Undirected(h) => h.vertex_names(),
            AnyHypergraph::Oriented(h) => h.vertex_names(),
        }
    }

    /// Index of a vertex by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        match self {
            AnyHypergraph::Undirected(h) => h.index_of(name),
            AnyHypergraph::Oriented(h) => h.index_of(name),
        }
    }

    /// Connectivity of the (underlying) hypergraph.
    pub fn is_connected(&self) -> bool {
        match self {
            AnyHypergraph::Undirected(h) => h.is_connected(),
            AnyHypergraph::Oriented(h) => h.is_connected(),
        }
    }

    /// Number of hyperedges containing `v`.
    pub fn degree_t(&self, v: usize) -> usize {
        match self {
            AnyHypergraph::Undirected(h) => h.degree_t(v),
            AnyHypergraph::Oriented(h) => h.degree_t(v),
        }
    }

    /// Largest hyperedge cardinality and whether the hypergraph is uniform.
    pub fn max_cardinality(&self) -> (usize, bool) {
        match self {
            AnyHypergraph::Undirected(h) => h.max_cardinality(),
            AnyHypergraph::Oriented(h) => h.max_cardinality(),
        }
    }

    /// The orientation-forgetting view (clones for the oriented flavour).
    pub fn underlying(&self) -> Hypergraph {
        match self {
            AnyHypergraph::Undirected(h) => h.clone(),
            AnyHypergraph::Oriented(h) => h.underlying(),
        }
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        match self {
            AnyHypergraph::Undirected(h) => h.to_text(),
            AnyHypergraph::Oriented(h) => h.to_text(),
        }
    }
}

fn vertices_line(names: &[String]) -> String {
    let mut line = String::from("vertices");
    for n in names {
        line.push(' ');
        line.push_str(n);
    }
    line.push('\n');
    line
}

fn join_names(ids: &[usize], names: &[String]) -> String {
    ids.iter()
        .map(|&v| names[v].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

/// Breadth-first search over co-membership; isolated vertices are already
/// excluded by construction, so a single sweep from vertex 0 suffices.
fn connected_via<M>(n: usize, edges: impl Iterator<Item = M>) -> bool
where
    M: AsRef<[usize]>,
{
    if n == 0 {
        return true;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        let members = e.as_ref();
        // Linking consecutive members is enough for reachability.
        for w in members.windows(2) {
            adj[w[0]].push(w[1]);
            adj[w[1]].push(w[0]);
        }
    }
    let mut seen = vec![false; n];
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
    count == n
}
