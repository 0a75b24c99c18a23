//! Path systems and linkage instances.

use alloc::string::String;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::Error;

pub type Path = Vec<Vertex>;

/// An ordered collection of paths together with the `(source, target)` role
/// of each path.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PathSystem {
    pub paths: Vec<Path>,
    pub pairs: Vec<(Vertex, Vertex)>,
    /// Solver stage that emitted the system.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "String::is_empty"))]
    pub provenance: String,
    /// Paths may share their end vertices (they are only internally disjoint).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "core::ops::Not::not"))]
    pub shared_endpoints: bool,
}

impl PathSystem {
    pub fn new(paths: Vec<Path>, provenance: &str) -> Self {
        let pairs = paths
            .iter()
            .map(|p| (*p.first().unwrap_or(&0), *p.last().unwrap_or(&0)))
            .collect();
        PathSystem { paths, pairs, provenance: provenance.into(), shared_endpoints: false }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Total number of vertices over all paths.
    pub fn total_vertices(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::with_capacity(n);
        for p in &self.paths {
            s.extend(p.iter().copied());
        }
        s
    }

    /// `Int(P)`: vertices that are neither initial nor terminal on any path.
    pub fn interior(&self, n: usize) -> VertexSet {
        let mut s = self.vertex_set(n);
        for p in &self.paths {
            if let (Some(&a), Some(&b)) = (p.first(), p.last()) {
                s.set(a, false);
                s.set(b, false);
            }
        }
        s
    }

    pub fn initials(&self) -> Vec<Vertex> {
        self.paths.iter().filter_map(|p| p.first().copied()).collect()
    }

    pub fn terminals(&self) -> Vec<Vertex> {
        self.paths.iter().filter_map(|p| p.last().copied()).collect()
    }

    /// The set of `i`-th vertices (1-based) over all paths long enough.
    pub fn layer(&self, i: usize, n: usize) -> VertexSet {
        let mut s = VertexSet::with_capacity(n);
        for p in &self.paths {
            if let Some(&v) = p.get(i.wrapping_sub(1)) {
                s.insert(v);
            }
        }
        s
    }
}

/// A digraph together with `k` terminal pairs on `2k` distinct vertices.
#[derive(Debug, Clone)]
pub struct LinkageInstance {
    pub digraph: Digraph,
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl LinkageInstance {
    pub fn new(digraph: Digraph, pairs: Vec<(Vertex, Vertex)>) -> Result<Self, Error> {
        validate_pairs(&digraph, &pairs)?;
        Ok(LinkageInstance { digraph, pairs })
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn sources(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn sinks(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

/// Checks that all terminals are live and pairwise distinct, and `k >= 1`.
pub fn validate_pairs(d: &Digraph, pairs: &[(Vertex, Vertex)]) -> Result<(), Error> {
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("at least one terminal pair is required".into()));
    }
    let mut seen = d.new_set();
    for &(x, y) in pairs {
        for v in [x, y] {
            d.check_vertex(v)?;
            if seen.put(v) {
                return Err(Error::RepeatedTerminal(v));
            }
        }
    }
    Ok(())
}
