//! Constructive k-linkage algorithms for semicomplete digraphs and their
//! generalizations.
//!
//! Given a digraph `D` from one of the supported classes and `k` terminal
//! pairs `(x_i, y_i)`, the solvers in this crate construct `k` vertex-disjoint
//! `(x_i, y_i)`-paths and certify them before returning. Supported classes:
//!
//! * semicomplete digraphs ([`semicomplete::solve_semicomplete`]),
//! * semicomplete compositions `H[S_1, ..., S_h]`
//!   ([`composition::solve_composition`]),
//! * `l`-quasi-transitive digraphs ([`lqt::solve_lqt`]).
//!
//! Supporting machinery covers exact vertex connectivity and Menger path
//! systems ([`connectivity`]), nearly in-dominating vertices and sets
//! ([`dominators`]), seeded generators ([`generators`]) and a brute-force
//! oracle ([`oracle`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod composition;
pub mod connectivity;
pub mod digraph;
pub mod dominators;
mod error;
mod flow;
pub mod generators;
pub mod lqt;
pub mod oracle;
pub mod paths;
pub mod report;
pub mod semicomplete;

pub use digraph::{CompositionSpec, Digraph, Part, Vertex, VertexSet};
pub use error::Error;
pub use paths::{LinkageInstance, PathSystem};
pub use report::{Audit, KappaAudit, Outcome, SolveOptions, SolveReport};
