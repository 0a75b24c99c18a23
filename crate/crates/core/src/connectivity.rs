//! Exact vertex connectivity and Menger path systems.
//!
//! Everything here runs unit-capacity flows on the vertex-split digraph, so
//! the answers are exact.

use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex};
use crate::flow::{node_in, node_out, SplitNetwork};
use crate::paths::PathSystem;
use crate::Error;

/// Result of a set-to-set path query.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum MengerOutcome {
    Linked { paths: PathSystem },
    /// No full system exists. `separator` is the source side frontier of a
    /// minimum cut; its vertices outside the avoided set number `max_paths`.
    Infeasible { separator: Vec<Vertex>, max_paths: usize },
}

impl MengerOutcome {
    pub fn paths(&self) -> Option<&PathSystem> {
        match self {
            MengerOutcome::Linked { paths } => Some(paths),
            MengerOutcome::Infeasible { .. } => None,
        }
    }
}

fn check_distinct(d: &Digraph, x: Vertex, y: Vertex) -> Result<(), Error> {
    d.check_vertex(x)?;
    d.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(())
}

/// Maximum number of internally disjoint `(x, y)`-paths. A direct arc `xy`
/// counts as one path.
pub fn local_connectivity(d: &Digraph, x: Vertex, y: Vertex) -> Result<usize, Error> {
    check_distinct(d, x, y)?;
    let mut net = SplitNetwork::new(d, None);
    Ok(net.max_flow(node_out(x), node_in(y), usize::MAX))
}

/// A maximum family of internally disjoint `(x, y)`-paths.
pub fn local_connectivity_paths(d: &Digraph, x: Vertex, y: Vertex) -> Result<PathSystem, Error> {
    check_distinct(d, x, y)?;
    let mut net = SplitNetwork::new(d, None);
    net.max_flow(node_out(x), node_in(y), usize::MAX);
    let mut ps = PathSystem::new(net.decompose(node_out(x), node_in(y)), "local-connectivity");
    ps.shared_endpoints = true;
    Ok(ps)
}

/// Vertex connectivity `κ(D)`: the largest `k` such that `D` is `k`-strong.
/// Non-strong digraphs have `κ = 0`; the complete digraph on `n` vertices has
/// `κ = n - 1`.
pub fn kappa(d: &Digraph) -> usize {
    kappa_capped(d, usize::MAX)
}

/// `min(κ(D), cap)`. Much cheaper than [`kappa`] on highly connected inputs
/// when only a threshold matters.
pub fn kappa_capped(d: &Digraph, cap: usize) -> usize {
    let vs: Vec<Vertex> = d.vertices().collect();
    if vs.len() <= 1 || cap == 0 || !d.is_strong() {
        return 0;
    }
    let mut best = (vs.len() - 1).min(cap);
    let mut net = SplitNetwork::new(d, None);
    // Some vertex among the first κ + 1 lies outside a minimum separator, and
    // it is separated from some other vertex in one of the two directions.
    let mut i = 0;
    while i < vs.len() && i <= best {
        let v = vs[i];
        for &w in &vs {
            if w == v {
                continue;
            }
            if !d.has_arc(v, w) {
                net.reset();
                best = best.min(net.max_flow(node_out(v), node_in(w), best));
            }
            if !d.has_arc(w, v) {
                net.reset();
                best = best.min(net.max_flow(node_out(w), node_in(v), best));
            }
            if best == 0 {
                return 0;
            }
        }
        i += 1;
    }
    best
}

fn check_sets(d: &Digraph, sets: &[&[Vertex]]) -> Result<(), Error> {
    let mut seen = d.new_set();
    for set in sets {
        for &v in *set {
            d.check_vertex(v)?;
            if seen.put(v) {
                return Err(Error::SetOverlap(v));
            }
        }
    }
    Ok(())
}

fn build(d: &Digraph, from: &[Vertex], to: &[Vertex], avoid: &[Vertex]) -> SplitNetwork {
    let mut blocked = d.new_set();
    blocked.extend(avoid.iter().copied());
    let mut net = SplitNetwork::new(d, Some(&blocked));
    let (s, t) = (net.source(), net.sink());
    for &x in from {
        net.add_edge(s, node_in(x), 1, 0);
    }
    for &y in to {
        net.add_edge(node_out(y), t, 1, 0);
    }
    net
}

fn order_by_targets(mut paths: Vec<Vec<Vertex>>, to: &[Vertex]) -> Vec<Vec<Vertex>> {
    paths.sort_by_key(|p| to.iter().position(|y| p.last() == Some(y)));
    paths
}

/// `|X|` vertex-disjoint paths from `X` onto `Y` (in some pairing), none of
/// them touching `avoid`.
pub fn menger_set_paths(
    d: &Digraph,
    from: &[Vertex],
    to: &[Vertex],
    avoid: &[Vertex],
) -> Result<MengerOutcome, Error> {
    check_sets(d, &[from, to, avoid])?;
    if from.len() != to.len() {
        return Err(Error::SizeMismatch(from.len(), to.len()));
    }
    let mut net = build(d, from, to, avoid);
    let (s, t) = (net.source(), net.sink());
    let m = to.len();
    let flow = net.max_flow(s, t, m);
    if flow < m {
        return Ok(MengerOutcome::Infeasible { separator: net.cut_vertices(s), max_paths: flow });
    }
    let paths = order_by_targets(net.decompose(s, t), to);
    Ok(MengerOutcome::Linked { paths: PathSystem::new(paths, "menger") })
}

/// `|Y|` disjoint paths from `U` to `Y`, one ending at each `y`, avoiding
/// `avoid`, with the minimum total number of vertices. Paths are returned in
/// the order of `to`.
///
/// By minimality only the initial vertex of each path lies in `U`.
pub fn min_vertex_menger(
    d: &Digraph,
    from: &[Vertex],
    to: &[Vertex],
    avoid: &[Vertex],
) -> Result<MengerOutcome, Error> {
    check_sets(d, &[from, to, avoid])?;
    if from.len() < to.len() {
        return Err(Error::SizeMismatch(from.len(), to.len()));
    }
    let mut net = build(d, from, to, avoid);
    let (s, t) = (net.source(), net.sink());
    let m = to.len();
    let (flow, _) = net.min_cost_flow(s, t, m);
    if flow < m {
        return Ok(MengerOutcome::Infeasible { separator: net.cut_vertices(s), max_paths: flow });
    }
    let paths = order_by_targets(net.decompose(s, t), to);
    Ok(MengerOutcome::Linked { paths: PathSystem::new(paths, "min-vertex-menger") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn local_connectivity_examples() {
        let k4 = Digraph::complete(4);
        assert_eq!(local_connectivity(&k4, 0, 3).unwrap(), 3);
        assert_eq!(local_connectivity(&Digraph::cycle(3), 0, 1).unwrap(), 1);
        assert_eq!(local_connectivity(&Digraph::path(3), 2, 0).unwrap(), 0);
        assert_eq!(local_connectivity(&k4, 1, 1), Err(Error::SameVertex(1)));
        let ps = local_connectivity_paths(&k4, 0, 3).unwrap();
        assert_eq!(ps.len(), 3);
        assert!(ps.shared_endpoints);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&Digraph::transitive_tournament(6)), 0);
        assert_eq!(kappa(&Digraph::complete(5)), 4);
        assert_eq!(kappa(&Digraph::cycle(5)), 1);
        assert_eq!(kappa_capped(&Digraph::complete(9), 3), 3);
    }

    #[test]
    fn menger_examples() {
        let k4 = Digraph::complete(4);
        let out = menger_set_paths(&k4, &[0, 1], &[2, 3], &[]).unwrap();
        let ps = out.paths().unwrap();
        assert!(ps.paths.iter().all(|p| p.len() == 2));

        let p3 = Digraph::path(3);
        assert_eq!(
            menger_set_paths(&p3, &[0], &[2], &[1]).unwrap(),
            MengerOutcome::Infeasible { separator: vec![1], max_paths: 0 }
        );
        assert_eq!(menger_set_paths(&p3, &[0], &[0], &[]), Err(Error::SetOverlap(0)));
        assert_eq!(menger_set_paths(&p3, &[0, 1], &[2], &[]), Err(Error::SizeMismatch(2, 1)));
    }

    #[test]
    fn min_vertex_examples() {
        // Perfect matching U -> Y: two vertices per path.
        let d = Digraph::from_arcs(6, &[(0, 3), (1, 4), (2, 5), (0, 4)]).unwrap();
        let out = min_vertex_menger(&d, &[0, 1, 2], &[3, 4, 5], &[]).unwrap();
        assert_eq!(out.paths().unwrap().total_vertices(), 6);

        // y1 only reachable through an intermediate vertex.
        let d = Digraph::from_arcs(6, &[(0, 3), (1, 5), (5, 4), (2, 5)]).unwrap();
        let out = min_vertex_menger(&d, &[0, 1, 2], &[3, 4], &[]).unwrap();
        let ps = out.paths().unwrap();
        assert_eq!(ps.total_vertices(), 5);
        assert_eq!(ps.paths[0].last(), Some(&3));
        assert_eq!(ps.paths[1].last(), Some(&4));
    }
}
