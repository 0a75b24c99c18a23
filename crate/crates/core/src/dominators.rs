//! c-goodness, nearly in-dominating vertices and sets, γ-dominators and
//! in-kings.
//!
//! `v` is *c-good* for `u` when `v` dominates `u` or there are at least `c`
//! independent `(v, u)`-paths of length 2. Independent 2-paths only share
//! their ends, so their maximum number is the number of common middle
//! vertices `|N⁺(v) ∩ N⁻(u)|`.
//!
//! A vertex `u` is *nearly in-dominating* if for every `c ≥ 1` all but at most
//! `2c` vertices are c-good for it. In a semicomplete digraph any vertex of
//! maximum in-degree in a spanning tournament has this property, which is
//! what [`nearly_in_dominating_vertex`] returns.

use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::Error;

/// Per-vertex 2-path widths towards a fixed target.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GoodnessProfile {
    pub target: Vertex,
    /// `(v, width(v))` for every live `v != target`.
    pub widths: Vec<(Vertex, usize)>,
    /// Vertices `v` with `v -> target`.
    pub dominators: Vec<Vertex>,
}

impl GoodnessProfile {
    pub fn new(d: &Digraph, target: Vertex) -> Self {
        let widths = d
            .vertices()
            .filter(|&v| v != target)
            .map(|v| (v, width_unchecked(d, v, target)))
            .collect();
        GoodnessProfile { target, widths, dominators: d.in_neighbors(target).ones().collect() }
    }

    /// Vertices that are not c-good for the target.
    pub fn not_good(&self, c: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.widths
            .iter()
            .filter(move |&&(v, w)| w < c && self.dominators.binary_search(&v).is_err())
            .map(|&(v, _)| v)
    }
}

fn width_unchecked(d: &Digraph, v: Vertex, u: Vertex) -> usize {
    d.out_neighbors(v).intersection_count(d.in_neighbors(u))
}

/// Number of independent `(v, u)`-paths of length 2.
pub fn two_path_width(d: &Digraph, v: Vertex, u: Vertex) -> Result<usize, Error> {
    d.check_vertex(v)?;
    d.check_vertex(u)?;
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(width_unchecked(d, v, u))
}

pub fn is_c_good(d: &Digraph, v: Vertex, u: Vertex, c: usize) -> Result<bool, Error> {
    let width = two_path_width(d, v, u)?;
    Ok(d.has_arc(v, u) || width >= c)
}

pub(crate) fn is_c_good_unchecked(d: &Digraph, v: Vertex, u: Vertex, c: usize) -> bool {
    d.has_arc(v, u) || width_unchecked(d, v, u) >= c
}

/// A vertex of maximum in-degree in the spanning tournament, smallest id on
/// ties.
pub fn nearly_in_dominating_vertex(d: &Digraph) -> Result<Vertex, Error> {
    let t = d.spanning_tournament()?;
    t.vertices()
        .max_by_key(|&v| (t.in_degree(v), core::cmp::Reverse(v)))
        .ok_or(Error::TooFewVertices { needed: 1, available: 0 })
}

/// Worst violation found by [`verify_nearly_in_dominating`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NidVerdict {
    pub holds: bool,
    /// `c` with the largest excess `|bad(c)| - 2c` (or the largest `|bad(c)|`
    /// when the property holds).
    pub worst_c: usize,
    /// Vertices that are not `worst_c`-good.
    pub bad: Vec<Vertex>,
}

/// Checks that for every `c` in `1..=c_max` at most `2c` vertices of
/// `candidates` are not c-good for `u` in `d`.
fn verify_against(d: &Digraph, u: Vertex, c_max: usize, candidates: &VertexSet) -> NidVerdict {
    // Histogram of widths of the non-dominating candidates.
    let n = d.order();
    let mut by_width = vec![0usize; n + 1];
    for v in candidates.ones().filter(|&v| v != u && !d.has_arc(v, u)) {
        by_width[width_unchecked(d, v, u)] += 1;
    }
    let mut worst: Option<(i64, usize)> = None;
    let mut bad_count = 0usize;
    for c in 1..=c_max {
        // bad(c) = widths < c
        if c - 1 <= n {
            bad_count += by_width[c - 1];
        }
        let excess = bad_count as i64 - 2 * c as i64;
        if worst.is_none_or(|(e, _)| excess > e) {
            worst = Some((excess, c));
        }
    }
    let (excess, worst_c) = worst.unwrap_or((0, 0));
    let bad = candidates
        .ones()
        .filter(|&v| v != u && worst_c > 0 && !is_c_good_unchecked(d, v, u, worst_c))
        .collect();
    NidVerdict { holds: excess <= 0, worst_c, bad }
}

/// Exhaustive check of the nearly in-dominating property for `c ∈ [1, c_max]`.
/// Beyond the largest width the bad set stops growing while `2c` keeps
/// growing, so `c_max = n` covers every `c`.
pub fn verify_nearly_in_dominating(d: &Digraph, u: Vertex, c_max: usize) -> Result<NidVerdict, Error> {
    d.check_vertex(u)?;
    Ok(verify_against(d, u, c_max, d.alive()))
}

/// Iterates [`nearly_in_dominating_vertex`] on `D \ (X ∪ Y ∪ {u_1..u_{i-1}})`
/// to build an ordered set of `m` vertices.
pub fn nearly_in_dominating_set(
    d: &Digraph,
    xs: &[Vertex],
    ys: &[Vertex],
    m: usize,
) -> Result<Vec<Vertex>, Error> {
    let mut removed = d.vertex_set(xs)?;
    removed.union_with(&d.vertex_set(ys)?);
    let mut rest = d.delete_set(&removed);
    rest.require_semicomplete()?;
    if rest.vertex_count() < m {
        return Err(Error::TooFewVertices { needed: m, available: rest.vertex_count() });
    }
    let mut set = Vec::with_capacity(m);
    for _ in 0..m {
        let u = nearly_in_dominating_vertex(&rest)?;
        set.push(u);
        let mut gone = rest.new_set();
        gone.insert(u);
        rest = rest.delete_set(&gone);
    }
    Ok(set)
}

/// Set-level check inside `host` (typically `D \ (X ∪ Y)`): for every `u ∈ U`
/// and `c ∈ [1, c_max]`, at most `2c` vertices of `host \ U` fail to be
/// c-good for `u` in `host`. Returns the first failing member.
pub fn verify_nearly_in_dominating_set(
    host: &Digraph,
    set: &[Vertex],
    c_max: usize,
) -> Result<Option<(Vertex, NidVerdict)>, Error> {
    let members = host.vertex_set(set)?;
    let mut outside = host.alive().clone();
    outside.difference_with(&members);
    for &u in set {
        let verdict = verify_against(host, u, c_max, &outside);
        if !verdict.holds {
            return Ok(Some((u, verdict)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Direction {
    Out,
    In,
}

/// Whether `v` has at least `gamma` out- (or in-) neighbours in `U`.
pub fn is_gamma_dominator(
    d: &Digraph,
    v: Vertex,
    set: &[Vertex],
    gamma: usize,
    direction: Direction,
) -> Result<bool, Error> {
    d.check_vertex(v)?;
    let members = d.vertex_set(set)?;
    if members.contains(v) {
        return Err(Error::VertexInU(v));
    }
    Ok(dominator_degree(d, v, &members, direction) >= gamma)
}

pub(crate) fn dominator_degree(d: &Digraph, v: Vertex, members: &VertexSet, direction: Direction) -> usize {
    match direction {
        Direction::Out => d.out_neighbors(v).intersection_count(members),
        Direction::In => d.in_neighbors(v).intersection_count(members),
    }
}

/// `v` is reachable from every other vertex by a path of length at most 2.
pub fn is_in_king(t: &Digraph, v: Vertex) -> Result<bool, Error> {
    t.check_vertex(v)?;
    t.require_tournament()?;
    let mut reach = t.in_neighbors(v).clone();
    for w in t.in_neighbors(v).ones() {
        reach.union_with(t.in_neighbors(w));
    }
    reach.insert(v);
    Ok(t.alive().is_subset(&reach))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_tournament;

    #[test]
    fn width_examples() {
        let c3 = Digraph::cycle(3);
        assert_eq!(two_path_width(&c3, 0, 2).unwrap(), 1);
        let k6 = Digraph::complete(6);
        assert_eq!(two_path_width(&k6, 1, 4).unwrap(), 4);
        assert_eq!(two_path_width(&k6, 1, 1), Err(Error::SameVertex(1)));
    }

    #[test]
    fn goodness_examples() {
        let d = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert!(is_c_good(&d, 0, 1, 1_000_000).unwrap());
        let c3 = Digraph::cycle(3);
        assert!(is_c_good(&c3, 0, 2, 1).unwrap());
        assert!(!is_c_good(&c3, 0, 2, 2).unwrap());
        let k10 = Digraph::complete(10);
        assert!((0..10).all(|u| (0..10).filter(|&v| v != u).all(|v| is_c_good(&k10, v, u, 8).unwrap())));
    }

    #[test]
    fn nid_vertex_examples() {
        let tt = Digraph::transitive_tournament(7);
        assert_eq!(nearly_in_dominating_vertex(&tt).unwrap(), 6);
        let verdict = verify_nearly_in_dominating(&tt, 6, 7).unwrap();
        assert!(verdict.holds);
        assert!(GoodnessProfile::new(&tt, 6).not_good(1_000).next().is_none());

        let c3 = Digraph::cycle(3);
        assert_eq!(nearly_in_dominating_vertex(&c3).unwrap(), 0);
        assert!(is_c_good(&c3, 1, 0, 1).unwrap() && is_c_good(&c3, 2, 0, 1).unwrap());

        assert!(matches!(nearly_in_dominating_vertex(&Digraph::path(3)), Err(Error::NotSemicomplete(..))));
    }

    #[test]
    fn source_of_transitive_tournament_fails() {
        let tt = Digraph::transitive_tournament(6);
        let verdict = verify_nearly_in_dominating(&tt, 0, 2).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.bad.len(), 5);
    }

    #[test]
    fn nid_set_examples() {
        let tt = Digraph::transitive_tournament(8);
        assert!(nearly_in_dominating_set(&tt, &[], &[], 0).unwrap().is_empty());
        assert_eq!(nearly_in_dominating_set(&tt, &[], &[], 3).unwrap(), vec![7, 6, 5]);
        assert_eq!(
            nearly_in_dominating_set(&tt, &[0], &[1], 7),
            Err(Error::TooFewVertices { needed: 7, available: 6 })
        );
    }

    #[test]
    fn random_tournament_nid_holds() {
        let t = random_tournament(40, 3);
        let u = nearly_in_dominating_vertex(&t).unwrap();
        assert!(verify_nearly_in_dominating(&t, u, 40).unwrap().holds);
        let set = nearly_in_dominating_set(&t, &[], &[], 6).unwrap();
        assert_eq!(verify_nearly_in_dominating_set(&t, &set, 40).unwrap(), None);
    }

    #[test]
    fn gamma_dominators() {
        let d = Digraph::from_arcs(4, &[(0, 1), (0, 2), (3, 0)]).unwrap();
        assert!(is_gamma_dominator(&d, 0, &[1, 2], 2, Direction::Out).unwrap());
        assert!(is_gamma_dominator(&d, 0, &[3], 0, Direction::Out).unwrap());
        assert!(is_gamma_dominator(&d, 0, &[3], 1, Direction::In).unwrap());
        assert_eq!(is_gamma_dominator(&d, 0, &[0, 1], 1, Direction::Out), Err(Error::VertexInU(0)));
    }

    #[test]
    fn kings() {
        let c3 = Digraph::cycle(3);
        assert!((0..3).all(|v| is_in_king(&c3, v).unwrap()));
        let tt = Digraph::transitive_tournament(4);
        assert!(!is_in_king(&tt, 0).unwrap());
        assert!(is_in_king(&tt, 3).unwrap());
        assert!(matches!(is_in_king(&Digraph::complete(3), 0), Err(Error::NotTournament(..))));
    }
}
