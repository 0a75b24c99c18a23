//! Ground truth: certification of path systems and exhaustive searches.
//!
//! The brute-force routines here share no code with the flow-based and
//! constructive algorithms, so they can serve as independent oracles on small
//! instances. Budgets count node expansions, not wall-clock time.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::paths::{validate_pairs, Path, PathSystem};
use crate::Error;

/// First violated clause of a linkage certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "clause", rename_all = "snake_case"))]
pub enum Violation {
    PathCount { expected: usize, found: usize },
    EmptyPath { path: usize },
    Endpoints { path: usize, expected: (Vertex, Vertex), found: (Vertex, Vertex) },
    UnknownVertex { path: usize, vertex: Vertex },
    RepeatedVertex { path: usize, vertex: Vertex },
    ArcMembership { path: usize, arc: (Vertex, Vertex) },
    Disjointness { vertex: Vertex, paths: (usize, usize) },
}

/// Outcome of [`verify_linkage`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkageVerdict {
    pub pass: bool,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub violation: Option<Violation>,
}

impl LinkageVerdict {
    fn fail(v: Violation) -> Self {
        LinkageVerdict { pass: false, violation: Some(v) }
    }
}

/// Certifies that path `i` runs from `x_i` to `y_i` along arcs of `d` and that
/// the paths are pairwise vertex-disjoint.
pub fn verify_linkage(d: &Digraph, pairs: &[(Vertex, Vertex)], ps: &PathSystem) -> LinkageVerdict {
    if ps.paths.len() != pairs.len() {
        return LinkageVerdict::fail(Violation::PathCount { expected: pairs.len(), found: ps.paths.len() });
    }
    let mut owner = vec![usize::MAX; d.order()];
    for (i, (path, &(x, y))) in ps.paths.iter().zip(pairs).enumerate() {
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            return LinkageVerdict::fail(Violation::EmptyPath { path: i });
        };
        if (first, last) != (x, y) {
            return LinkageVerdict::fail(Violation::Endpoints { path: i, expected: (x, y), found: (first, last) });
        }
        for &v in path {
            if !d.is_alive(v) {
                return LinkageVerdict::fail(Violation::UnknownVertex { path: i, vertex: v });
            }
        }
        for w in path.windows(2) {
            if !d.has_arc(w[0], w[1]) {
                return LinkageVerdict::fail(Violation::ArcMembership { path: i, arc: (w[0], w[1]) });
            }
        }
        for &v in path {
            match owner[v] {
                usize::MAX => owner[v] = i,
                j if j == i => return LinkageVerdict::fail(Violation::RepeatedVertex { path: i, vertex: v }),
                j => return LinkageVerdict::fail(Violation::Disjointness { vertex: v, paths: (j, i) }),
            }
        }
    }
    LinkageVerdict { pass: true, violation: None }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Found(PathSystem),
    Infeasible,
    BudgetExceeded,
}

struct Budget {
    left: u64,
}

impl Budget {
    fn spend(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

struct Exhausted;

struct DisjointSearch<'a> {
    d: &'a Digraph,
    pairs: Vec<(Vertex, Vertex)>,
    used: VertexSet,
    chosen: Vec<Path>,
    failed: BTreeSet<(usize, Vec<usize>)>,
    budget: &'a mut Budget,
}

impl DisjointSearch<'_> {
    fn remaining_reachable(&self, from: usize) -> bool {
        let mut free = self.d.alive().clone();
        free.difference_with(&self.used);
        self.pairs[from..].iter().all(|&(x, y)| {
            let mut within = free.clone();
            within.insert(y);
            self.d.reachable_within(x, &within, true).contains(y)
        })
    }

    fn solve(&mut self, idx: usize) -> Result<bool, Exhausted> {
        if idx == self.pairs.len() {
            return Ok(true);
        }
        let key = (idx, self.used.as_slice().to_vec());
        if self.failed.contains(&key) || !self.remaining_reachable(idx) {
            return Ok(false);
        }
        let (x, y) = self.pairs[idx];
        let mut path = vec![x];
        if self.extend(idx, &mut path, y)? {
            return Ok(true);
        }
        self.failed.insert(key);
        Ok(false)
    }

    fn extend(&mut self, idx: usize, path: &mut Path, y: Vertex) -> Result<bool, Exhausted> {
        if !self.budget.spend() {
            return Err(Exhausted);
        }
        let cur = *path.last().unwrap_or(&y);
        if self.d.has_arc(cur, y) {
            path.push(y);
            self.chosen.push(path.clone());
            if self.solve(idx + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            path.pop();
        }
        let mut next = self.d.out_neighbors(cur).clone();
        next.difference_with(&self.used);
        for w in next.ones() {
            self.used.insert(w);
            path.push(w);
            let done = self.extend(idx, path, y)?;
            path.pop();
            self.used.set(w, false);
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Counts `(x, y)`-paths of length at most 3 whose interior avoids `blocked`.
fn short_path_count(d: &Digraph, x: Vertex, y: Vertex, blocked: &VertexSet) -> usize {
    let mut count = usize::from(d.has_arc(x, y));
    let mut mids = d.out_neighbors(x).clone();
    mids.difference_with(blocked);
    for a in mids.ones() {
        if d.has_arc(a, y) {
            count += 1;
        }
        let mut second = d.out_neighbors(a).clone();
        second.difference_with(blocked);
        second.set(x, false);
        count += second.intersection_count(d.in_neighbors(y));
    }
    count
}

/// Exhaustive backtracking for vertex-disjoint `(x_i, y_i)`-paths. Pairs are
/// searched hardest first (fewest short paths); failed sub-states are
/// memoized. Exact whenever it finishes within `budget` expansions.
pub fn brute_force_disjoint_paths(
    d: &Digraph,
    pairs: &[(Vertex, Vertex)],
    budget: u64,
) -> Result<BruteForceOutcome, Error> {
    let mut b = Budget { left: budget };
    disjoint_paths_with(d, pairs, &mut b)
}

fn disjoint_paths_with(
    d: &Digraph,
    pairs: &[(Vertex, Vertex)],
    budget: &mut Budget,
) -> Result<BruteForceOutcome, Error> {
    validate_pairs(d, pairs)?;
    let mut terminals = d.new_set();
    for &(x, y) in pairs {
        terminals.insert(x);
        terminals.insert(y);
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| (short_path_count(d, pairs[i].0, pairs[i].1, &terminals), i));
    let mut search = DisjointSearch {
        d,
        pairs: order.iter().map(|&i| pairs[i]).collect(),
        used: terminals,
        chosen: Vec::new(),
        failed: BTreeSet::new(),
        budget,
    };
    match search.solve(0) {
        Ok(true) => {
            let mut paths = vec![Vec::new(); pairs.len()];
            for (slot, path) in order.iter().zip(search.chosen) {
                paths[*slot] = path;
            }
            let mut ps = PathSystem::new(paths, "brute-force");
            ps.pairs = pairs.to_vec();
            Ok(BruteForceOutcome::Found(ps))
        }
        Ok(false) => Ok(BruteForceOutcome::Infeasible),
        Err(Exhausted) => Ok(BruteForceOutcome::BudgetExceeded),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KLinkedOutcome {
    Linked,
    /// First terminal assignment (pairs sorted by source) with no linkage.
    NotLinked { witness: Vec<(Vertex, Vertex)> },
    BudgetExceeded,
}

/// Calls `visit` on every terminal assignment of `k` pairs with sources in
/// increasing order. Stops early when `visit` returns `false`.
fn for_each_assignment(d: &Digraph, k: usize, mut visit: impl FnMut(&[(Vertex, Vertex)]) -> bool) {
    let vs: Vec<Vertex> = d.vertices().collect();
    let mut xs: Vec<usize> = (0..k).collect();
    let n = vs.len();
    'outer: loop {
        // Injective assignments of targets among the vertices not in xs.
        let rest: Vec<Vertex> = (0..n).filter(|i| !xs.contains(i)).map(|i| vs[i]).collect();
        let mut ys: Vec<usize> = Vec::with_capacity(k);
        let mut taken = vec![false; rest.len()];
        let mut cursor = vec![0usize; k];
        let mut level = 0;
        loop {
            if level == k {
                let pairs: Vec<(Vertex, Vertex)> =
                    xs.iter().zip(&ys).map(|(&xi, &yi)| (vs[xi], rest[yi])).collect();
                if !visit(&pairs) {
                    return;
                }
                level -= 1;
                taken[ys.pop().unwrap_or(0)] = false;
                cursor[level] += 1;
                continue;
            }
            while cursor[level] < rest.len() && taken[cursor[level]] {
                cursor[level] += 1;
            }
            if cursor[level] < rest.len() {
                taken[cursor[level]] = true;
                ys.push(cursor[level]);
                level += 1;
                if level < k {
                    cursor[level] = 0;
                }
            } else {
                if level == 0 {
                    break;
                }
                level -= 1;
                taken[ys.pop().unwrap_or(0)] = false;
                cursor[level] += 1;
            }
        }
        // Next combination of source indices.
        let mut i = k;
        while i > 0 {
            i -= 1;
            if xs[i] < n - k + i {
                xs[i] += 1;
                for j in i + 1..k {
                    xs[j] = xs[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        break;
    }
}

/// Exhaustive k-linkedness check over every choice of `2k` distinct terminals.
pub fn brute_force_k_linked(d: &Digraph, k: usize, budget: u64) -> Result<KLinkedOutcome, Error> {
    if k == 0 {
        return Ok(KLinkedOutcome::Linked);
    }
    if d.vertex_count() < 2 * k {
        return Err(Error::TooFewVertices { needed: 2 * k, available: d.vertex_count() });
    }
    let mut b = Budget { left: budget };
    let mut result = Ok(KLinkedOutcome::Linked);
    for_each_assignment(d, k, |pairs| match disjoint_paths_with(d, pairs, &mut b) {
        Ok(BruteForceOutcome::Found(_)) => true,
        Ok(BruteForceOutcome::Infeasible) => {
            result = Ok(KLinkedOutcome::NotLinked { witness: pairs.to_vec() });
            false
        }
        Ok(BruteForceOutcome::BudgetExceeded) => {
            result = Ok(KLinkedOutcome::BudgetExceeded);
            false
        }
        Err(e) => {
            result = Err(e);
            false
        }
    });
    result
}

/// Every terminal assignment (pairs sorted by source) admitting no linkage.
/// `None` if the budget runs out.
pub fn non_linked_assignments(d: &Digraph, k: usize, budget: u64) -> Result<Option<Vec<Vec<(Vertex, Vertex)>>>, Error> {
    if d.vertex_count() < 2 * k {
        return Err(Error::TooFewVertices { needed: 2 * k, available: d.vertex_count() });
    }
    let mut b = Budget { left: budget };
    let mut found = Vec::new();
    let mut exhausted = false;
    for_each_assignment(d, k, |pairs| match disjoint_paths_with(d, pairs, &mut b) {
        Ok(BruteForceOutcome::Infeasible) => {
            found.push(pairs.to_vec());
            true
        }
        Ok(BruteForceOutcome::Found(_)) => true,
        _ => {
            exhausted = true;
            false
        }
    });
    Ok(if exhausted { None } else { Some(found) })
}

/// `κ(D)` by trying every vertex subset as a cut, smallest first.
pub fn brute_force_kappa(d: &Digraph) -> usize {
    let vs: Vec<Vertex> = d.vertices().collect();
    let n = vs.len();
    if n <= 1 {
        return 0;
    }
    assert!(n <= 20, "brute-force connectivity is limited to 20 vertices");
    let mut best = n - 1;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best || n - size < 2 {
            continue;
        }
        let mut keep = d.new_set();
        keep.extend((0..n).filter(|i| mask & (1 << i) == 0).map(|i| vs[i]));
        if !d.is_strong_within(&keep) {
            best = size;
        }
    }
    best
}

fn all_simple_paths(d: &Digraph, x: Vertex, y: Vertex, blocked: &VertexSet) -> Vec<Path> {
    fn walk(d: &Digraph, path: &mut Path, y: Vertex, on: &mut VertexSet, out: &mut Vec<Path>) {
        let cur = path[path.len() - 1];
        for w in d.out_neighbors(cur).ones() {
            if w == y {
                let mut p = path.clone();
                p.push(y);
                out.push(p);
            } else if !on.contains(w) {
                on.insert(w);
                path.push(w);
                walk(d, path, y, on, out);
                path.pop();
                on.set(w, false);
            }
        }
    }
    let mut on = blocked.clone();
    on.insert(x);
    on.insert(y);
    let mut out = Vec::new();
    walk(d, &mut vec![x], y, &mut on, &mut out);
    out
}

/// Maximum number of internally disjoint `(x, y)`-paths by enumerating all
/// simple paths and searching for the largest compatible family.
pub fn brute_force_local_connectivity(d: &Digraph, x: Vertex, y: Vertex) -> usize {
    let paths = all_simple_paths(d, x, y, &d.new_set());
    let interiors: Vec<VertexSet> = paths
        .iter()
        .map(|p| {
            let mut s = d.new_set();
            s.extend(p[1..p.len() - 1].iter().copied());
            s
        })
        .collect();
    fn best(from: usize, used: &mut VertexSet, interiors: &[VertexSet]) -> usize {
        let mut top = 0;
        for i in from..interiors.len() {
            if interiors[i].is_disjoint(used) {
                used.union_with(&interiors[i]);
                top = top.max(1 + best(i + 1, used, interiors));
                used.difference_with(&interiors[i]);
            }
        }
        top
    }
    best(0, &mut d.new_set(), &interiors)
}

/// Maximum number of vertex-disjoint paths from `from` to `to` avoiding
/// `avoid`, in any pairing.
pub fn brute_force_max_disjoint(d: &Digraph, from: &[Vertex], to: &[Vertex], avoid: &[Vertex]) -> usize {
    fn go(d: &Digraph, from: &[Vertex], to: &[Vertex], idx: usize, taken: &mut VertexSet, fixed: &VertexSet) -> usize {
        if idx == from.len() {
            return 0;
        }
        let mut top = go(d, from, to, idx + 1, taken, fixed);
        let x = from[idx];
        if fixed.contains(x) || taken.contains(x) {
            return top;
        }
        for &y in to {
            if fixed.contains(y) || taken.contains(y) {
                continue;
            }
            let mut blocked = taken.clone();
            blocked.union_with(fixed);
            blocked.extend(from.iter().copied());
            blocked.extend(to.iter().copied());
            let candidates = if x == y { vec![vec![x]] } else { all_simple_paths(d, x, y, &blocked) };
            for p in candidates {
                taken.extend(p.iter().copied());
                top = top.max(1 + go(d, from, to, idx + 1, taken, fixed));
                for &v in &p {
                    taken.set(v, false);
                }
            }
        }
        top
    }
    let mut fixed = d.new_set();
    fixed.extend(avoid.iter().copied());
    go(d, from, to, 0, &mut d.new_set(), &fixed)
}

/// Minimum total vertex count over all systems of disjoint paths from `from`
/// to `to` (one ending at each target) avoiding `avoid`.
pub fn brute_force_min_vertex_total(
    d: &Digraph,
    from: &[Vertex],
    to: &[Vertex],
    avoid: &[Vertex],
) -> Option<usize> {
    struct Ctx<'a> {
        d: &'a Digraph,
        from: &'a [Vertex],
        to: &'a [Vertex],
        fixed: VertexSet,
        best: Option<usize>,
    }
    fn rec(c: &mut Ctx<'_>, idx: usize, taken: &mut VertexSet, acc: usize) {
        if c.best.is_some_and(|b| acc >= b) {
            return;
        }
        if idx == c.to.len() {
            c.best = Some(acc);
            return;
        }
        let y = c.to[idx];
        for i in 0..c.from.len() {
            let u = c.from[i];
            if taken.contains(u) || c.fixed.contains(u) {
                continue;
            }
            let mut blocked = taken.clone();
            blocked.union_with(&c.fixed);
            blocked.set(y, false);
            for p in all_simple_paths(c.d, u, y, &blocked) {
                taken.extend(p.iter().copied());
                rec(c, idx + 1, taken, acc + p.len());
                for &v in &p {
                    taken.set(v, false);
                }
            }
        }
    }
    let mut fixed = d.new_set();
    fixed.extend(avoid.iter().copied());
    fixed.extend(to.iter().copied());
    let mut c = Ctx { d, from, to, fixed, best: None };
    rec(&mut c, 0, &mut d.new_set(), 0);
    c.best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_examples() {
        let k4 = Digraph::complete(4);
        let pairs = [(0, 1), (2, 3)];
        let ok = PathSystem::new(vec![vec![0, 1], vec![2, 3]], "");
        assert!(verify_linkage(&k4, &pairs, &ok).pass);

        let shared = PathSystem::new(vec![vec![0, 2, 1], vec![3, 2]], "");
        let v = verify_linkage(&k4, &[(0, 1), (3, 2)], &shared);
        assert_eq!(v.violation, Some(Violation::Disjointness { vertex: 2, paths: (0, 1) }));

        let c4 = Digraph::cycle(4);
        let bad = PathSystem::new(vec![vec![0, 2]], "");
        assert_eq!(
            verify_linkage(&c4, &[(0, 2)], &bad).violation,
            Some(Violation::ArcMembership { path: 0, arc: (0, 2) })
        );
    }

    #[test]
    fn brute_force_examples() {
        let c4 = Digraph::cycle(4);
        assert_eq!(brute_force_disjoint_paths(&c4, &[(0, 2), (1, 3)], 10_000).unwrap(), BruteForceOutcome::Infeasible);
        let k4 = Digraph::complete(4);
        match brute_force_disjoint_paths(&k4, &[(0, 1), (2, 3)], 10_000).unwrap() {
            BruteForceOutcome::Found(ps) => assert_eq!(ps.paths, vec![vec![0, 1], vec![2, 3]]),
            other => panic!("{other:?}"),
        }
        assert_eq!(brute_force_disjoint_paths(&k4, &[(0, 1), (1, 3)], 10), Err(Error::RepeatedTerminal(1)));
        assert_eq!(brute_force_disjoint_paths(&Digraph::complete(8), &[(0, 7), (1, 6)], 0).unwrap(), BruteForceOutcome::BudgetExceeded);
    }

    #[test]
    fn k_linked_examples() {
        assert_eq!(brute_force_k_linked(&Digraph::complete(4), 2, 100_000).unwrap(), KLinkedOutcome::Linked);
        assert_eq!(
            brute_force_k_linked(&Digraph::transitive_tournament(4), 1, 100_000).unwrap(),
            KLinkedOutcome::NotLinked { witness: vec![(1, 0)] }
        );
    }

    #[test]
    fn assignment_enumeration_counts() {
        let d = Digraph::complete(6);
        let mut count = 0;
        for_each_assignment(&d, 3, |_| {
            count += 1;
            true
        });
        // C(6,3) * 3!
        assert_eq!(count, 120);
    }

    #[test]
    fn brute_force_connectivity() {
        assert_eq!(brute_force_kappa(&Digraph::complete(5)), 4);
        assert_eq!(brute_force_kappa(&Digraph::cycle(5)), 1);
        assert_eq!(brute_force_kappa(&Digraph::transitive_tournament(4)), 0);
        assert_eq!(brute_force_local_connectivity(&Digraph::complete(4), 0, 1), 3);
        assert_eq!(brute_force_max_disjoint(&Digraph::path(3), &[0], &[2], &[1]), 0);
        let d = Digraph::from_arcs(6, &[(0, 3), (1, 5), (5, 4), (2, 5)]).unwrap();
        assert_eq!(brute_force_min_vertex_total(&d, &[0, 1, 2], &[3, 4], &[]), Some(5));
    }
}
