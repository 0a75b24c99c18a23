//! Dense digraph representation, compositions and class predicates.
//!
//! Vertices are stable identifiers `0..n`. Deleting vertices never renumbers
//! the survivors: a deleted vertex is simply marked dead and all arcs incident
//! with it are dropped, so vertex sets can be passed freely between a digraph
//! and its subdigraphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::Error;

pub type Vertex = usize;

/// A set of vertices, indexed by vertex id.
pub type VertexSet = FixedBitSet;

/// A simple digraph stored as out- and in-adjacency bit matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    alive: FixedBitSet,
    arc_count: usize,
}

impl core::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("alive", &self.alive.ones().collect::<Vec<_>>())
            .field("arcs", &self.arcs())
            .finish()
    }
}

impl Digraph {
    /// Arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        Digraph {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
            alive,
            arc_count: 0,
        }
    }

    /// Builds a digraph with exactly the given arcs.
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self, Error> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Complete digraph: every ordered pair of distinct vertices is an arc.
    pub fn complete(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.insert_arc_unchecked(u, v);
                }
            }
        }
        d
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        if n >= 2 {
            for u in 0..n {
                let v = (u + 1) % n;
                if !d.has_arc(u, v) {
                    d.insert_arc_unchecked(u, v);
                }
            }
        }
        d
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn path(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for u in 1..n {
            d.insert_arc_unchecked(u - 1, u);
        }
        d
    }

    /// Transitive tournament with arcs `i -> j` for all `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                d.insert_arc_unchecked(u, v);
            }
        }
        d
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), Error> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
        }
        if !self.alive.contains(v) {
            return Err(Error::DeletedVertex(v));
        }
        Ok(())
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<(), Error> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.out[u].contains(v) {
            return Err(Error::DuplicateArc(u, v));
        }
        self.insert_arc_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn insert_arc_unchecked(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v && !self.out[u].contains(v));
        self.out[u].insert(v);
        self.inn[v].insert(u);
        self.arc_count += 1;
    }

    /// Adds the arc unless it is already present.
    pub(crate) fn ensure_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        if self.out[u].contains(v) {
            false
        } else {
            self.insert_arc_unchecked(u, v);
            true
        }
    }

    pub fn remove_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        if u < self.n && v < self.n && self.out[u].contains(v) {
            self.out[u].set(v, false);
            self.inn[v].set(u, false);
            self.arc_count -= 1;
            true
        } else {
            false
        }
    }

    /// Size of the identifier range `0..n`, including deleted vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.alive.count_ones(..)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.alive.ones()
    }

    pub fn alive(&self) -> &VertexSet {
        &self.alive
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        v < self.n && self.alive.contains(v)
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.out[u].contains(v)
    }

    /// True if at least one of `uv`, `vu` is an arc.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn out_neighbors(&self, v: Vertex) -> &VertexSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &VertexSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inn[v].count_ones(..)
    }

    /// Minimum out-degree over live vertices (`None` for the empty digraph).
    pub fn min_out_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.out_degree(v)).min()
    }

    /// All arcs, sorted lexicographically.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut arcs = Vec::with_capacity(self.arc_count);
        for u in self.vertices() {
            arcs.extend(self.out[u].ones().map(|v| (u, v)));
        }
        arcs
    }

    /// An empty vertex set sized for this digraph.
    pub fn new_set(&self) -> VertexSet {
        FixedBitSet::with_capacity(self.n)
    }

    /// Validates `vs` against this digraph and collects it into a set.
    pub fn vertex_set(&self, vs: &[Vertex]) -> Result<VertexSet, Error> {
        let mut s = self.new_set();
        for &v in vs {
            self.check_vertex(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Induced subdigraph `D<S>`; vertex ids are preserved.
    pub fn induced(&self, s: &[Vertex]) -> Result<Digraph, Error> {
        for &v in s {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
            }
        }
        let mut keep = self.new_set();
        keep.extend(s.iter().copied());
        Ok(self.induced_set(&keep))
    }

    /// `D \ S`; vertex ids are preserved.
    pub fn delete(&self, s: &[Vertex]) -> Result<Digraph, Error> {
        for &v in s {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
            }
        }
        let mut drop = self.new_set();
        drop.extend(s.iter().copied());
        Ok(self.delete_set(&drop))
    }

    pub fn induced_set(&self, keep: &VertexSet) -> Digraph {
        let mut alive = self.alive.clone();
        alive.intersect_with(keep);
        let mut d = Digraph {
            n: self.n,
            out: vec![FixedBitSet::with_capacity(self.n); self.n],
            inn: vec![FixedBitSet::with_capacity(self.n); self.n],
            alive,
            arc_count: 0,
        };
        for u in d.alive.ones() {
            let mut row = self.out[u].clone();
            row.intersect_with(&d.alive);
            let mut col = self.inn[u].clone();
            col.intersect_with(&d.alive);
            d.arc_count += row.count_ones(..);
            d.out[u] = row;
            d.inn[u] = col;
        }
        d
    }

    pub fn delete_set(&self, drop: &VertexSet) -> Digraph {
        let mut keep = self.alive.clone();
        keep.difference_with(drop);
        self.induced_set(&keep)
    }

    /// A pair of distinct live vertices with no arc between them.
    pub fn non_adjacent_pair(&self) -> Option<(Vertex, Vertex)> {
        for u in self.vertices() {
            let mut missing = self.alive.clone();
            missing.difference_with(&self.out[u]);
            missing.difference_with(&self.inn[u]);
            missing.set(u, false);
            if let Some(v) = missing.ones().next() {
                return Some((u.min(v), u.max(v)));
            }
        }
        None
    }

    pub fn is_semicomplete(&self) -> bool {
        self.non_adjacent_pair().is_none()
    }

    /// Semicomplete with no 2-cycles.
    pub fn is_tournament(&self) -> bool {
        self.tournament_violation().is_none()
    }

    fn tournament_violation(&self) -> Option<(Vertex, Vertex)> {
        if let Some(p) = self.non_adjacent_pair() {
            return Some(p);
        }
        for u in self.vertices() {
            let mut both = self.out[u].clone();
            both.intersect_with(&self.inn[u]);
            if let Some(v) = both.ones().next() {
                return Some((u.min(v), u.max(v)));
            }
        }
        None
    }

    pub(crate) fn require_tournament(&self) -> Result<(), Error> {
        match self.tournament_violation() {
            Some((u, v)) => Err(Error::NotTournament(u, v)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_semicomplete(&self) -> Result<(), Error> {
        match self.non_adjacent_pair() {
            Some((u, v)) => Err(Error::NotSemicomplete(u, v)),
            None => Ok(()),
        }
    }

    /// Spanning tournament of a semicomplete digraph. Of every 2-cycle only
    /// the arc from the smaller id to the larger id is kept.
    pub fn spanning_tournament(&self) -> Result<Digraph, Error> {
        self.require_semicomplete()?;
        let mut t = self.clone();
        for u in self.vertices() {
            let mut both = self.out[u].clone();
            both.intersect_with(&self.inn[u]);
            for v in both.ones().filter(|&v| v > u) {
                t.remove_arc(v, u);
            }
        }
        Ok(t)
    }

    /// Vertices reachable from `s` using only vertices of `within`.
    pub fn reachable_within(&self, s: Vertex, within: &VertexSet, forward: bool) -> VertexSet {
        let mut seen = self.new_set();
        seen.insert(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let nbrs = if forward { &self.out[u] } else { &self.inn[u] };
            let mut fresh = nbrs.clone();
            fresh.intersect_with(within);
            fresh.difference_with(&seen);
            for w in fresh.ones() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen
    }

    /// Strong connectivity of the subdigraph induced by `within`.
    pub fn is_strong_within(&self, within: &VertexSet) -> bool {
        let mut w = within.clone();
        w.intersect_with(&self.alive);
        let Some(s) = w.ones().next() else {
            return true;
        };
        let fwd = self.reachable_within(s, &w, true);
        if !w.is_subset(&fwd) {
            return false;
        }
        let bwd = self.reachable_within(s, &w, false);
        w.is_subset(&bwd)
    }

    pub fn is_strong(&self) -> bool {
        self.is_strong_within(&self.alive)
    }

    /// BFS distances from `s` inside `within` (`None` = unreachable).
    pub fn distances_within(&self, s: Vertex, within: &VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for w in self.out[u].ones() {
                if within.contains(w) && dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest `(s, t)`-path whose interior lies in `within`, with at most
    /// `max_len` arcs. When `skip_direct` is set the arc `st` is ignored.
    /// Ties are broken towards smaller vertex ids.
    pub fn shortest_path_within(
        &self,
        s: Vertex,
        t: Vertex,
        within: &VertexSet,
        max_len: usize,
        skip_direct: bool,
    ) -> Option<Vec<Vertex>> {
        if s == t {
            return Some(vec![s]);
        }
        if !skip_direct && self.has_arc(s, t) && max_len >= 1 {
            return Some(vec![s, t]);
        }
        let mut pred = vec![usize::MAX; self.n];
        let mut depth = vec![usize::MAX; self.n];
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if depth[u] >= max_len {
                continue;
            }
            for w in self.out[u].ones() {
                if w == t {
                    if u == s && skip_direct {
                        continue;
                    }
                    let mut path = vec![t, u];
                    let mut cur = u;
                    while cur != s {
                        cur = pred[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if w != s && depth[w] == usize::MAX && within.contains(w) {
                    depth[w] = depth[u] + 1;
                    pred[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// A pair `(u, v)` of non-adjacent vertices joined by a path with exactly
    /// `l` arcs, if any. For `l = 1` this reports a non-adjacent pair, so
    /// 1-quasi-transitivity coincides with semicompleteness.
    pub fn l_quasi_transitive_witness(&self, l: usize) -> Option<(Vertex, Vertex)> {
        if l <= 1 {
            return self.non_adjacent_pair();
        }
        let mut on_path = self.new_set();
        for u in self.vertices() {
            let mut targets = self.alive.clone();
            targets.difference_with(&self.out[u]);
            targets.difference_with(&self.inn[u]);
            targets.set(u, false);
            if targets.is_clear() {
                continue;
            }
            on_path.clear();
            on_path.insert(u);
            if let Some(v) = self.exact_path_hit(u, l, &targets, &mut on_path) {
                return Some((u, v));
            }
        }
        None
    }

    // DFS over simple paths; `remaining` arcs still to take from `at`.
    fn exact_path_hit(
        &self,
        at: Vertex,
        remaining: usize,
        targets: &VertexSet,
        on_path: &mut VertexSet,
    ) -> Option<Vertex> {
        if remaining == 1 {
            let mut hit = self.out[at].clone();
            hit.intersect_with(targets);
            hit.difference_with(on_path);
            return hit.ones().next();
        }
        let mut next = self.out[at].clone();
        next.difference_with(on_path);
        for w in next.ones() {
            on_path.insert(w);
            let found = self.exact_path_hit(w, remaining - 1, targets, on_path);
            on_path.set(w, false);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    pub fn is_l_quasi_transitive(&self, l: usize) -> bool {
        self.l_quasi_transitive_witness(l).is_none()
    }
}

/// One part `S_i` of a composition: its vertices (ids in the realized
/// digraph) and its internal arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Part {
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<(Vertex, Vertex)>,
}

impl Part {
    pub fn arcless(vertices: Vec<Vertex>) -> Self {
        Part { vertices, arcs: Vec::new() }
    }
}

/// Description of a composition `D = H[S_1, ..., S_h]`.
///
/// Vertex `i` of `outer` is blown up into `parts[i]`. Part vertex ids must be
/// disjoint and together cover `0..N` where `N` is the total part size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSpec {
    pub outer: Digraph,
    pub parts: Vec<Part>,
}

impl CompositionSpec {
    pub fn realized_order(&self) -> usize {
        self.parts.iter().map(|p| p.vertices.len()).sum()
    }

    pub fn partition(&self) -> Vec<Vec<Vertex>> {
        self.parts.iter().map(|p| p.vertices.clone()).collect()
    }

    fn validate(&self) -> Result<usize, Error> {
        let h = self.outer.order();
        if h != self.parts.len() || h < 2 || self.outer.vertex_count() != h {
            return Err(Error::ArityMismatch { outer: self.outer.vertex_count(), parts: self.parts.len() });
        }
        let n = self.realized_order();
        let mut seen = FixedBitSet::with_capacity(n);
        for part in &self.parts {
            for &v in &part.vertices {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
                if seen.put(v) {
                    return Err(Error::PartOverlap(v));
                }
            }
        }
        Ok(n)
    }

    /// Realizes the composition: internal part arcs plus `s_i s_j` for every
    /// arc `v_i v_j` of the outer digraph.
    pub fn compose(&self) -> Result<Digraph, Error> {
        let n = self.validate()?;
        let mut d = Digraph::empty(n);
        for (i, part) in self.parts.iter().enumerate() {
            let mut members = FixedBitSet::with_capacity(n);
            members.extend(part.vertices.iter().copied());
            for &(a, b) in &part.arcs {
                if a >= n || b >= n || !members.contains(a) || !members.contains(b) {
                    return Err(Error::NotAPartition(if members.contains(a) { b } else { a }));
                }
                d.add_arc(a, b)?;
            }
            for j in self.outer.out_neighbors(i).ones() {
                for &a in &part.vertices {
                    for &b in &self.parts[j].vertices {
                        d.insert_arc_unchecked(a, b);
                    }
                }
            }
        }
        Ok(d)
    }
}
