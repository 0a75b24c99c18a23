//! Linkages in highly connected `l`-quasi-transitive digraphs.
//!
//! The digraph is completed to a semicomplete `D′` by adding a *new arc*
//! between each non-adjacent pair of `D \ (X ∪ Y)` that is joined by many
//! independent short paths (its *available paths*), plus *terminal arcs* into
//! `X` and out of `Y` that no linkage can use. A linkage is then assembled in
//! `D′` around a short-anchoring pair `(U1, U2)` and every new arc it uses is
//! replaced by a reserved available path.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::connectivity::{menger_set_paths, MengerOutcome};
use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::dominators::nearly_in_dominating_set;
use crate::oracle::verify_linkage;
use crate::paths::{validate_pairs, Path, PathSystem};
use crate::report::{
    AtStage, Audit, Failure, Hypothesis, KappaAudit, Outcome, SolveOptions, SolveReport, Stage, StageResult,
};
use crate::Error;

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `C(9k - 6, 2)(l + 2) + (2l + 5)k + 9k`, the pool size that makes every
/// counting step of the construction go through.
pub fn f_threshold(k: usize, l: usize) -> Result<usize, Error> {
    if k == 0 || l < 2 {
        return Err(Error::InvalidParameter(alloc::format!("threshold needs k >= 1 and l >= 2, got k={k}, l={l}")));
    }
    Ok(binom2(9 * k - 6) * (l + 2) + (2 * l + 5) * k + 9 * k)
}

/// Connectivity the full hypothesis asks for: `81k²(l + 2)²`.
pub fn kappa_bound(k: usize, l: usize) -> usize {
    81 * k * k * (l + 2) * (l + 2)
}

/// Independent short paths between two vertices, per direction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ShortPaths {
    /// `(u, v)`-paths.
    pub forward: Vec<Path>,
    /// `(v, u)`-paths.
    pub backward: Vec<Path>,
    /// How often the distance property was checked on a strong residual.
    pub key_checks: usize,
}

/// One direction of the extraction. `residual` holds the vertices still
/// available, including `s` and `t`.
fn extract(
    d: &Digraph,
    s: Vertex,
    t: Vertex,
    l: usize,
    limit: usize,
    mut residual: VertexSet,
    key_checks: &mut usize,
) -> Result<Vec<Path>, Error> {
    let mut paths = Vec::new();
    if limit > 0 && d.has_arc(s, t) {
        paths.push(vec![s, t]);
    }
    while paths.len() < limit {
        if d.is_strong_within(&residual) {
            let st = d.distances_within(s, &residual)[t];
            let ts = d.distances_within(t, &residual)[s];
            *key_checks += 1;
            let bad = |a: Option<usize>, b: Option<usize>| a.is_some_and(|a| a >= l) && b.is_none_or(|b| b > l + 1);
            if bad(st, ts) || bad(ts, st) {
                return Err(Error::NotLQuasiTransitive { l, u: s, v: t });
            }
        }
        let Some(path) = d.shortest_path_within(s, t, &residual, l + 1, true) else {
            break;
        };
        for &v in &path[1..path.len() - 1] {
            residual.set(v, false);
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Up to `limit` pairwise independent paths of length at most `l + 1` in each
/// direction between `u` and `v`. Each direction repeatedly takes a shortest
/// qualifying path and deletes its interior. While the residual digraph is
/// strong, a pair at distance at least `l` one way must be at distance at
/// most `l + 1` the other way; a violation is reported as
/// [`Error::NotLQuasiTransitive`].
pub fn independent_short_paths(d: &Digraph, u: Vertex, v: Vertex, l: usize, limit: usize) -> Result<ShortPaths, Error> {
    d.check_vertex(u)?;
    d.check_vertex(v)?;
    if u == v {
        return Err(Error::SameVertex(u));
    }
    let mut out = ShortPaths::default();
    out.forward = extract(d, u, v, l, limit, d.alive().clone(), &mut out.key_checks)?;
    out.backward = extract(d, v, u, l, limit, d.alive().clone(), &mut out.key_checks)?;
    Ok(out)
}

/// The semicomplete completion of an `l`-quasi-transitive digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryDigraph {
    pub dprime: Digraph,
    pub new_arcs: Vec<(Vertex, Vertex)>,
    /// Available paths of each new arc, in `D \ (X ∪ Y)`.
    pub available: BTreeMap<(Vertex, Vertex), Vec<Path>>,
    pub terminal_arcs: Vec<(Vertex, Vertex)>,
    pub key_checks: usize,
}

/// Builds `D′`. `threshold` is the pool size a new arc needs.
pub fn build_auxiliary(
    d: &Digraph,
    xs: &[Vertex],
    ys: &[Vertex],
    l: usize,
    threshold: usize,
) -> Result<AuxiliaryDigraph, Failure> {
    if !d.is_strong() {
        return Err(Failure::NotStrong);
    }
    let mut terminals = d.vertex_set(xs)?;
    terminals.union_with(&d.vertex_set(ys)?);
    let d0 = d.delete_set(&terminals);
    let mut aux = AuxiliaryDigraph {
        dprime: d.clone(),
        new_arcs: Vec::new(),
        available: BTreeMap::new(),
        terminal_arcs: Vec::new(),
        key_checks: 0,
    };
    let vs: Vec<Vertex> = d0.vertices().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if d0.adjacent(u, v) {
                continue;
            }
            let found = match independent_short_paths(&d0, u, v, l, usize::MAX) {
                Ok(found) => found,
                Err(Error::NotLQuasiTransitive { l, u, v }) => return Err(Failure::NotLQuasiTransitive { l, u, v }),
                Err(e) => return Err(e.into()),
            };
            aux.key_checks += found.key_checks;
            let (f, b) = (found.forward.len(), found.backward.len());
            if f.max(b) < threshold {
                return Err(Failure::ThresholdUnreachable { pair: (u, v), forward: f, backward: b, threshold });
            }
            let (arc, pool) = if f >= b { ((u, v), found.forward) } else { ((v, u), found.backward) };
            aux.dprime.insert_arc_unchecked(arc.0, arc.1);
            aux.new_arcs.push(arc);
            aux.available.insert(arc, pool);
        }
    }
    for &x in xs {
        for u in d.vertices() {
            if u != x && !d.has_arc(u, x) {
                aux.terminal_arcs.push((u, x));
            }
        }
    }
    for &y in ys {
        for v in d.vertices() {
            if v != y && !d.has_arc(y, v) {
                aux.terminal_arcs.push((y, v));
            }
        }
    }
    for &(a, b) in &aux.terminal_arcs {
        aux.dprime.ensure_arc(a, b);
    }
    if let Some((u, v)) = aux.dprime.non_adjacent_pair() {
        return Err(Failure::assertion("auxiliary digraph is semicomplete", Some(u.min(v))));
    }
    Ok(aux)
}

/// All paths of length at most 3 from `a` to `b` whose interior avoids
/// `blocked`, shortest first.
fn short_paths(t: &Digraph, a: Vertex, b: Vertex, blocked: &VertexSet) -> Vec<Path> {
    let mut out = Vec::new();
    if t.has_arc(a, b) {
        out.push(vec![a, b]);
    }
    let mut first = t.out_neighbors(a).clone();
    first.difference_with(blocked);
    first.set(a, false);
    first.set(b, false);
    for m in first.ones() {
        if t.has_arc(m, b) {
            out.push(vec![a, m, b]);
        }
    }
    for m in first.ones() {
        for m2 in t.out_neighbors(m).ones() {
            if m2 != a && m2 != b && !blocked.contains(m2) && t.has_arc(m2, b) {
                out.push(vec![a, m, m2, b]);
            }
        }
    }
    out
}

/// Disjoint paths of length at most 3 from `sources[i]` to `targets[i]` in
/// `t`, found by exhaustive backtracking.
pub fn short_anchor_paths(t: &Digraph, sources: &[Vertex], targets: &[Vertex]) -> Option<Vec<Path>> {
    fn go(t: &Digraph, sources: &[Vertex], targets: &[Vertex], i: usize, used: &mut VertexSet, acc: &mut Vec<Path>) -> bool {
        if i == sources.len() {
            return true;
        }
        for p in short_paths(t, sources[i], targets[i], used) {
            let interior = &p[1..p.len() - 1];
            used.extend(interior.iter().copied());
            acc.push(p.clone());
            if go(t, sources, targets, i + 1, used, acc) {
                return true;
            }
            acc.pop();
            for &v in interior {
                used.set(v, false);
            }
        }
        false
    }
    let mut used = t.new_set();
    used.extend(sources.iter().copied());
    used.extend(targets.iter().copied());
    let mut acc = Vec::with_capacity(sources.len());
    go(t, sources, targets, 0, &mut used, &mut acc).then_some(acc)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap_or(i);
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn check_anchor_sets(t: &Digraph, u1: &[Vertex], u2: &[Vertex]) -> Result<(), Error> {
    if u1.len() != u2.len() {
        return Err(Error::SizeMismatch(u1.len(), u2.len()));
    }
    let mut seen = t.new_set();
    for &v in u1.iter().chain(u2) {
        t.check_vertex(v)?;
        if seen.put(v) {
            return Err(Error::SetOverlap(v));
        }
    }
    Ok(())
}

/// Whether `U1` short anchors `U2` in `t`: every bijection `U1 → U2` is
/// realized by disjoint paths of length at most 3.
pub fn verify_short_anchor(t: &Digraph, u1: &[Vertex], u2: &[Vertex]) -> Result<bool, Error> {
    check_anchor_sets(t, u1, u2)?;
    let mut perm: Vec<usize> = (0..u2.len()).collect();
    loop {
        let targets: Vec<Vertex> = perm.iter().map(|&i| u2[i]).collect();
        if short_anchor_paths(t, u1, &targets).is_none() {
            return Ok(false);
        }
        if !next_permutation(&mut perm) {
            return Ok(true);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnchorSearch {
    Found { u1: Vec<Vertex>, u2: Vec<Vertex> },
    NotFound,
    BudgetExceeded,
}

fn combinations(items: &[Vertex], k: usize, mut visit: impl FnMut(&[Vertex]) -> bool) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let pick: Vec<Vertex> = idx.iter().map(|&i| items[i]).collect();
        if !visit(&pick) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Searches for disjoint `k`-sets `U1`, `U2` such that `U1` short anchors
/// `U2`. Candidates with high out-degree (for `U1`) and high in-degree (for
/// `U2`) are tried first, then all pairs of `k`-sets in lexicographic order.
/// `budget` bounds the number of candidate pairs verified.
///
/// Existence is only guaranteed for `|T| ≥ 9k - 6`; smaller inputs are
/// rejected unless `allow_small` is set.
pub fn find_short_anchor_pair(t: &Digraph, k: usize, budget: u64, allow_small: bool) -> Result<AnchorSearch, Error> {
    t.require_semicomplete()?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = t.vertex_count();
    let needed = if allow_small { 2 * k } else { (9 * k).saturating_sub(6).max(2 * k) };
    if n < needed {
        return Err(Error::TooFewVertices { needed, available: n });
    }
    let mut left = budget;
    let mut by_out: Vec<Vertex> = t.vertices().collect();
    by_out.sort_by_key(|&v| (core::cmp::Reverse(t.out_degree(v)), v));
    let u1: Vec<Vertex> = by_out[..k].to_vec();
    let mut by_in: Vec<Vertex> = t.vertices().filter(|v| !u1.contains(v)).collect();
    by_in.sort_by_key(|&v| (core::cmp::Reverse(t.in_degree(v)), v));
    let u2: Vec<Vertex> = by_in[..k].to_vec();
    if left == 0 {
        return Ok(AnchorSearch::BudgetExceeded);
    }
    left -= 1;
    if verify_short_anchor(t, &u1, &u2)? {
        return Ok(AnchorSearch::Found { u1, u2 });
    }

    let vs: Vec<Vertex> = t.vertices().collect();
    let mut result = AnchorSearch::NotFound;
    combinations(&vs, k, |a| {
        let rest: Vec<Vertex> = vs.iter().copied().filter(|v| !a.contains(v)).collect();
        let mut keep_going = true;
        combinations(&rest, k, |b| {
            if left == 0 {
                result = AnchorSearch::BudgetExceeded;
                keep_going = false;
                return false;
            }
            left -= 1;
            if verify_short_anchor(t, a, b).unwrap_or(false) {
                result = AnchorSearch::Found { u1: a.to_vec(), u2: b.to_vec() };
                keep_going = false;
                return false;
            }
            true
        });
        keep_going
    });
    Ok(result)
}

/// Tunables of [`solve_lqt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LqtConfig {
    /// Pool size a new arc needs; `None` means [`f_threshold`].
    pub threshold: Option<usize>,
    /// Candidate pairs the short-anchor search may verify.
    pub anchor_budget: u64,
    pub options: SolveOptions,
}

impl Default for LqtConfig {
    fn default() -> Self {
        LqtConfig { threshold: None, anchor_budget: 200_000, options: SolveOptions::default() }
    }
}

/// Hands out available paths so that no vertex is used twice.
struct Reservations<'a> {
    aux: &'a AuxiliaryDigraph,
    d: &'a Digraph,
    used: VertexSet,
    chosen: BTreeMap<(Vertex, Vertex), Path>,
}

impl Reservations<'_> {
    /// Reserves an available path for `arc` whose interior avoids every
    /// vertex used so far.
    fn reserve(&mut self, arc: (Vertex, Vertex)) -> Result<Path, Failure> {
        if let Some(p) = self.chosen.get(&arc) {
            return Ok(p.clone());
        }
        let pool = self.aux.available.get(&arc).ok_or(Failure::assertion("new arc has a pool", Some(arc.0)))?;
        let pick = pool
            .iter()
            .find(|p| p[1..p.len() - 1].iter().all(|&v| !self.used.contains(v)))
            .ok_or(Failure::AvailablePathExhausted { arc })?
            .clone();
        self.used.extend(pick[1..pick.len() - 1].iter().copied());
        self.chosen.insert(arc, pick.clone());
        Ok(pick)
    }

    /// Replaces every arc of `path` missing from `D` by its reserved path.
    fn expand(&mut self, path: &[Vertex]) -> Result<Path, Failure> {
        let mut out = vec![path[0]];
        for w in path.windows(2) {
            if self.d.has_arc(w[0], w[1]) {
                out.push(w[1]);
            } else {
                let sub = self.reserve((w[0], w[1]))?;
                out.extend_from_slice(&sub[1..]);
            }
        }
        Ok(out)
    }
}

fn lqt_violations(d: &Digraph, l: usize, audit: &mut Audit) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    if !audit.strong {
        out.push(Hypothesis::NotStrong);
    }
    let witness = d.l_quasi_transitive_witness(l);
    audit.l_quasi_transitive = Some(witness.is_none());
    if let Some((u, v)) = witness {
        out.push(Hypothesis::NotLQuasiTransitive { l, u, v });
    }
    out
}

/// Links `pairs` in an `l`-quasi-transitive digraph. Strong connectivity and
/// `l`-quasi-transitivity are always required; `κ ≥ 81k²(l + 2)²` is audited
/// and only enforced on request.
pub fn solve_lqt(d: &Digraph, pairs: &[(Vertex, Vertex)], l: usize, config: LqtConfig) -> Result<SolveReport, Error> {
    validate_pairs(d, pairs)?;
    if l < 2 {
        return Err(Error::InvalidParameter(alloc::format!("l must be at least 2, got {l}")));
    }
    let k = pairs.len();
    let opts = config.options;
    let mut audit = Audit::basic(d, opts.enforce_hypotheses);
    audit.kappa_required = kappa_bound(k, l);
    let mut violations = lqt_violations(d, l, &mut audit);
    if !violations.is_empty() {
        return Ok(SolveReport::new("lqt", k, audit, Outcome::HypothesisViolated { violations }));
    }
    let kappa = KappaAudit::measure(d, audit.kappa_required, opts.kappa);
    audit.kappa = Some(kappa);
    let full = kappa.at_least(audit.kappa_required) == Some(true);
    if kappa.at_least(audit.kappa_required) == Some(false) {
        violations.push(Hypothesis::KappaBelow { required: audit.kappa_required, found: kappa });
    }
    if opts.enforce_hypotheses && !violations.is_empty() {
        return Ok(SolveReport::new("lqt", k, audit, Outcome::HypothesisViolated { violations }));
    }
    let threshold = match config.threshold {
        Some(t) => t,
        None => f_threshold(k, l)?,
    };
    let mut counters = BTreeMap::new();
    let outcome = match lqt_pipeline(d, pairs, l, threshold, config.anchor_budget, full.then_some(kappa.lower_bound()), &mut counters) {
        Ok(paths) => Outcome::Linked { paths },
        Err((stage, failure)) => Outcome::StageFailed { stage, failure },
    };
    let mut report = SolveReport::new("lqt", k, audit, outcome);
    report.counters = counters;
    Ok(report)
}

fn lqt_pipeline(
    d: &Digraph,
    pairs: &[(Vertex, Vertex)],
    l: usize,
    threshold: usize,
    anchor_budget: u64,
    full_kappa: Option<usize>,
    counters: &mut BTreeMap<alloc::string::String, usize>,
) -> StageResult<PathSystem> {
    let k = pairs.len();
    let xs: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
    if let Some(kappa) = full_kappa {
        let f = f_threshold(k, l).at(Stage::Auxiliary)?;
        if kappa < 2 * k + 2 * f * (l + 2) + 1 {
            return Err((Stage::Auxiliary, Failure::assertion("κ - 2k - 2f(k,l)(l+2) > 0", None)));
        }
    }

    let aux = build_auxiliary(d, &xs, &ys, l, threshold).map_err(|f| (Stage::Auxiliary, f))?;
    counters.insert("new_arcs".into(), aux.new_arcs.len());
    counters.insert("terminal_arcs".into(), aux.terminal_arcs.len());
    counters.insert("key_checks".into(), aux.key_checks);
    let dp = &aux.dprime;

    let m = 9 * k - 6;
    let u = nearly_in_dominating_set(dp, &xs, &ys, m).at(Stage::DominatingSet)?;
    let u_set = d.vertex_set(&u).at(Stage::DominatingSet)?;
    let t_u = dp.induced_set(&u_set).spanning_tournament().at(Stage::AnchorPair)?;
    let (u1, u2) = match find_short_anchor_pair(&t_u, k, anchor_budget, true).at(Stage::AnchorPair)? {
        AnchorSearch::Found { u1, u2 } => (u1, u2),
        AnchorSearch::NotFound => return Err((Stage::AnchorPair, Failure::AnchorNotFound)),
        AnchorSearch::BudgetExceeded => {
            return Err((Stage::AnchorPair, Failure::BudgetExceeded { budget: anchor_budget }))
        }
    };

    // X → U1 through x⁺ (and x⁺⁺) in D′0.
    let mut terminals = d.vertex_set(&xs).at(Stage::LinkToAnchor)?;
    terminals.union_with(&d.vertex_set(&ys).at(Stage::LinkToAnchor)?);
    let dp0 = dp.delete_set(&terminals);
    let mut blocked = terminals.clone();
    blocked.union_with(&u_set);
    let c = 11 * k;
    let width = |v: Vertex, target: Vertex| {
        let mut mids = dp0.out_neighbors(v).clone();
        mids.intersect_with(dp0.in_neighbors(target));
        mids.count_ones(..)
    };
    let mut pluses = Vec::with_capacity(k);
    let mut below_c = 0;
    for (i, &x) in xs.iter().enumerate() {
        let target = u1[i];
        let mut cands = d.out_neighbors(x).clone();
        cands.difference_with(&blocked);
        // Prefer c-good candidates; otherwise the widest one.
        let pick = cands
            .ones()
            .find(|&v| dp0.has_arc(v, target) || width(v, target) >= c)
            .or_else(|| {
                below_c += 1;
                cands.ones().filter(|&v| width(v, target) > 0).max_by_key(|&v| (width(v, target), core::cmp::Reverse(v)))
            });
        let Some(plus) = pick else {
            return Err((Stage::LinkToAnchor, Failure::exhausted("x⁺ candidates", Some(x))));
        };
        blocked.insert(plus);
        pluses.push(plus);
    }
    counters.insert("x_plus_below_11k".into(), below_c);
    let mut rough = Vec::with_capacity(k);
    for (i, &x) in xs.iter().enumerate() {
        let (plus, target) = (pluses[i], u1[i]);
        if dp0.has_arc(plus, target) {
            rough.push(vec![x, plus, target]);
            continue;
        }
        let mut mids = dp0.out_neighbors(plus).clone();
        mids.intersect_with(dp0.in_neighbors(target));
        mids.difference_with(&blocked);
        let Some(mid) = mids.ones().next() else {
            return Err((Stage::LinkToAnchor, Failure::exhausted("x⁺⁺ candidates", Some(x))));
        };
        blocked.insert(mid);
        rough.push(vec![x, plus, mid, target]);
    }

    let mut res = Reservations { aux: &aux, d, used: blocked.clone(), chosen: BTreeMap::new() };
    let mut heads = Vec::with_capacity(k);
    for p in &rough {
        heads.push(res.expand(p).map_err(|f| (Stage::LinkToAnchor, f))?);
    }

    // U*: one reserved path for every new arc inside U.
    let mut u_star = d.new_set();
    for (idx, &a) in u.iter().enumerate() {
        for &b in &u[idx + 1..] {
            if d.adjacent(a, b) {
                continue;
            }
            let arc = if t_u.has_arc(a, b) { (a, b) } else { (b, a) };
            let p = res.reserve(arc).map_err(|f| (Stage::ReserveInside, f))?;
            u_star.extend(p.iter().copied());
        }
    }
    let mut u_all = u_star.clone();
    u_all.union_with(&u_set);
    let bound = binom2(m) * (l + 2);
    if u_all.count_ones(..) > bound {
        return Err((Stage::ReserveInside, Failure::assertion("|U* ∪ U| <= C(9k-6, 2)(l+2)", None)));
    }
    counters.insert("u_star".into(), u_star.count_ones(..));

    // B = V(P″) ∪ U* ∪ U; route U2 → Y around it.
    let mut b_set = u_all;
    for p in &heads {
        b_set.extend(p.iter().copied());
    }
    if let Some(kappa) = full_kappa {
        if b_set.count_ones(..) >= kappa {
            return Err((Stage::RouteToTargets, Failure::assertion("|B| < κ", None)));
        }
    }
    let avoid: Vec<Vertex> = b_set.ones().filter(|v| !u2.contains(v)).collect();
    let tails = match menger_set_paths(d, &u2, &ys, &avoid).at(Stage::RouteToTargets)? {
        MengerOutcome::Linked { paths } => paths.paths,
        MengerOutcome::Infeasible { separator, max_paths } => {
            return Err((Stage::RouteToTargets, Failure::Infeasible { separator, max_paths }))
        }
    };
    let starts: Vec<Vertex> = tails.iter().map(|p| p[0]).collect();

    let links = short_anchor_paths(&t_u, &u1, &starts)
        .ok_or((Stage::AnchorLinks, Failure::exhausted("short anchor paths for the routed bijection", None)))?;
    let mut paths = Vec::with_capacity(k);
    for i in 0..k {
        let middle = res.expand(&links[i]).map_err(|f| (Stage::AnchorLinks, f))?;
        let mut p = heads[i].clone();
        p.extend_from_slice(&middle[1..]);
        p.extend_from_slice(&tails[i][1..]);
        paths.push(p);
    }
    let mut system = PathSystem::new(paths, "lqt");
    system.pairs = pairs.to_vec();
    if let Some(violation) = verify_linkage(d, pairs, &system).violation {
        return Err((Stage::Verify, Failure::Verification { violation }));
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{CompositionSpec, Part};

    #[test]
    fn threshold_examples() {
        assert_eq!(f_threshold(1, 2).unwrap(), 30);
        assert_eq!(f_threshold(2, 2).unwrap(), 300);
        assert_eq!(f_threshold(1, 3).unwrap(), 35);
        assert!(f_threshold(0, 2).is_err());
        assert!(f_threshold(1, 1).is_err());
    }

    #[test]
    fn short_path_examples() {
        let k8 = Digraph::complete(8);
        let sp = independent_short_paths(&k8, 0, 1, 2, 6).unwrap();
        assert_eq!(sp.forward.len(), 6);
        let p3 = Digraph::path(3);
        let sp = independent_short_paths(&p3, 0, 2, 2, usize::MAX).unwrap();
        assert_eq!(sp.forward, vec![vec![0, 1, 2]]);
        assert!(sp.backward.is_empty());
        let arc = Digraph::path(2);
        assert_eq!(independent_short_paths(&arc, 0, 1, 2, usize::MAX).unwrap().forward, vec![vec![0, 1]]);
    }

    /// Outer tournament: vertex 0 (part {u, v}) beats a1..a3, which beat
    /// b1..b3 via a_i → b_i only, b_j → a_i otherwise, and b's beat 0.
    pub(crate) fn gadget() -> (Digraph, Vertex, Vertex) {
        let mut outer = Digraph::empty(7);
        for i in 1..=3 {
            outer.insert_arc_unchecked(0, i);
            outer.insert_arc_unchecked(i + 3, 0);
            for j in 1..=3 {
                if i == j {
                    outer.insert_arc_unchecked(i, j + 3);
                } else {
                    outer.insert_arc_unchecked(j + 3, i);
                }
            }
        }
        for i in 1..=3 {
            for j in i + 1..=3 {
                outer.insert_arc_unchecked(i, j);
                outer.insert_arc_unchecked(i + 3, j + 3);
            }
        }
        let mut parts = vec![Part::arcless(vec![0, 1])];
        parts.extend((2..8).map(|v| Part::arcless(vec![v])));
        let d = CompositionSpec { outer, parts }.compose().unwrap();
        (d, 0, 1)
    }

    #[test]
    fn gadget_gets_one_new_arc() {
        let (d, u, v) = gadget();
        assert!(d.is_tournament() || d.non_adjacent_pair() == Some((u, v)));
        assert!(d.is_l_quasi_transitive(2));
        let aux = build_auxiliary(&d, &[], &[], 2, 3).unwrap();
        assert_eq!(aux.new_arcs, vec![(u, v)]);
        let pool = &aux.available[&(u, v)];
        assert_eq!(pool.len(), 3);
        assert!(pool.iter().all(|p| p.len() == 4));
        assert!(aux.key_checks > 0);
    }

    #[test]
    fn semicomplete_input_adds_no_new_arcs() {
        let d = crate::generators::random_tournament(9, 2);
        if d.is_strong() {
            let aux = build_auxiliary(&d, &[0], &[1], 2, 5).unwrap();
            assert!(aux.new_arcs.is_empty() && aux.available.is_empty());
        }
    }

    #[test]
    fn threshold_unreachable() {
        let d = crate::generators::circulant_tournament(29).unwrap();
        let mut d = d;
        d.remove_arc(0, 1);
        let f = f_threshold(2, 2).unwrap();
        assert!(matches!(build_auxiliary(&d, &[], &[], 2, f), Err(Failure::ThresholdUnreachable { .. }) | Err(Failure::NotLQuasiTransitive { .. })));
    }

    #[test]
    fn anchor_examples() {
        let arc = Digraph::path(2);
        assert!(verify_short_anchor(&arc, &[0], &[1]).unwrap());
        let t = Digraph::transitive_tournament(6);
        let mut far = Digraph::path(5);
        for (a, b) in [(2, 0), (3, 0), (4, 0), (3, 1), (4, 1), (4, 2)] {
            far.insert_arc_unchecked(a, b);
        }
        assert!(far.is_tournament());
        assert!(!verify_short_anchor(&far, &[0], &[4]).unwrap());
        assert!(verify_short_anchor(&t, &[0], &[5]).unwrap());
        assert_eq!(verify_short_anchor(&t, &[0, 1], &[2]), Err(Error::SizeMismatch(2, 1)));
    }

    #[test]
    fn anchor_search_k2() {
        let t = crate::generators::random_tournament(12, 5);
        match find_short_anchor_pair(&t, 2, 1_000_000, false).unwrap() {
            AnchorSearch::Found { u1, u2 } => assert!(verify_short_anchor(&t, &u1, &u2).unwrap()),
            other => panic!("{other:?}"),
        }
        let small = crate::generators::random_tournament(11, 5);
        assert!(matches!(find_short_anchor_pair(&small, 2, 10, false), Err(Error::TooFewVertices { .. })));
        assert!(find_short_anchor_pair(&small, 2, 1_000_000, true).is_ok());
    }

    #[test]
    fn not_strong_is_reported() {
        let d = Digraph::transitive_tournament(8);
        let report = solve_lqt(&d, &[(0, 7)], 2, LqtConfig::default()).unwrap();
        assert!(matches!(report.outcome, Outcome::HypothesisViolated { ref violations } if violations.contains(&Hypothesis::NotStrong)));
    }
}
