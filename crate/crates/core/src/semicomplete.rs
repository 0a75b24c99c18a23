//! Linkages in highly connected semicomplete digraphs.
//!
//! Pipeline for `k` pairs:
//!
//! 1. `U`: `3k` iterated nearly in-dominating vertices of `D \ (X ∪ Y)`.
//! 2. Split `X` into `X1` (matched to distinct out-neighbours `x⁺` that are
//!    `2k`-out-dominators of `U`) and `X2`.
//! 3. `Q`: `k` disjoint `U → Y` paths of minimum total order avoiding
//!    `X ∪ {x⁺}`; `q_i` starts the path ending at `y_i`.
//! 4. `P1`: paths `x·x⁺·p` with `p ∈ U \ Ini(Q)`.
//! 5. `P2`: short `(x_j, q_j)`-paths for `x_j ∈ X2` by [`anchor_into_set`].
//! 6. `R`: short `(p_i, q_i)`-paths for `x_i ∈ X1`, again by the anchor.
//! 7. Concatenate and certify.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::connectivity::{min_vertex_menger, MengerOutcome};
use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::dominators::nearly_in_dominating_set;
use crate::oracle::verify_linkage;
use crate::paths::{Path, PathSystem};
use crate::report::{
    AtStage, Audit, Failure, Hypothesis, KappaAudit, Outcome, SolveOptions, SolveReport, Stage, StageResult,
};
use crate::{Error, LinkageInstance};

/// `X1`, the matching `x ↦ x⁺` on it, and `X2 = X \ X1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalPartition {
    pub x1: Vec<Vertex>,
    pub matching: Vec<(Vertex, Vertex)>,
    pub x2: Vec<Vertex>,
}

/// `X1` holds the `x` with at least `k` out-neighbours outside `X ∪ Y ∪ U`
/// that are `2k`-out-dominators of `U`. Matches are chosen greedily in the
/// order of `xs`, smallest candidate id first.
pub fn partition_terminals(
    d: &Digraph,
    xs: &[Vertex],
    ys: &[Vertex],
    u: &[Vertex],
    k: usize,
) -> Result<TerminalPartition, Error> {
    let x_set = d.vertex_set(xs)?;
    let y_set = d.vertex_set(ys)?;
    let u_set = d.vertex_set(u)?;
    let mut outside = d.alive().clone();
    outside.difference_with(&x_set);
    outside.difference_with(&y_set);
    outside.difference_with(&u_set);
    let mut dominators = d.new_set();
    dominators.extend(outside.ones().filter(|&v| d.out_neighbors(v).intersection_count(&u_set) >= 2 * k));
    let mut part = TerminalPartition { x1: Vec::new(), matching: Vec::new(), x2: Vec::new() };
    let mut candidates = Vec::with_capacity(xs.len());
    for &x in xs {
        let mut c = d.out_neighbors(x).clone();
        c.intersect_with(&dominators);
        candidates.push(c);
    }
    for (&x, c) in xs.iter().zip(&candidates) {
        if c.count_ones(..) >= k {
            part.x1.push(x);
        } else {
            part.x2.push(x);
        }
    }
    for (&x, c) in xs.iter().zip(&candidates) {
        if !part.x1.contains(&x) {
            continue;
        }
        let mut free = c.clone();
        free.intersect_with(&dominators);
        // At least k candidates and at most k - 1 earlier picks.
        let plus = free.ones().next().expect("a free 2k-out-dominator exists by counting");
        dominators.set(plus, false);
        part.matching.push((x, plus));
    }
    Ok(part)
}

/// The fixed data the anchoring construction works against: the terminal
/// sets, the nearly in-dominating set `U` and the minimum path system `Q`.
#[derive(Debug, Clone)]
pub struct AnchorFrame<'a> {
    pub d: &'a Digraph,
    pub k: usize,
    x: VertexSet,
    y: VertexSet,
    u: VertexSet,
    ini_q: VertexSet,
    /// `U \ Ini(Q)`.
    u_free: VertexSet,
    vq: VertexSet,
    y2: VertexSet,
    y3: VertexSet,
}

impl<'a> AnchorFrame<'a> {
    pub fn new(d: &'a Digraph, xs: &[Vertex], ys: &[Vertex], u: &[Vertex], q: &PathSystem) -> Result<Self, Error> {
        let n = d.order();
        let x = d.vertex_set(xs)?;
        let y = d.vertex_set(ys)?;
        let u_set = d.vertex_set(u)?;
        let ini_q = d.vertex_set(&q.initials())?;
        let mut u_free = u_set.clone();
        u_free.difference_with(&ini_q);
        Ok(AnchorFrame {
            d,
            k: xs.len(),
            x,
            y,
            u: u_set,
            ini_q,
            u_free,
            vq: q.vertex_set(n),
            y2: q.layer(2, n),
            y3: q.layer(3, n),
        })
    }

    fn has_free_in_neighbor(&self, v: Vertex) -> bool {
        !self.d.in_neighbors(v).is_disjoint(&self.u_free)
    }

    /// Out-neighbours of `a` outside `X ∪ Y ∪ U` that are 1-in-dominators of
    /// `U \ Ini(Q)`.
    pub fn qualifying_out_neighbors(&self, a: Vertex) -> usize {
        self.d
            .out_neighbors(a)
            .ones()
            .filter(|&v| !self.x.contains(v) && !self.y.contains(v) && !self.u.contains(v))
            .filter(|&v| self.has_free_in_neighbor(v))
            .count()
    }

    /// Middle vertices of `(v, q)`-2-paths in `D \ (X ∪ Y)`.
    fn width_outside_terminals(&self, v: Vertex, q: Vertex) -> usize {
        let mut mids = self.d.out_neighbors(v).clone();
        mids.intersect_with(self.d.in_neighbors(q));
        mids.difference_with(&self.x);
        mids.difference_with(&self.y);
        mids.set(v, false);
        mids.set(q, false);
        mids.count_ones(..)
    }
}

/// Disjoint `(a_i, s_i)`-paths of the form `a·a⁺·s` or `a·a⁺·a⁺⁺·s` avoiding
/// `W`, `X` and `V(Q) \ S`, under the stated out-neighbour precondition.
pub fn anchor_into_set(frame: &AnchorFrame<'_>, w: &[Vertex], a: &[Vertex], s: &[Vertex]) -> Result<PathSystem, Failure> {
    let w_set = frame.d.vertex_set(w)?;
    anchor(frame, &w_set, a, s, true)
}

fn anchor(frame: &AnchorFrame<'_>, w: &VertexSet, a: &[Vertex], s: &[Vertex], strict: bool) -> Result<PathSystem, Failure> {
    let d = frame.d;
    let k = frame.k;
    if a.len() != s.len() {
        return Err(Error::SizeMismatch(a.len(), s.len()).into());
    }
    if a.len() > k {
        return Err(Failure::precondition("|A| <= k", None));
    }
    if a.is_empty() {
        return Ok(PathSystem::new(Vec::new(), "anchor"));
    }
    if let Some(v) = w.ones().find(|&v| frame.x.contains(v) || frame.y.contains(v)) {
        return Err(Failure::precondition("W disjoint from X and Y", Some(v)));
    }
    if let Some(&v) = a.iter().find(|&&v| w.contains(v) || frame.ini_q.contains(v)) {
        return Err(Failure::precondition("A avoids W and Ini(Q)", Some(v)));
    }
    if let Some(&v) = s.iter().find(|&&v| !frame.ini_q.contains(v) || w.contains(v)) {
        return Err(Failure::precondition("S within Ini(Q) \\ W", Some(v)));
    }
    let need = 7 * k + 3 * w.count_ones(..) + 7 * a.len();
    if strict {
        if let Some(&v) = a.iter().find(|&&v| frame.qualifying_out_neighbors(v) < need) {
            return Err(Failure::precondition("out-neighbours dominating U \\ Ini(Q)", Some(v)));
        }
    }
    let c = 3 * k + w.count_ones(..) + 3 * a.len();
    let mut a_set = d.new_set();
    a_set.extend(a.iter().copied());

    // (i): a⁺ avoids X ∪ Y ∪ U ∪ Y2 ∪ W (and A).
    let mut plus_blocked = frame.x.clone();
    plus_blocked.union_with(&frame.y);
    plus_blocked.union_with(&frame.u);
    plus_blocked.union_with(&frame.y2);
    plus_blocked.union_with(w);
    plus_blocked.union_with(&a_set);

    // a⁺⁺ avoids X ∪ Y ∪ A ∪ Ini(Q) ∪ Y2 ∪ Y3 ∪ W and every a⁺.
    let mut mid_blocked = frame.x.clone();
    mid_blocked.union_with(&frame.y);
    mid_blocked.union_with(&a_set);
    mid_blocked.union_with(&frame.ini_q);
    mid_blocked.union_with(&frame.y2);
    mid_blocked.union_with(&frame.y3);
    mid_blocked.union_with(w);

    let completable = |v: Vertex, q: Vertex, blocked: &VertexSet| {
        d.has_arc(v, q) || {
            let mut mids = d.out_neighbors(v).clone();
            mids.intersect_with(d.in_neighbors(q));
            mids.difference_with(blocked);
            mids.set(v, false);
            !mids.is_clear()
        }
    };

    let mut pluses = Vec::with_capacity(a.len());
    for (&ai, &qi) in a.iter().zip(s) {
        let mut cands = d.out_neighbors(ai).clone();
        cands.difference_with(&plus_blocked);
        let eligible = |v: &Vertex| frame.has_free_in_neighbor(*v);
        let good = cands
            .ones()
            .filter(eligible)
            .find(|&v| d.has_arc(v, qi) || frame.width_outside_terminals(v, qi) >= c);
        let pick = match good {
            Some(v) => Some(v),
            None if !strict => cands.ones().filter(eligible).find(|&v| completable(v, qi, &mid_blocked)),
            None => None,
        };
        let Some(plus) = pick else {
            return Err(Failure::exhausted("a⁺ candidates", Some(ai)));
        };
        plus_blocked.insert(plus);
        pluses.push(plus);
    }
    mid_blocked.extend(pluses.iter().copied());

    let mut paths = Vec::with_capacity(a.len());
    for ((&ai, &qi), &plus) in a.iter().zip(s).zip(&pluses) {
        if d.has_arc(plus, qi) {
            paths.push(vec![ai, plus, qi]);
            continue;
        }
        let mut mids = d.out_neighbors(plus).clone();
        mids.intersect_with(d.in_neighbors(qi));
        mids.difference_with(&mid_blocked);
        let Some(mid) = mids.ones().next() else {
            return Err(Failure::exhausted("a⁺⁺ candidates", Some(ai)));
        };
        mid_blocked.insert(mid);
        paths.push(vec![ai, plus, mid, qi]);
    }

    let mut s_set = d.new_set();
    s_set.extend(s.iter().copied());
    for p in &paths {
        for &v in p {
            if frame.vq.contains(v) && !s_set.contains(v) {
                return Err(Failure::assertion("anchor paths avoid V(Q) \\ S", Some(v)));
            }
            if w.contains(v) || (frame.x.contains(v) && !a_set.contains(v)) {
                return Err(Failure::assertion("anchor paths avoid W and X", Some(v)));
            }
        }
    }
    Ok(PathSystem::new(paths, "anchor"))
}

fn join(parts: &[&[Vertex]]) -> Path {
    let mut out: Path = Vec::new();
    for p in parts {
        match out.last() {
            Some(&last) if p.first() == Some(&last) => out.extend_from_slice(&p[1..]),
            _ => out.extend_from_slice(p),
        }
    }
    out
}

/// Matches each `x ∈ X1` (through its `x⁺`) to a distinct `p ∈ U \ Ini(Q)`
/// with `x⁺ → p`. Augmenting paths let a later terminal displace an earlier
/// choice.
fn match_two_paths(d: &Digraph, matching: &[(Vertex, Vertex)], targets: &VertexSet) -> Option<Vec<Vertex>> {
    fn augment(
        d: &Digraph,
        i: usize,
        matching: &[(Vertex, Vertex)],
        targets: &VertexSet,
        owner: &mut BTreeMap<Vertex, usize>,
        seen: &mut VertexSet,
    ) -> bool {
        let mut cands = d.out_neighbors(matching[i].1).clone();
        cands.intersect_with(targets);
        for p in cands.ones() {
            if seen.put(p) {
                continue;
            }
            let free = match owner.get(&p) {
                None => true,
                Some(&j) => augment(d, j, matching, targets, owner, seen),
            };
            if free {
                owner.insert(p, i);
                return true;
            }
        }
        false
    }
    let mut owner = BTreeMap::new();
    for i in 0..matching.len() {
        if !augment(d, i, matching, targets, &mut owner, &mut d.new_set()) {
            return None;
        }
    }
    let mut out = vec![0; matching.len()];
    for (p, i) in owner {
        out[i] = p;
    }
    Some(out)
}

/// Counters reported by the pipeline.
pub(crate) type Counters = BTreeMap<String, usize>;

/// Stages 1-7 on an instance with no direct `x_i → y_i` arc requirement.
/// `strict` turns on the precondition checks that the solver's hypotheses
/// guarantee.
pub(crate) fn pipeline(d: &Digraph, pairs: &[(Vertex, Vertex)], strict: bool) -> StageResult<(PathSystem, Counters)> {
    let k = pairs.len();
    let xs: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
    let mut counters = Counters::new();

    let u = nearly_in_dominating_set(d, &xs, &ys, 3 * k).at(Stage::DominatingSet)?;
    if strict {
        let used = 2 * k + u.len();
        let delta = d.min_out_degree().unwrap_or(0);
        if delta < 22 * k || delta - used - (k - 1) < 16 * k {
            return Err((Stage::DominatingSet, Failure::assertion("out-degree margin of 16k", None)));
        }
    }

    let part = partition_terminals(d, &xs, &ys, &u, k).at(Stage::PartitionTerminals)?;
    counters.insert("x1".into(), part.x1.len());

    let mut avoid = xs.clone();
    avoid.extend(part.matching.iter().map(|m| m.1));
    let q = match min_vertex_menger(d, &u, &ys, &avoid).at(Stage::MinVertexMenger)? {
        MengerOutcome::Linked { paths } => paths,
        MengerOutcome::Infeasible { separator, max_paths } => {
            return Err((Stage::MinVertexMenger, Failure::Infeasible { separator, max_paths }))
        }
    };
    let u_set = d.vertex_set(&u).at(Stage::MinVertexMenger)?;
    for path in &q.paths {
        if let Some(&v) = path[1..].iter().find(|&&v| u_set.contains(v)) {
            return Err((Stage::MinVertexMenger, Failure::assertion("only initial vertices of Q in U", Some(v))));
        }
    }
    let q_of: BTreeMap<Vertex, &Path> = q.paths.iter().map(|p| (p[p.len() - 1], p)).collect();
    let start_of = |x: Vertex| {
        let y = pairs.iter().find(|p| p.0 == x).map(|p| p.1).unwrap_or(x);
        q_of[&y][0]
    };

    let frame = AnchorFrame::new(d, &xs, &ys, &u, &q).at(Stage::MinVertexMenger)?;
    let ps = match_two_paths(d, &part.matching, &frame.u_free)
        .ok_or((Stage::TwoPaths, Failure::exhausted("distinct p in U \\ Ini(Q)", None)))?;
    let p1: Vec<Path> = part.matching.iter().zip(&ps).map(|(&(x, plus), &p)| vec![x, plus, p]).collect();

    // Ter(P1) joins W here so that no a⁺⁺ lands on a p that the matched
    // terminals still have to leave from.
    let mut w = d.new_set();
    for p in &p1 {
        w.insert(p[1]);
        w.insert(p[2]);
    }
    let s2: Vec<Vertex> = part.x2.iter().map(|&x| start_of(x)).collect();
    let p2 = anchor(&frame, &w, &part.x2, &s2, strict).at(Stage::AnchorUnmatched)?;

    let mut w = d.new_set();
    for p in p1.iter().chain(&p2.paths) {
        w.extend(p[1..p.len() - 1].iter().copied());
    }
    let s1: Vec<Vertex> = part.x1.iter().map(|&x| start_of(x)).collect();
    let r = anchor(&frame, &w, &ps, &s1, strict).at(Stage::AnchorMatched)?;

    let anchors_long = p2.paths.iter().chain(&r.paths).filter(|p| p.len() == 4).count();
    counters.insert("anchor_paths_length_3".into(), anchors_long);

    let mut paths = Vec::with_capacity(k);
    for &(x, y) in pairs {
        let tail = q_of[&y];
        let path = if let Some(i) = part.x1.iter().position(|&v| v == x) {
            join(&[&p1[i], &r.paths[i], tail])
        } else {
            let i = part.x2.iter().position(|&v| v == x).unwrap_or(0);
            join(&[&p2.paths[i], tail])
        };
        paths.push(path);
    }
    let mut system = PathSystem::new(paths, "semicomplete");
    system.pairs = pairs.to_vec();
    let verdict = verify_linkage(d, pairs, &system);
    if let Some(violation) = verdict.violation {
        return Err((Stage::Verify, Failure::Verification { violation }));
    }
    Ok((system, counters))
}

pub(crate) fn semicomplete_violations(d: &Digraph, audit: &Audit) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    if let Some((u, v)) = d.non_adjacent_pair() {
        out.push(Hypothesis::NotSemicomplete { u, v });
    }
    if let Some(kappa) = audit.kappa {
        if kappa.at_least(audit.kappa_required) == Some(false) {
            out.push(Hypothesis::KappaBelow { required: audit.kappa_required, found: kappa });
        }
    }
    if audit.min_out_degree < audit.min_out_degree_required {
        out.push(Hypothesis::MinOutDegreeBelow { required: audit.min_out_degree_required, found: audit.min_out_degree });
    }
    out
}

/// Splits off the pairs with a direct arc `x_i → y_i`, returning their
/// indices and the digraph without their terminals.
pub(crate) fn peel_direct(d: &Digraph, pairs: &[(Vertex, Vertex)]) -> (Vec<usize>, Digraph) {
    let direct: Vec<usize> = (0..pairs.len()).filter(|&i| d.has_arc(pairs[i].0, pairs[i].1)).collect();
    let mut gone = d.new_set();
    for &i in &direct {
        gone.insert(pairs[i].0);
        gone.insert(pairs[i].1);
    }
    (direct, d.delete_set(&gone))
}

/// Links the pairs of `inst`, auditing `κ ≥ 3k`, `δ⁺ ≥ 22k` and
/// semicompleteness first.
pub fn solve_semicomplete(inst: &LinkageInstance, opts: SolveOptions) -> SolveReport {
    let d = &inst.digraph;
    let pairs = &inst.pairs;
    let k = pairs.len();
    let mut audit = Audit::basic(d, opts.enforce_hypotheses);
    audit.kappa_required = 3 * k;
    audit.min_out_degree_required = 22 * k;
    audit.kappa = Some(KappaAudit::measure(d, 3 * k, opts.kappa));
    let finish = |audit: Audit, outcome| SolveReport::new("semicomplete", k, audit, outcome);

    if pairs.iter().all(|&(x, y)| d.has_arc(x, y)) {
        let mut ps = PathSystem::new(pairs.iter().map(|&(x, y)| vec![x, y]).collect(), "direct");
        ps.pairs = pairs.clone();
        let mut report = finish(audit, Outcome::Linked { paths: ps });
        report.counters.insert("peeled".into(), k);
        return report;
    }
    let violations = semicomplete_violations(d, &audit);
    if opts.enforce_hypotheses && !violations.is_empty() {
        return finish(audit, Outcome::HypothesisViolated { violations });
    }
    let strict = violations.is_empty() && audit.kappa.is_some_and(|a| a.at_least(3 * k) == Some(true));

    let (direct, rest) = peel_direct(d, pairs);
    let remaining: Vec<(Vertex, Vertex)> =
        (0..k).filter(|i| !direct.contains(i)).map(|i| pairs[i]).collect();
    let (sub, mut counters) = match pipeline(&rest, &remaining, strict) {
        Ok(v) => v,
        Err((stage, failure)) => return finish(audit, Outcome::StageFailed { stage, failure }),
    };
    counters.insert("peeled".into(), direct.len());
    let mut sub_paths = sub.paths.into_iter();
    let paths: Vec<Path> = (0..k)
        .map(|i| if direct.contains(&i) { vec![pairs[i].0, pairs[i].1] } else { sub_paths.next().unwrap_or_default() })
        .collect();
    let mut ps = PathSystem::new(paths, "semicomplete");
    ps.pairs = pairs.clone();
    let outcome = match verify_linkage(d, pairs, &ps).violation {
        None => Outcome::Linked { paths: ps },
        Some(violation) => Outcome::StageFailed { stage: Stage::Verify, failure: Failure::Verification { violation } },
    };
    let mut report = finish(audit, outcome);
    report.counters = counters;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_tournament;

    fn inst(d: &Digraph, pairs: &[(Vertex, Vertex)]) -> LinkageInstance {
        LinkageInstance::new(d.clone(), pairs.to_vec()).unwrap()
    }

    #[test]
    fn complete_digraph_links_directly() {
        let k = 3;
        let d = Digraph::complete(5 * k);
        let report = solve_semicomplete(&inst(&d, &[(0, 7), (3, 1), (14, 2)]), SolveOptions::default());
        let ps = report.outcome.paths().expect("linked");
        assert!(ps.paths.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn transitive_tournament_violates_kappa() {
        let d = Digraph::transitive_tournament(12);
        let report = solve_semicomplete(&inst(&d, &[(5, 0), (9, 2)]), SolveOptions::default());
        match report.outcome {
            Outcome::HypothesisViolated { violations } => {
                assert!(violations.contains(&Hypothesis::KappaBelow { required: 6, found: KappaAudit::Exact(0) }));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn partition_on_complete_digraph() {
        let k = 2;
        let d = Digraph::complete(7 * k);
        let (xs, ys) = ([0, 1], [2, 3]);
        let u = nearly_in_dominating_set(&d, &xs, &ys, 3 * k).unwrap();
        let part = partition_terminals(&d, &xs, &ys, &u, k).unwrap();
        assert_eq!(part.x1, vec![0, 1]);
        assert!(part.x2.is_empty());
        assert_ne!(part.matching[0].1, part.matching[1].1);
    }

    #[test]
    fn partition_without_dominators() {
        // Everything outside U is dominated by U: no 2k-out-dominators.
        let mut d = Digraph::transitive_tournament(10);
        for v in 1..10 {
            d.ensure_arc(v, 0);
        }
        let u = [0, 1, 2];
        let part = partition_terminals(&d, &[8], &[9], &u, 1).unwrap();
        assert!(part.x1.is_empty());
        assert_eq!(part.x2, vec![8]);
    }

    #[test]
    fn anchor_with_empty_a() {
        let d = Digraph::complete(6);
        let q = PathSystem::new(vec![vec![2, 1]], "");
        let frame = AnchorFrame::new(&d, &[0], &[1], &[2, 3, 4], &q).unwrap();
        assert!(anchor_into_set(&frame, &[], &[], &[]).unwrap().is_empty());
    }

    #[test]
    fn anchor_precondition_boundary() {
        // k = 1, W = ∅, |A| = 1: the bound is 7 + 0 + 7 = 14.
        let k = 1;
        let need = 14;
        let n = 2 + 3 + need;
        let d = Digraph::complete(n);
        let (x, y) = (0, 1);
        let u = [2, 3, 4];
        let q = PathSystem::new(vec![vec![2, y]], "");
        let frame = AnchorFrame::new(&d, &[x], &[y], &u, &q).unwrap();
        assert_eq!(frame.k, k);
        assert_eq!(frame.qualifying_out_neighbors(x), need);
        let ps = anchor_into_set(&frame, &[], &[x], &[2]).unwrap();
        assert_eq!(ps.paths, vec![vec![x, 5, 2]]);

        let mut thin = d.clone();
        thin.remove_arc(x, n - 1);
        let frame = AnchorFrame::new(&thin, &[x], &[y], &u, &q).unwrap();
        assert_eq!(frame.qualifying_out_neighbors(x), need - 1);
        assert!(matches!(
            anchor_into_set(&frame, &[], &[x], &[2]),
            Err(Failure::Precondition { vertex: Some(0), .. })
        ));
    }

    #[test]
    fn random_tournament_pipeline() {
        let d = random_tournament(200, 3);
        let report = solve_semicomplete(&inst(&d, &[(0, 1), (2, 3)]), SolveOptions::default());
        if report.audit.min_out_degree >= 44 {
            let ps = report.outcome.paths().unwrap_or_else(|| panic!("{:?}", report.outcome));
            assert!(verify_linkage(&d, &[(0, 1), (2, 3)], ps).pass);
        }
    }
}
