//! Linkages in semicomplete compositions `H[S_1, ..., S_h]`.
//!
//! Pairs joined by an arc are peeled off first. With two nonempty parts left
//! a pair is routed through a common neighbour, otherwise the instance is
//! reduced to a semicomplete digraph `D′` on the same vertices whose minimal
//! paths only use arcs between parts.

use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{CompositionSpec, Digraph, Vertex};
use crate::oracle::verify_linkage;
use crate::paths::{validate_pairs, Path, PathSystem};
use crate::report::{
    Audit, Failure, Hypothesis, KappaAudit, KappaMode, Outcome, SolveOptions, SolveReport, Stage,
};
use crate::semicomplete::solve_semicomplete;
use crate::{Error, LinkageInstance};

fn part_index(d: &Digraph, parts: &[Vec<Vertex>]) -> Result<Vec<usize>, Error> {
    let mut owner = vec![usize::MAX; d.order()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            d.check_vertex(v)?;
            if owner[v] != usize::MAX {
                return Err(Error::NotAPartition(v));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = d.vertices().find(|&v| owner[v] == usize::MAX) {
        return Err(Error::NotAPartition(v));
    }
    Ok(owner)
}

/// `D0`: `D` without the arcs inside parts.
pub fn strip_intra_part_arcs(d: &Digraph, parts: &[Vec<Vertex>]) -> Result<Digraph, Error> {
    let owner = part_index(d, parts)?;
    let mut d0 = d.clone();
    for (u, v) in d.arcs() {
        if owner[u] == owner[v] {
            d0.remove_arc(u, v);
        }
    }
    Ok(d0)
}

/// Inside each part `S_i`, with `Y'_i = Y ∩ S_i`: `Y'_i` and `S_i \ Y'_i`
/// become complete digraphs and every `Y'_i → S_i \ Y'_i` arc is added.
pub fn build_dprime(d0: &Digraph, parts: &[Vec<Vertex>], ys: &[Vertex]) -> Result<Digraph, Error> {
    part_index(d0, parts)?;
    let y_set = d0.vertex_set(ys)?;
    let mut dp = d0.clone();
    for part in parts {
        for &a in part {
            for &b in part {
                if a == b {
                    continue;
                }
                let (ya, yb) = (y_set.contains(a), y_set.contains(b));
                if ya == yb || ya {
                    dp.ensure_arc(a, b);
                }
            }
        }
    }
    Ok(dp)
}

/// Repeatedly replaces `P` by a shortest path with the same ends inside
/// `D⟨V(P)⟩` until the length stops dropping. The result is a minimal path:
/// no path with the same ends lives on a proper subset of its vertices.
pub fn minimalize_path(d: &Digraph, p: &[Vertex]) -> Result<Path, Error> {
    let (Some(&s), Some(&t)) = (p.first(), p.last()) else {
        return Err(Error::InvalidParameter("empty path".into()));
    };
    if let Some(w) = p.windows(2).find(|w| !d.has_arc(w[0], w[1])) {
        return Err(Error::InvalidParameter(alloc::format!("({}, {}) is not an arc", w[0], w[1])));
    }
    let mut cur: Path = p.to_vec();
    loop {
        let mut within = d.new_set();
        within.extend(cur.iter().copied());
        let next = d
            .shortest_path_within(s, t, &within, usize::MAX, false)
            .ok_or_else(|| Error::InvalidParameter("path endpoints disconnected".into()))?;
        if next.len() >= cur.len() {
            return Ok(cur);
        }
        cur = next;
    }
}

fn composition_violations(spec: &CompositionSpec, audit: &Audit) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    if let Some((a, b)) = spec.outer.non_adjacent_pair() {
        let rep = |i: usize| spec.parts[i].vertices.first().copied().unwrap_or(i);
        out.push(Hypothesis::NotSemicomplete { u: rep(a), v: rep(b) });
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

fn cosize_violation(parts: &[Vec<Vertex>], alive: usize, k: usize, depth: usize) -> Option<Hypothesis> {
    let required = (2 * k).saturating_sub(3);
    parts.iter().enumerate().filter(|(_, p)| !p.is_empty()).find_map(|(i, p)| {
        let cosize = alive - p.len();
        (cosize < required).then_some(Hypothesis::PartCoSize { part: i, cosize, required, depth })
    })
}

/// Links `pairs` in the realization of `spec`, auditing `κ ≥ 3k`,
/// `δ⁺ ≥ 23k`, part co-size `≥ 2k - 3` and a semicomplete outer digraph.
pub fn solve_composition(
    spec: &CompositionSpec,
    pairs: &[(Vertex, Vertex)],
    opts: SolveOptions,
) -> Result<SolveReport, Error> {
    let d = spec.compose()?;
    validate_pairs(&d, pairs)?;
    let parts = spec.partition();
    let k = pairs.len();

    let mut audit = Audit::basic(&d, opts.enforce_hypotheses);
    audit.kappa_required = 3 * k;
    audit.min_out_degree_required = 23 * k;
    audit.kappa = Some(KappaAudit::measure(&d, 3 * k, opts.kappa));
    audit.min_part_cosize = parts.iter().map(|p| d.vertex_count() - p.len()).min();
    audit.part_cosize_required = Some((2 * k).saturating_sub(3));
    let finish = |audit: Audit, outcome| Ok(SolveReport::new("composition", k, audit, outcome));

    if pairs.iter().all(|&(x, y)| d.has_arc(x, y)) {
        let mut ps = PathSystem::new(pairs.iter().map(|&(x, y)| vec![x, y]).collect(), "direct");
        ps.pairs = pairs.to_vec();
        return finish(audit, Outcome::Linked { paths: ps });
    }
    let mut violations = composition_violations(spec, &audit);
    violations.extend(cosize_violation(&parts, d.vertex_count(), k, 0));
    if opts.enforce_hypotheses && !violations.is_empty() {
        return finish(audit, Outcome::HypothesisViolated { violations });
    }

    let mut cur = d.clone();
    let mut found: Vec<Option<Path>> = vec![None; k];
    let mut depth = 0;
    let mut counters = alloc::collections::BTreeMap::new();
    loop {
        let mut gone = cur.new_set();
        for i in 0..k {
            let (x, y) = pairs[i];
            if found[i].is_none() && cur.has_arc(x, y) {
                found[i] = Some(vec![x, y]);
                gone.insert(x);
                gone.insert(y);
            }
        }
        cur = cur.delete_set(&gone);
        let open: Vec<usize> = (0..k).filter(|&i| found[i].is_none()).collect();
        if open.is_empty() {
            break;
        }
        let live_parts: Vec<Vec<Vertex>> =
            parts.iter().map(|p| p.iter().copied().filter(|&v| cur.is_alive(v)).collect()).collect();
        if opts.enforce_hypotheses {
            if let Some(h) = cosize_violation(&live_parts, cur.vertex_count(), open.len(), depth) {
                return finish(audit, Outcome::HypothesisViolated { violations: vec![h] });
            }
        }
        let nonempty = live_parts.iter().filter(|p| !p.is_empty()).count();
        if nonempty < 2 {
            let failure = Failure::exhausted("two nonempty parts", None);
            return finish(audit, Outcome::StageFailed { stage: Stage::TwoPartShortcut, failure });
        }
        if nonempty == 2 {
            let mut terminals = cur.new_set();
            for &i in &open {
                terminals.insert(pairs[i].0);
                terminals.insert(pairs[i].1);
            }
            let hit = open.iter().find_map(|&i| {
                let (x, y) = pairs[i];
                let mut mids = cur.out_neighbors(x).clone();
                mids.intersect_with(cur.in_neighbors(y));
                mids.difference_with(&terminals);
                mids.ones().next().map(|w| (i, w))
            });
            let Some((i, w)) = hit else {
                let failure = Failure::exhausted("common neighbour in the opposite part", None);
                return finish(audit, Outcome::StageFailed { stage: Stage::TwoPartShortcut, failure });
            };
            let (x, y) = pairs[i];
            found[i] = Some(vec![x, w, y]);
            let mut gone = cur.new_set();
            gone.extend([x, w, y]);
            cur = cur.delete_set(&gone);
            depth += 1;
            *counters.entry("two_part_steps".into()).or_insert(0) += 1;
            continue;
        }

        let sub_pairs: Vec<(Vertex, Vertex)> = open.iter().map(|&i| pairs[i]).collect();
        let ys: Vec<Vertex> = sub_pairs.iter().map(|p| p.1).collect();
        let live: Vec<Vec<Vertex>> = live_parts.into_iter().filter(|p| !p.is_empty()).collect();
        let dprime = strip_intra_part_arcs(&cur, &live).and_then(|d0| build_dprime(&d0, &live, &ys));
        let dprime = match dprime {
            Ok(dp) => dp,
            Err(e) => return finish(audit, Outcome::StageFailed { stage: Stage::Reduction, failure: e.into() }),
        };
        let inst = LinkageInstance::new(dprime.clone(), sub_pairs.clone())?;
        let inner = solve_semicomplete(&inst, SolveOptions { enforce_hypotheses: false, kappa: KappaMode::Capped });
        counters.insert("reductions".into(), 1);
        let Outcome::Linked { paths: sub } = inner.outcome else {
            return finish(audit, inner.outcome);
        };
        for (&i, p) in open.iter().zip(&sub.paths) {
            let p = match minimalize_path(&dprime, p) {
                Ok(p) => p,
                Err(e) => return finish(audit, Outcome::StageFailed { stage: Stage::Minimalize, failure: e.into() }),
            };
            if let Some(w) = p.windows(2).find(|w| !cur.has_arc(w[0], w[1])) {
                let failure = Failure::NewArcLeak { arc: (w[0], w[1]) };
                return finish(audit, Outcome::StageFailed { stage: Stage::Minimalize, failure });
            }
            found[i] = Some(p);
        }
        break;
    }

    let mut ps = PathSystem::new(found.into_iter().map(Option::unwrap_or_default).collect(), "composition");
    ps.pairs = pairs.to_vec();
    let outcome = match verify_linkage(&d, pairs, &ps).violation {
        None => Outcome::Linked { paths: ps },
        Some(violation) => Outcome::StageFailed { stage: Stage::Verify, failure: Failure::Verification { violation } },
    };
    let mut report = SolveReport::new("composition", k, audit, outcome);
    report.counters = counters;
    Ok(report)
}
