//! Seeded generators for the digraph families used throughout the crate.
//!
//! All randomness comes from ChaCha8 seeded with a `u64`, so every generator
//! is a pure function of its arguments.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{CompositionSpec, Digraph, Part, Vertex};
use crate::oracle::{brute_force_k_linked, KLinkedOutcome};
use crate::Error;

/// The generator behind every seeded family.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<(), Error> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(alloc::format!("probability {p} outside [0, 1]")))
    }
}

fn tournament_with<R: Rng>(n: usize, rng: &mut R) -> Digraph {
    let mut d = Digraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                d.insert_arc_unchecked(u, v);
            } else {
                d.insert_arc_unchecked(v, u);
            }
        }
    }
    d
}

/// Uniformly random tournament: each pair oriented by a fair coin.
pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    tournament_with(n, &mut rng(seed))
}

/// Vertex `i` dominates `i+1, ..., i+(n-1)/2` modulo `n`.
pub fn circulant_tournament(n: usize) -> Result<Digraph, Error> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::EvenOrder(n));
    }
    let mut d = Digraph::empty(n);
    for i in 0..n {
        for s in 1..=(n - 1) / 2 {
            d.insert_arc_unchecked(i, (i + s) % n);
        }
    }
    Ok(d)
}

fn semicomplete_with<R: Rng>(n: usize, p_double: f64, rng: &mut R) -> Digraph {
    let mut d = tournament_with(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p_double) {
                d.ensure_arc(u, v);
                d.ensure_arc(v, u);
            }
        }
    }
    d
}

/// A random tournament plus, per pair independently, the reverse arc with
/// probability `p_double`.
pub fn random_semicomplete(n: usize, p_double: f64, seed: u64) -> Result<Digraph, Error> {
    check_probability(p_double)?;
    Ok(semicomplete_with(n, p_double, &mut rng(seed)))
}

/// Each ordered pair is an arc independently with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, Error> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let mut d = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                d.insert_arc_unchecked(u, v);
            }
        }
    }
    Ok(d)
}

/// Internal structure of generated composition parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartKind {
    Arcless,
    /// Each ordered pair inside a part is an arc with this probability.
    Random(f64),
    /// Transitive tournament on the part (ids increasing).
    Transitive,
}

/// `H[S_1, ..., S_h]` with `H = random_semicomplete(h, p_double)`. Part `i`
/// gets the consecutive ids following part `i - 1`.
pub fn random_composition(
    h: usize,
    part_sizes: &[usize],
    p_double: f64,
    kind: PartKind,
    seed: u64,
) -> Result<CompositionSpec, Error> {
    if h != part_sizes.len() || h < 2 {
        return Err(Error::ArityMismatch { outer: h, parts: part_sizes.len() });
    }
    check_probability(p_double)?;
    if let PartKind::Random(p) = kind {
        check_probability(p)?;
    }
    let mut rng = rng(seed);
    let outer = semicomplete_with(h, p_double, &mut rng);
    let mut parts = Vec::with_capacity(h);
    let mut next = 0;
    for &size in part_sizes {
        let vertices: Vec<Vertex> = (next..next + size).collect();
        next += size;
        let mut arcs = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                let keep = match kind {
                    PartKind::Arcless => false,
                    PartKind::Random(p) => i != j && rng.random_bool(p),
                    PartKind::Transitive => i < j,
                };
                if keep {
                    arcs.push((a, b));
                }
            }
        }
        parts.push(Part { vertices, arcs });
    }
    Ok(CompositionSpec { outer, parts })
}

/// Node-expansion budget used to find an obstruction in a caller core.
pub const CORE_WITNESS_BUDGET: u64 = 5_000_000;

/// A semicomplete composition that is as strong as `core` but not k-linked.
///
/// The outer digraph `R` has `r = 2k - 3` vertices: `v_1..v_{r-1}` span a
/// transitive tournament and `v_r` forms a 2-cycle with each of them. Parts
/// `S_1..S_{r-1}` are single vertices, `S_r` is `core`. The returned pairs are
/// `x_i = v_{2i}`, `y_i = v_{2i-1}` for `i ≤ k - 2`, followed by the two
/// obstructing pairs of `core`.
///
/// `core_pairs` names two pairs `(u, v), (x, y)` of core vertices with no
/// disjoint `(u, v)`- and `(x, y)`-paths; when absent they are found by
/// exhaustive search.
pub fn prop2_family(
    k: usize,
    core: &Digraph,
    core_pairs: Option<[(Vertex, Vertex); 2]>,
) -> Result<(CompositionSpec, Vec<(Vertex, Vertex)>), Error> {
    if k < 3 {
        return Err(Error::KTooSmall(k));
    }
    if core.vertex_count() != core.order() {
        return Err(Error::InvalidParameter("core digraph must not have deleted vertices".into()));
    }
    if !core.is_strong() || core.vertex_count() < 2 {
        return Err(Error::CoreNotStrong);
    }
    let bad = match core_pairs {
        Some(pairs) => pairs,
        None => match brute_force_k_linked(core, 2, CORE_WITNESS_BUDGET)? {
            KLinkedOutcome::NotLinked { witness } => [witness[0], witness[1]],
            KLinkedOutcome::Linked => return Err(Error::CoreIsLinked),
            KLinkedOutcome::BudgetExceeded => return Err(Error::BudgetExceeded(CORE_WITNESS_BUDGET)),
        },
    };
    let r = 2 * k - 3;
    let mut outer = Digraph::empty(r);
    for i in 0..r - 1 {
        for j in i + 1..r - 1 {
            outer.insert_arc_unchecked(i, j);
        }
        outer.insert_arc_unchecked(i, r - 1);
        outer.insert_arc_unchecked(r - 1, i);
    }
    let offset = r - 1;
    let mut parts: Vec<Part> = (0..r - 1).map(|i| Part::arcless(vec![i])).collect();
    parts.push(Part {
        vertices: core.vertices().map(|v| v + offset).collect(),
        arcs: core.arcs().into_iter().map(|(a, b)| (a + offset, b + offset)).collect(),
    });
    // v_j has id j - 1.
    let mut pairs: Vec<(Vertex, Vertex)> = (1..=k - 2).map(|i| (2 * i - 1, 2 * i - 2)).collect();
    pairs.extend(bad.iter().map(|&(a, b)| (a + offset, b + offset)));
    Ok((CompositionSpec { outer, parts }, pairs))
}
