use klinkage::generators::{random_composition, PartKind};
use klinkage::lqt::{
    build_auxiliary, f_threshold, find_short_anchor_pair, independent_short_paths, solve_lqt, verify_short_anchor,
    AnchorSearch, LqtConfig,
};
use klinkage::oracle::verify_linkage;
use klinkage::report::{Failure, Hypothesis, KappaMode, Outcome, SolveOptions};
use klinkage::{Digraph, Vertex};

/// Strong tournament blown up with arcless parts: 2-quasi-transitive, and the
/// only non-adjacent pairs lie inside a part.
fn qt_instance(h: usize, size: usize, seed: u64) -> Digraph {
    (seed..)
        .map(|s| random_composition(h, &vec![size; h], 0.0, PartKind::Arcless, s).unwrap().compose().unwrap())
        .find(|d| d.is_strong())
        .unwrap()
}

fn pick_pairs(d: &Digraph, k: usize, seed: u64) -> Vec<(Vertex, Vertex)> {
    let n = d.order() as u64;
    let mut vs: Vec<Vertex> = Vec::new();
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    while vs.len() < 2 * k {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let v = ((s >> 33) % n) as Vertex;
        if !vs.contains(&v) {
            vs.push(v);
        }
    }
    (0..k).map(|i| (vs[2 * i], vs[2 * i + 1])).collect()
}

#[test]
fn threshold_has_two_agreeing_codings() {
    for k in 1..=10usize {
        for l in 2..=10usize {
            let m = 9 * k - 6;
            let alt = (m * (m - 1) / 2) * (l + 2) + 2 * l * k + 5 * k + 9 * k;
            assert_eq!(f_threshold(k, l).unwrap(), alt);
        }
    }
}

#[test]
fn synthetic_instances_are_two_quasi_transitive() {
    for seed in 0..10 {
        let d = qt_instance(12, 3, seed);
        assert!(d.is_l_quasi_transitive(2));
        assert!(!d.is_semicomplete());
    }
}

#[test]
fn available_paths_are_valid_and_independent() {
    for seed in 0..10 {
        let d = qt_instance(12, 3, seed);
        let aux = build_auxiliary(&d, &[0], &[1], 2, 2).unwrap();
        assert!(aux.dprime.is_semicomplete());
        for (&(u, v), pool) in &aux.available {
            assert!(!d.adjacent(u, v));
            assert!(pool.len() >= 2);
            let mut seen = Vec::new();
            for p in pool {
                assert_eq!((p[0], *p.last().unwrap()), (u, v));
                assert!(p.len() <= 4);
                assert!(p.windows(2).all(|w| d.has_arc(w[0], w[1])));
                for &x in &p[1..p.len() - 1] {
                    assert!(x != 0 && x != 1);
                    assert!(!seen.contains(&x));
                    seen.push(x);
                }
            }
        }
    }
}

#[test]
fn key_property_holds_on_generated_inputs() {
    for seed in 0..5 {
        let d = qt_instance(8, 2, seed);
        for u in d.vertices() {
            for v in d.vertices().filter(|&v| v > u && !d.adjacent(u, v)) {
                independent_short_paths(&d, u, v, 2, usize::MAX).unwrap();
            }
        }
    }
}

#[test]
fn threshold_unreachable_at_small_order() {
    let d = qt_instance(10, 3, 4);
    let t = f_threshold(2, 2).unwrap();
    match build_auxiliary(&d, &[], &[], 2, t) {
        Err(Failure::ThresholdUnreachable { threshold, forward, backward, .. }) => {
            assert_eq!(threshold, 300);
            assert!(forward.max(backward) < 300);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn solve_lqt_links_synthetic_instances() {
    let config = LqtConfig { threshold: Some(5), anchor_budget: 100_000, options: SolveOptions::relaxed() };
    for seed in 0..10 {
        let d = qt_instance(20, 3, seed);
        let pairs = pick_pairs(&d, 1, seed);
        let report = solve_lqt(&d, &pairs, 2, config).unwrap();
        let Outcome::Linked { paths } = &report.outcome else {
            panic!("seed {seed}: {:?}", report.outcome);
        };
        assert!(verify_linkage(&d, &pairs, paths).pass);
    }
}

#[test]
fn solve_lqt_rejects_non_strong_input() {
    let d = Digraph::path(6);
    let report = solve_lqt(&d, &[(0, 5)], 2, LqtConfig::default()).unwrap();
    match report.outcome {
        Outcome::HypothesisViolated { violations } => assert!(violations.contains(&Hypothesis::NotStrong)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn semicomplete_input_degenerates() {
    let d = Digraph::complete(40);
    let config = LqtConfig { threshold: Some(5), anchor_budget: 10_000, options: SolveOptions { enforce_hypotheses: false, kappa: KappaMode::Skip } };
    let report = solve_lqt(&d, &[(0, 1), (2, 3)], 2, config).unwrap();
    assert_eq!(report.counters.get("new_arcs"), Some(&0));
    assert!(verify_linkage(&d, &[(0, 1), (2, 3)], report.outcome.paths().unwrap()).pass);
}

#[test]
fn anchor_search_results_verify() {
    for seed in 0..10 {
        let t = klinkage::generators::random_tournament(12 + (seed as usize % 3), seed);
        for k in 1..=2 {
            if let AnchorSearch::Found { u1, u2 } = find_short_anchor_pair(&t, k, 50_000, true).unwrap() {
                assert!(verify_short_anchor(&t, &u1, &u2).unwrap());
            }
        }
    }
    let c = klinkage::generators::circulant_tournament(11).unwrap();
    match find_short_anchor_pair(&c, 2, 1_000_000, true).unwrap() {
        AnchorSearch::Found { u1, u2 } => assert!(verify_short_anchor(&c, &u1, &u2).unwrap()),
        other => panic!("{other:?}"),
    }
}
