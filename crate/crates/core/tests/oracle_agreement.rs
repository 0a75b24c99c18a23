use klinkage::connectivity::{kappa, local_connectivity, menger_set_paths, min_vertex_menger, MengerOutcome};
use klinkage::generators::{prop2_family, random_digraph, random_semicomplete};
use klinkage::oracle::{
    brute_force_disjoint_paths, brute_force_k_linked, brute_force_kappa, brute_force_local_connectivity,
    brute_force_max_disjoint, brute_force_min_vertex_total, verify_linkage, BruteForceOutcome, KLinkedOutcome,
};
use klinkage::semicomplete::solve_semicomplete;
use klinkage::{Digraph, LinkageInstance, SolveOptions, Vertex};

fn corpus(count: u64, max_n: usize) -> impl Iterator<Item = (u64, Digraph)> {
    (0..count).map(move |seed| {
        let n = 3 + (seed as usize % (max_n - 2));
        let p = [0.3, 0.5, 0.7][(seed / 7) as usize % 3];
        (seed, random_digraph(n, p, seed).unwrap())
    })
}

#[test]
fn kappa_matches_exhaustive_cuts() {
    for (seed, d) in corpus(200, 9) {
        assert_eq!(kappa(&d), brute_force_kappa(&d), "seed {seed}");
    }
}

#[test]
fn local_connectivity_matches_path_enumeration() {
    for (seed, d) in corpus(80, 7) {
        for x in d.vertices() {
            for y in d.vertices().filter(|&y| y != x) {
                assert_eq!(local_connectivity(&d, x, y).unwrap(), brute_force_local_connectivity(&d, x, y), "seed {seed}");
            }
        }
    }
}

#[test]
fn menger_matches_exhaustive_disjoint_paths() {
    for (seed, d) in corpus(120, 8) {
        let n = d.order();
        if n < 5 {
            continue;
        }
        let (from, to, avoid) = ([0, 1], [n - 1, n - 2], [2]);
        let best = brute_force_max_disjoint(&d, &from, &to, &avoid);
        match menger_set_paths(&d, &from, &to, &avoid).unwrap() {
            MengerOutcome::Linked { paths } => {
                assert_eq!(best, 2, "seed {seed}");
                assert!(paths.paths.iter().all(|p| !p.contains(&2)));
            }
            MengerOutcome::Infeasible { separator, max_paths } => {
                assert_eq!(max_paths, best, "seed {seed}");
                assert!(separator.len() < 2 || separator.contains(&2));
            }
        }
    }
}

#[test]
fn min_vertex_totals_match_exhaustive_minimum() {
    for (seed, d) in corpus(120, 8) {
        let n = d.order();
        if n < 5 {
            continue;
        }
        let (from, to): (Vec<Vertex>, Vec<Vertex>) = (vec![0, 1, 2], vec![n - 1, n - 2]);
        let exact = brute_force_min_vertex_total(&d, &from, &to, &[]);
        match min_vertex_menger(&d, &from, &to, &[]).unwrap() {
            MengerOutcome::Linked { paths } => {
                assert_eq!(Some(paths.total_vertices()), exact, "seed {seed}");
                for p in &paths.paths {
                    assert!(p[1..].iter().all(|v| !from.contains(v)), "seed {seed}");
                }
            }
            MengerOutcome::Infeasible { .. } => assert_eq!(exact, None, "seed {seed}"),
        }
    }
}

#[test]
fn linked_outcomes_agree_with_the_searcher() {
    let mut linked = 0;
    for seed in 0..40 {
        let d = random_semicomplete(10, 0.6, seed).unwrap();
        let pairs = vec![(0, 1), (2, 3)];
        let inst = LinkageInstance::new(d.clone(), pairs.clone()).unwrap();
        let report = solve_semicomplete(&inst, SolveOptions::relaxed());
        if let Some(ps) = report.outcome.paths() {
            linked += 1;
            assert!(verify_linkage(&d, &pairs, ps).pass);
            assert!(matches!(brute_force_disjoint_paths(&d, &pairs, 1_000_000).unwrap(), BruteForceOutcome::Found(_)));
        }
    }
    assert!(linked > 0);
}

#[test]
fn k_linked_implies_k_strong() {
    for (seed, d) in corpus(150, 8) {
        for k in 1..=2 {
            if d.order() < 2 * k {
                continue;
            }
            if brute_force_k_linked(&d, k, 2_000_000).unwrap() == KLinkedOutcome::Linked {
                assert!(kappa(&d) >= k, "seed {seed}, k {k}");
            }
        }
    }
}

#[test]
fn prop2_kappa_matches_exhaustive_cuts() {
    let (spec, bad) = prop2_family(3, &Digraph::cycle(4), None).unwrap();
    let d = spec.compose().unwrap();
    assert_eq!(d.order(), 6);
    assert_eq!(kappa(&d), brute_force_kappa(&d));
    assert!(kappa(&d) >= 1);
    assert_eq!(brute_force_disjoint_paths(&d, &bad, 1_000_000).unwrap(), BruteForceOutcome::Infeasible);
}
