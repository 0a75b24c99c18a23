use klinkage::composition::{solve_composition, strip_intra_part_arcs};
use klinkage::connectivity::{kappa, local_connectivity, menger_set_paths, min_vertex_menger, MengerOutcome};
use klinkage::dominators::{two_path_width, nearly_in_dominating_set};
use klinkage::generators::{circulant_tournament, prop2_family, random_composition, random_semicomplete, PartKind};
use klinkage::oracle::{
    brute_force_disjoint_paths, brute_force_k_linked, brute_force_kappa, non_linked_assignments, verify_linkage,
    BruteForceOutcome, KLinkedOutcome, Violation,
};
use klinkage::report::Hypothesis;
use klinkage::semicomplete::solve_semicomplete;
use klinkage::{CompositionSpec, Digraph, KappaAudit, LinkageInstance, Outcome, Part, PathSystem, SolveOptions};

#[test]
fn composition_arc_count() {
    let two_cycle = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
    let spec = CompositionSpec { outer: two_cycle, parts: vec![Part::arcless(vec![0, 1]), Part::arcless(vec![2, 3, 4])] };
    assert_eq!(spec.compose().unwrap().arc_count(), 12);
    let spec = random_composition(3, &[2, 2, 2], 0.5, PartKind::Arcless, 11).unwrap();
    let d = spec.compose().unwrap();
    let expected: usize = spec.outer.arcs().iter().map(|&(a, b)| spec.parts[a].vertices.len() * spec.parts[b].vertices.len()).sum();
    assert_eq!((d.order(), d.arc_count()), (6, expected));
}

#[test]
fn quasi_transitivity_of_four_cycle() {
    let c4 = Digraph::cycle(4);
    assert!(c4.is_l_quasi_transitive(3));
    assert!(!c4.is_l_quasi_transitive(2));
}

#[test]
fn connectivity_values() {
    assert_eq!(kappa(&circulant_tournament(7).unwrap()), 3);
    assert_eq!(brute_force_kappa(&circulant_tournament(7).unwrap()), 3);
    assert_eq!(kappa(&circulant_tournament(5).unwrap()), 2);
    assert_eq!(kappa(&Digraph::complete(5)), 4);
    assert_eq!(local_connectivity(&Digraph::complete(4), 0, 3).unwrap(), 3);
    assert_eq!(kappa(&random_semicomplete(7, 1.0, 3).unwrap()), 6);
}

#[test]
fn menger_examples() {
    let p = Digraph::path(3);
    match menger_set_paths(&p, &[0], &[2], &[1]).unwrap() {
        MengerOutcome::Infeasible { separator, max_paths } => assert_eq!((separator, max_paths), (vec![1], 0)),
        other => panic!("{other:?}"),
    }
    // One pair is forced through an intermediate vertex.
    let d = Digraph::from_arcs(6, &[(0, 3), (1, 2), (2, 4), (1, 5), (5, 4)]).unwrap();
    match min_vertex_menger(&d, &[0, 1], &[3, 4], &[]).unwrap() {
        MengerOutcome::Linked { paths } => assert_eq!(paths.total_vertices(), 5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn width_examples() {
    assert_eq!(two_path_width(&Digraph::cycle(3), 0, 2).unwrap(), 1);
    assert_eq!(two_path_width(&Digraph::complete(9), 3, 4).unwrap(), 7);
}

#[test]
fn nearly_in_dominating_set_of_transitive_tournament() {
    let t = Digraph::transitive_tournament(8);
    assert_eq!(nearly_in_dominating_set(&t, &[], &[], 3).unwrap(), vec![7, 6, 5]);
}

#[test]
fn four_cycle_pairs_are_infeasible() {
    let c4 = Digraph::cycle(4);
    assert_eq!(brute_force_disjoint_paths(&c4, &[(0, 2), (1, 3)], 10_000).unwrap(), BruteForceOutcome::Infeasible);
}

#[test]
fn prop2_family_is_not_three_linked() {
    let (spec, bad) = prop2_family(3, &Digraph::cycle(4), None).unwrap();
    let d = spec.compose().unwrap();
    assert_eq!(d.order(), 6);
    assert!(d.is_strong());
    assert!(matches!(brute_force_k_linked(&d, 3, 10_000_000).unwrap(), KLinkedOutcome::NotLinked { .. }));
    let mut sorted = bad.clone();
    sorted.sort();
    let witnesses = non_linked_assignments(&d, 3, 10_000_000).unwrap().unwrap();
    assert!(witnesses.contains(&sorted));
    assert!(prop2_family(2, &Digraph::cycle(4), None).is_err());
}

#[test]
fn tampered_path_system_fails_arc_membership() {
    let d = Digraph::complete(6);
    let ps = PathSystem::new(vec![vec![0, 4, 1], vec![2, 3]], "test");
    assert!(verify_linkage(&d, &[(0, 1), (2, 3)], &ps).pass);
    let mut tampered = d.clone();
    tampered.remove_arc(4, 1);
    let verdict = verify_linkage(&tampered, &[(0, 1), (2, 3)], &ps);
    assert_eq!(verdict.violation, Some(Violation::ArcMembership { path: 0, arc: (4, 1) }));
}

#[test]
fn semicomplete_solver_examples() {
    let inst = LinkageInstance::new(Digraph::complete(10), vec![(0, 1), (2, 3)]).unwrap();
    let report = solve_semicomplete(&inst, SolveOptions::default());
    assert_eq!(report.outcome.paths().unwrap().paths, vec![vec![0, 1], vec![2, 3]]);

    let inst = LinkageInstance::new(Digraph::transitive_tournament(10), vec![(9, 0), (8, 1)]).unwrap();
    match solve_semicomplete(&inst, SolveOptions::default()).outcome {
        Outcome::HypothesisViolated { violations } => {
            assert!(violations.contains(&Hypothesis::KappaBelow { required: 6, found: KappaAudit::Exact(0) }))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn stripping_keeps_kappa_below_the_co_size() {
    for seed in 0..60 {
        let h = 3 + seed as usize % 5;
        let sizes: Vec<usize> = (0..h).map(|i| 1 + (i + seed as usize) % 4).collect();
        let spec = random_composition(h, &sizes, 0.4, PartKind::Random(0.5), seed).unwrap();
        let d = spec.compose().unwrap();
        let d0 = strip_intra_part_arcs(&d, &spec.partition()).unwrap();
        let (k, k0) = (kappa(&d), kappa(&d0));
        assert!(k0 <= k, "seed {seed}");
        let co_size = d.order() - sizes.iter().max().unwrap();
        if k < co_size {
            assert_eq!(k, k0, "seed {seed}");
        }
    }
}

#[test]
fn stripping_can_lower_kappa_above_the_co_size() {
    let complete = |vs: Vec<usize>| {
        let arcs = vs.iter().flat_map(|&a| vs.iter().filter(move |&&b| b != a).map(move |&b| (a, b))).collect();
        Part { vertices: vs, arcs }
    };
    let spec = CompositionSpec {
        outer: Digraph::complete(3),
        parts: vec![complete(vec![0, 1, 2, 3]), complete(vec![4]), complete(vec![5, 6])],
    };
    let d = spec.compose().unwrap();
    let d0 = strip_intra_part_arcs(&d, &spec.partition()).unwrap();
    assert_eq!((kappa(&d), kappa(&d0)), (6, 3));
}

#[test]
fn composition_with_singleton_parts_matches_semicomplete() {
    let outer = random_semicomplete(40, 0.8, 2).unwrap();
    let spec = CompositionSpec { parts: (0..40).map(|v| Part::arcless(vec![v])).collect(), outer: outer.clone() };
    let pairs = vec![(0, 1), (2, 3)];
    let a = solve_composition(&spec, &pairs, SolveOptions::relaxed()).unwrap();
    let b = solve_semicomplete(&LinkageInstance::new(outer.clone(), pairs.clone()).unwrap(), SolveOptions::relaxed());
    assert_eq!(a.is_linked(), b.is_linked());
    if let Some(ps) = a.outcome.paths() {
        assert!(verify_linkage(&outer, &pairs, ps).pass);
    }
}
