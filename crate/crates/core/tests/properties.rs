use std::ops::ControlFlow;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use freezeset::certifier::{recheck_trace, replay_trace, Propagator, PropagationTrace, Rule, DEFAULT_RULE_ORDER};
use freezeset::generate::{random_connected_image, random_symmetry};
use freezeset::oracle::{Oracle, SearchBudget, SearchOptions};
use freezeset::selfmap::{check_pulling_consistency, is_continuous, is_continuous_by_definition};
use freezeset::{DigitalImage, PointSet, SelfMap};

/// Random connected image: dimension 1..=3, any valid adjacency, sizes in
/// `sizes`.
fn image(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DigitalImage> {
    (any::<u64>(), 1usize..=3, 1usize..=3, sizes).prop_map(|(seed, dim, u, size)| {
        let u = u.min(dim);
        random_connected_image(&mut ChaCha8Rng::seed_from_u64(seed), dim, u, size).unwrap()
    })
}

fn subset(image: &DigitalImage, mask: u64) -> PointSet {
    PointSet::from_indices(image.len(), (0..image.len()).filter(|i| mask >> i & 1 == 1))
}

fn all_maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let v = code % n;
                code /= n;
                v
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn articulation_points_match_bruteforce(x in image(1..=14)) {
        prop_assert_eq!(x.articulation_points().unwrap(), x.articulation_points_bruteforce().unwrap());
    }

    #[test]
    fn adjacency_symmetric_and_boundary_inside(x in image(1..=14)) {
        for i in 0..x.len() {
            for &j in x.neighbors(i) {
                prop_assert!(x.are_adjacent(j, i));
                prop_assert!(i != j);
            }
        }
        prop_assert_eq!(x.boundary().capacity(), x.len());
    }

    #[test]
    fn unique_paths_are_shortest_paths(x in image(2..=10)) {
        for a in 0..x.len() {
            for b in 0..x.len() {
                let info = x.path_info(a, b).unwrap();
                if let Some(path) = &info.unique_path {
                    prop_assert_eq!(path.len(), info.distance + 1);
                    prop_assert_eq!((path[0], *path.last().unwrap()), (a, b));
                    for w in path.windows(2) {
                        prop_assert!(x.are_adjacent(w[0], w[1]));
                    }
                }
                prop_assert_eq!(info.unique_path.is_some(), info.shortest_path_count == 1);
            }
        }
    }

    #[test]
    fn symmetries_preserve_adjacency_structure(x in image(1..=10), seed in any::<u64>()) {
        let g = random_symmetry(&mut ChaCha8Rng::seed_from_u64(seed), x.dim(), 4);
        let (y, corr) = x.apply_isometry(&g).unwrap();
        for i in 0..x.len() {
            for j in 0..x.len() {
                prop_assert_eq!(x.are_adjacent(i, j), y.are_adjacent(corr.map_index(i), corr.map_index(j)));
            }
        }
        prop_assert_eq!(corr.transport(&x.boundary()), y.boundary());
        prop_assert_eq!(corr.transport(&x.articulation_points().unwrap()), y.articulation_points().unwrap());
    }

    #[test]
    fn continuity_criteria_agree(x in image(1..=4)) {
        for images in all_maps(x.len()) {
            let f = SelfMap::from_indices(&x, images).unwrap();
            prop_assert_eq!(is_continuous(&x, &f).unwrap(), is_continuous_by_definition(&x, &f, 12).unwrap());
        }
    }

    #[test]
    fn map_count_matches_bruteforce(x in image(1..=5), mask in any::<u64>()) {
        let fixed = subset(&x, mask);
        let expected = all_maps(x.len())
            .map(|v| SelfMap::from_indices(&x, v).unwrap())
            .filter(|f| is_continuous(&x, f).unwrap() && fixed.is_subset(&f.fixed_points()))
            .count() as u64;
        let oracle = Oracle::new(&x).unwrap();
        prop_assert_eq!(oracle.count_continuous_maps(&fixed, SearchBudget::unlimited()).unwrap(), expected);
        let frozen = oracle.verify_freezing(&fixed, SearchBudget::unlimited()).unwrap().is_frozen();
        prop_assert_eq!(frozen, expected == 1);
    }

    #[test]
    fn enumerated_maps_are_continuous_and_pull(x in image(1..=6)) {
        let oracle = Oracle::new(&x).unwrap();
        oracle.for_each_continuous_map(&x.empty_set(), SearchBudget::unlimited(), |f| {
            assert!(is_continuous(&x, f).unwrap());
            assert!(check_pulling_consistency(&x, f).unwrap());
            ControlFlow::Continue(())
        }).unwrap();
    }

    #[test]
    fn refutations_are_valid_witnesses(x in image(1..=12), mask in any::<u64>()) {
        let a = subset(&x, mask);
        let v = Oracle::new(&x).unwrap().verify_freezing(&a, SearchBudget::unlimited()).unwrap();
        if let Some(f) = v.witness() {
            prop_assert!(is_continuous(&x, f).unwrap());
            prop_assert!(!f.is_identity());
            prop_assert!(a.is_subset(&f.fixed_points()));
        } else {
            prop_assert!(v.is_frozen());
        }
    }

    #[test]
    fn freezing_is_upward_closed(x in image(2..=10), mask in any::<u64>(), extra in any::<u64>()) {
        let oracle = Oracle::new(&x).unwrap();
        let a = subset(&x, mask);
        let b = a.union(&subset(&x, extra));
        if oracle.verify_freezing(&a, SearchBudget::unlimited()).unwrap().is_frozen() {
            prop_assert!(oracle.verify_freezing(&b, SearchBudget::unlimited()).unwrap().is_frozen());
        }
        prop_assert!(oracle.verify_freezing(&x.full_set(), SearchBudget::unlimited()).unwrap().is_frozen());
    }

    #[test]
    fn search_options_do_not_change_verdicts(x in image(1..=10), mask in any::<u64>()) {
        let a = subset(&x, mask);
        let base = Oracle::new(&x).unwrap().verify_freezing(&a, SearchBudget::unlimited()).unwrap();
        for options in [
            SearchOptions { pulling_pruning: false, threads: 1 },
            SearchOptions { pulling_pruning: true, threads: 3 },
        ] {
            let v = Oracle::with_options(&x, options).unwrap().verify_freezing(&a, SearchBudget::unlimited()).unwrap();
            prop_assert_eq!(&v.outcome, &base.outcome);
        }
    }

    /// Every rule is valid for every continuous map: `Fix(f)` is closed.
    #[test]
    fn fixed_point_sets_are_closed(x in image(1..=6)) {
        let oracle = Oracle::new(&x).unwrap();
        let mut prop = Propagator::new(&x).unwrap();
        oracle.for_each_continuous_map(&x.empty_set(), SearchBudget::unlimited(), |f| {
            let fix = f.fixed_points();
            let (closed, trace) = prop.propagate(&fix).unwrap();
            assert_eq!(closed, fix, "map {}", f.display(&x));
            assert!(trace.is_empty());
            ControlFlow::Continue(())
        }).unwrap();
    }

    #[test]
    fn certificates_are_sound_and_replay(x in image(1..=12), mask in any::<u64>()) {
        let a = subset(&x, mask);
        let (closed, trace) = Propagator::new(&x).unwrap().propagate(&a).unwrap();
        prop_assert_eq!(replay_trace(&x, &a, &trace).unwrap(), closed.clone());
        prop_assert_eq!(PropagationTrace::parse(&trace.to_text(&x), &x).unwrap(), trace.clone());
        if closed.len() == x.len() {
            prop_assert!(recheck_trace(&x, &a, &trace));
            let v = Oracle::new(&x).unwrap().verify_freezing(&a, SearchBudget::unlimited()).unwrap();
            prop_assert!(v.is_frozen());
        }
    }

    #[test]
    fn closure_independent_of_rule_order(x in image(1..=12), mask in any::<u64>(), perm in Just(DEFAULT_RULE_ORDER.to_vec()).prop_shuffle()) {
        let a = subset(&x, mask);
        let (base, _) = Propagator::new(&x).unwrap().propagate(&a).unwrap();
        let (other, trace) = Propagator::with_rule_order(&x, &perm).unwrap().propagate(&a).unwrap();
        prop_assert_eq!(base, other);
        prop_assert!(trace.steps.iter().all(|s| perm.contains(&s.rule)));
    }

    #[test]
    fn closure_is_monotone(x in image(1..=12), mask in any::<u64>(), extra in any::<u64>()) {
        let a = subset(&x, mask);
        let b = a.union(&subset(&x, extra));
        let mut prop = Propagator::new(&x).unwrap();
        let (ca, _) = prop.propagate(&a).unwrap();
        let (cb, _) = prop.propagate(&b).unwrap();
        prop_assert!(ca.is_subset(&cb));
    }
}

#[test]
fn segment_rules_never_fire_off_their_adjacency() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        for u in 1..=2 {
            let x = random_connected_image(&mut rng, 2, u, 10).unwrap();
            let (_, trace) = Propagator::new(&x).unwrap().propagate(&x.boundary()).unwrap();
            let wrong = if u == 1 { Rule::C2SlantedSegment } else { Rule::C1AxisSegment };
            assert!(trace.steps.iter().all(|s| s.rule != wrong));
        }
    }
}

#[test]
fn certifier_is_incomplete() {
    use freezeset::certifier::certify_freezing;
    use freezeset::lattice::parse_point_list;
    let x = DigitalImage::new(
        3,
        3,
        parse_point_list(
            "(-2,0,0);(-1,-1,0);(-1,0,-2);(-1,0,-1);(-1,0,0);(-1,0,1);(-1,1,-1);\
             (-1,1,0);(0,-1,-1);(0,0,0);(0,1,-1);(0,1,0);(1,0,-2);(2,-1,-2)",
        )
        .unwrap(),
    )
    .unwrap();
    let a = x
        .point_set(&parse_point_list("(-2,0,0);(-1,-1,0);(-1,0,-2);(-1,0,1);(-1,1,-1);(-1,1,0);(0,0,0);(0,1,0);(2,-1,-2)").unwrap())
        .unwrap();
    let oracle = Oracle::new(&x).unwrap();
    assert!(oracle.is_minimal_freezing(&a, SearchBudget::unlimited()).unwrap());
    assert!(!certify_freezing(&x, &a).unwrap().is_certified());
}
