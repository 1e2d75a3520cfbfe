mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strongmorse::builder::greedy_strong_dmf;
use strongmorse::contiguity::{
    categorical_by_search, is_categorical, is_contiguous, same_contiguity_class, scat_bounds, scat_exact,
    star_containing, ContiguityBudget, SimplicialMap,
};
use strongmorse::optimize::{optimize_scrit, OptimizerConfig};
use strongmorse::strong::{scrit, StrongConfig};
use strongmorse::{fixtures, SimplicialComplex, VertexId};

use common::complex_strategy;

const BUDGET: usize = 1_000_000;

/// Random simplicial self-map obtained by composing random elementary moves
/// from the identity.
fn random_map(k: &SimplicialComplex, rng: &mut ChaCha8Rng) -> SimplicialMap {
    let verts: Vec<VertexId> = k.vertices().collect();
    let mut images: BTreeMap<VertexId, VertexId> = verts.iter().map(|&v| (v, v)).collect();
    for _ in 0..verts.len() * 3 {
        let x = verts[rng.gen_range(0..verts.len())];
        let y = verts[rng.gen_range(0..verts.len())];
        let mut next = images.clone();
        next.insert(x, y);
        if SimplicialMap::new(k.clone(), k.clone(), next.clone()).is_ok() {
            images = next;
        }
    }
    SimplicialMap::new(k.clone(), k.clone(), images).unwrap()
}

fn random_subcomplex(k: &SimplicialComplex, rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let all: Vec<_> = k.simplices().cloned().collect();
    let picks = (0..rng.gen_range(1..=3)).map(|_| all[rng.gen_range(0..all.len())].clone());
    SimplicialComplex::from_simplices(picks)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contiguity_is_reflexive_and_symmetric(k in complex_strategy(5, 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_map(&k, &mut rng), random_map(&k, &mut rng));
        prop_assert!(is_contiguous(&a, &a).unwrap());
        prop_assert_eq!(is_contiguous(&a, &b).unwrap(), is_contiguous(&b, &a).unwrap());
        prop_assert_eq!(
            same_contiguity_class(&a, &b, BUDGET).unwrap(),
            same_contiguity_class(&b, &a, BUDGET).unwrap()
        );
    }

    #[test]
    fn contiguity_class_is_transitive(k in complex_strategy(5, 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_map(&k, &mut rng), random_map(&k, &mut rng), random_map(&k, &mut rng));
        if same_contiguity_class(&a, &b, BUDGET).unwrap() && same_contiguity_class(&b, &c, BUDGET).unwrap() {
            prop_assert!(same_contiguity_class(&a, &c, BUDGET).unwrap());
        }
    }

    #[test]
    fn star_shortcut_agrees_with_search(k in complex_strategy(5, 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_subcomplex(&k, &mut rng);
        if star_containing(&u, &k).is_some() {
            prop_assert!(categorical_by_search(&u, &k, BUDGET).unwrap().is_some());
        }
        for v in k.vertices() {
            prop_assert!(is_categorical(&k.star(v).unwrap(), &k, BUDGET).unwrap());
        }
    }

    #[test]
    fn restriction_property(k in complex_strategy(5, 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let piece = random_subcomplex(&k, &mut rng);
        if is_categorical(&piece, &k, BUDGET).unwrap() {
            let sub = random_subcomplex(&piece, &mut rng);
            prop_assert!(is_categorical(&sub, &k, BUDGET).unwrap());
        }
    }

    #[test]
    fn scat_facts(k in complex_strategy(5, 4)) {
        let exact = scat_exact(&k, ContiguityBudget::default()).unwrap();
        let (lo, hi) = scat_bounds(&k);
        prop_assert!(lo <= exact.scat && exact.scat <= hi);
        prop_assert_eq!(exact.scat == 0, k.core().num_vertices() == 1);
        prop_assert_eq!(exact.cover.len(), exact.scat + 1);
        prop_assert!(exact.cover.covers(&k));
        for p in &exact.cover.pieces {
            prop_assert!(is_categorical(p, &k, BUDGET).unwrap());
        }
        prop_assert_eq!(scat_exact(&k.core(), ContiguityBudget::default()).unwrap().scat, exact.scat);
    }

    #[test]
    fn cones_need_one_critical_object(k in complex_strategy(5, 4), apex in 10u32..12, seed in any::<u64>()) {
        let cone = SimplicialComplex::from_simplices(
            k.facets().iter().map(|f| f.with_vertex(VertexId(apex))),
        );
        prop_assert_eq!(scrit(&greedy_strong_dmf(&cone, seed), StrongConfig::default()).count(), 1);
    }
}

#[test]
fn optimizer_respects_category_floor() {
    for (name, k) in fixtures::all() {
        let scat = scat_exact(&k, ContiguityBudget::default()).unwrap().scat;
        let r = optimize_scrit(
            &k,
            &OptimizerConfig {
                iterations: 40,
                seed: 3,
                ..OptimizerConfig::default()
            },
        )
        .unwrap();
        assert!(r.best_count > scat, "{name}: {} vs scat {scat}", r.best_count);
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]), "{name}");
        let counts: BTreeSet<usize> = r.history.iter().copied().collect();
        assert_eq!(counts.first().copied(), Some(r.best_count));
    }
}
