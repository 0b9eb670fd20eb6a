//! The engine checked against brute-force permutation models.

mod common;

use std::collections::{BTreeSet, HashMap};

use cambrian::coxeter::types;
use cambrian::shelling::{maximal_chains, mobius_hall, mobius_recursive};
use cambrian::sortable::{enumerate_sortables, is_sortable_blocks, pi_down, sorting_word};
use cambrian::{CambrianPoset, CoxeterSystem, CoxeterWord};

use common::{element_of, nested, path_count, transitive_reduction, Family, Model, State};

fn a3() -> (CoxeterSystem, Model) {
    (types::a(3), Model::new(Family::A, 3, usize::MAX))
}

fn b3() -> (CoxeterSystem, Model) {
    (types::b(3), Model::new(Family::B, 3, usize::MAX))
}

fn affine(cap: usize) -> (CoxeterSystem, Model) {
    (types::affine_a(2), Model::new(Family::AffineA, 3, cap))
}

fn gammas(sys: &CoxeterSystem) -> Vec<CoxeterWord> {
    ["s1,s2,s3", "s2,s1,s3", "s3,s2,s1", "s1,s3,s2"]
        .iter()
        .map(|g| CoxeterWord::parse(sys, g).unwrap())
        .collect()
}

#[test]
fn enumeration_matches_models() {
    for (sys, model, cap) in [
        (
            types::a(3),
            Model::new(Family::A, 3, usize::MAX),
            usize::MAX,
        ),
        (
            types::b(3),
            Model::new(Family::B, 3, usize::MAX),
            usize::MAX,
        ),
        (types::affine_a(2), Model::new(Family::AffineA, 3, 6), 6),
    ] {
        let universe = sys.enumerate(cap);
        assert_eq!(universe.len(), model.length.len());
        let images: BTreeSet<State> = universe.elements().iter().map(|w| model.of(w)).collect();
        assert_eq!(images.len(), universe.len());
        for w in universe.elements() {
            assert_eq!(model.len_of(&model.of(w)), w.length(), "{w:?}");
        }
    }
}

#[test]
fn weak_order_matches_reachability() {
    for (sys, model) in [a3(), b3(), affine(5)] {
        let elements = sys.enumerate(model.cap).elements().to_vec();
        for u in &elements {
            let above = model.above(&model.of(u));
            for v in &elements {
                assert_eq!(
                    sys.weak_leq(u, v),
                    above.contains(&model.of(v)),
                    "{u:?} {v:?}"
                );
            }
        }
    }
}

#[test]
fn inversion_sets_order_the_group() {
    for (sys, model) in [a3(), b3()] {
        let elements = sys.enumerate(usize::MAX).elements().to_vec();
        let inv: Vec<_> = elements.iter().map(|w| sys.inversion_set(w)).collect();
        for (i, u) in elements.iter().enumerate() {
            assert_eq!(inv[i].len(), u.length());
            let above = model.above(&model.of(u));
            for (j, v) in elements.iter().enumerate() {
                assert_eq!(inv[i].is_subset(&inv[j]), above.contains(&model.of(v)));
            }
        }
    }
}

#[test]
fn sorting_words_are_lexicographically_first() {
    for (sys, model) in [a3(), b3(), affine(6)] {
        for gamma in gammas(&sys) {
            for w in sys.enumerate(model.cap).elements() {
                let brute = model.sorting_positions(&model.of(w), gamma.letters());
                let sw = sorting_word(&sys, w, &gamma).unwrap();
                assert_eq!(sw.positions(), brute.as_slice(), "{w:?} under {gamma:?}");
            }
        }
    }
}

fn brute_sortables(model: &Model, gamma: &[usize]) -> Vec<State> {
    model
        .elements()
        .into_iter()
        .filter(|w| nested(&model.sorting_positions(w, gamma), gamma))
        .collect()
}

#[test]
fn sortable_counts_by_group_filter() {
    let cases = [(a3(), 14usize), (b3(), 20), (affine(7), 19)];
    for ((sys, model), expected) in cases {
        let gamma = CoxeterWord::standard(&sys);
        let brute: BTreeSet<State> = brute_sortables(&model, gamma.letters())
            .into_iter()
            .collect();
        assert_eq!(brute.len(), expected);
        let direct: BTreeSet<State> = enumerate_sortables(&sys, &gamma, model.cap.min(64))
            .iter()
            .map(|s| model.of(&s.element))
            .collect();
        assert_eq!(direct, brute);
    }
}

#[test]
fn sortable_counts_do_not_depend_on_gamma_in_finite_type() {
    // Catalan numbers of type A3 and B3
    for ((sys, model), expected) in [(a3(), 14usize), (b3(), 20)] {
        for gamma in gammas(&sys) {
            assert_eq!(brute_sortables(&model, gamma.letters()).len(), expected);
            let p = CambrianPoset::build(&sys, &gamma, usize::MAX);
            assert_eq!(p.len(), expected);
        }
    }
}

#[test]
fn covers_are_the_transitive_reduction() {
    for (sys, model) in [a3(), b3(), affine(7)] {
        for gamma in gammas(&sys) {
            let p = CambrianPoset::build(&sys, &gamma, model.cap.min(64));
            let states: Vec<State> = p.elements().iter().map(|w| model.of(w)).collect();
            let leq: Vec<Vec<bool>> = states
                .iter()
                .map(|u| {
                    let above = model.above(u);
                    states.iter().map(|v| above.contains(v)).collect()
                })
                .collect();
            let reduction = transitive_reduction(&leq);
            let covers: BTreeSet<(usize, usize)> = p.covers().iter().copied().collect();
            assert_eq!(covers, reduction);
        }
    }
}

#[test]
fn chain_counts_match_path_counting() {
    for (sys, model) in [a3(), b3(), affine(7)] {
        let p = CambrianPoset::build(&sys, &CoxeterWord::standard(&sys), model.cap.min(64));
        for (u, v) in p.comparable_pairs() {
            let chains = maximal_chains(&p.interval(u, v).unwrap());
            assert_eq!(chains.len() as u64, path_count(p.len(), p.covers(), u, v));
        }
    }
}

#[test]
fn projection_is_the_largest_sortable_below() {
    for (sys, model) in [a3(), b3()] {
        for gamma in gammas(&sys) {
            let sortables: Vec<State> = brute_sortables(&model, gamma.letters());
            for w in model.elements() {
                let above_cache: HashMap<&State, bool> =
                    sortables.iter().map(|x| (x, model.leq(x, &w))).collect();
                let below: Vec<&State> = sortables.iter().filter(|x| above_cache[x]).collect();
                let top = below
                    .iter()
                    .copied()
                    .find(|x| below.iter().all(|y| model.leq(y, x)))
                    .expect("largest sortable below exists");
                let elem = element_of(&sys, &model, &w);
                assert_eq!(model.of(&pi_down(&sys, &elem, &gamma)), *top);
            }
        }
    }
}

#[test]
fn frozen_values() {
    // computed once by the brute-force checks above, then fixed
    let (sys, _) = b3();
    let gamma = CoxeterWord::standard(&sys);
    let p = CambrianPoset::build(&sys, &gamma, 9);
    let top = p.len() - 1;
    let whole = p.interval(0, top).unwrap();
    let chains = maximal_chains(&whole);
    assert_eq!(chains.len() as u64, path_count(p.len(), p.covers(), 0, top));
    assert_eq!(chains.len(), 14);
    assert_eq!(mobius_recursive(&whole), -1);
    assert_eq!(mobius_hall(&whole), -1);

    let (sys, _) = a3();
    let p = CambrianPoset::build(&sys, &CoxeterWord::standard(&sys), 6);
    let top = p.len() - 1;
    let whole = p.interval(0, top).unwrap();
    assert_eq!(maximal_chains(&whole).len(), 9);
    assert_eq!(mobius_recursive(&whole), -1);

    let (sys, model) = affine(8);
    let gamma = CoxeterWord::standard(&sys);
    let counts: Vec<usize> = (0..=8)
        .map(|c| {
            model
                .elements()
                .iter()
                .filter(|w| model.len_of(w) <= c && model.is_sortable(w, gamma.letters()))
                .count()
        })
        .collect();
    assert_eq!(counts, [1, 4, 7, 11, 13, 15, 17, 19, 21]);
    let lib: Vec<usize> = (0..=8)
        .map(|c| {
            sys.enumerate(c)
                .elements()
                .iter()
                .filter(|w| is_sortable_blocks(&sys, w, &gamma))
                .count()
        })
        .collect();
    assert_eq!(counts, lib);
}
