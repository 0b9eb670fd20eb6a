//! Properties of the position labeling on whole posets.

use cambrian::coxeter::types;
use cambrian::shelling::{
    el_check, label_between, maximal_chains, position_label, spanning_tree, ChainCensus, ElVerdict,
};
use cambrian::{CambrianPoset, CoxeterSystem, CoxeterWord};

fn posets() -> Vec<CambrianPoset> {
    let mut out = Vec::new();
    for (sys, cap) in [(types::a(3), 6), (types::b(3), 9), (types::affine_a(2), 7)] {
        for g in ["s1,s2,s3", "s2,s1,s3", "s3,s1,s2"] {
            let gamma = CoxeterWord::parse(&sys, g).unwrap();
            out.push(CambrianPoset::build(&sys, &gamma, cap));
        }
    }
    out
}

#[test]
fn worked_b3_labels() {
    let sys = types::b(3);
    let gamma = CoxeterWord::standard(&sys);
    let e = |w: &str| sys.parse_element(w).unwrap();
    let u1 = e("s2 s3 s2 s3");
    let v1 = e("s1 s2 s3 s1 s2 s3 s1 s2 s3");
    assert_eq!(label_between(&sys, &gamma, &u1, &v1), Ok(1));
    let (u2, v2) = (e("s1 s2 s3 s1 s2"), e("s1 s2 s3 s1 s2 s3"));
    assert_eq!(label_between(&sys, &gamma, &u2, &v2), Ok(6));
    let (u3, v3) = (e("s2 s3 s2"), e("s2 s3 s2 s3"));
    assert_eq!(label_between(&sys, &gamma, &u3, &v3), Ok(6));

    let s1 = 0;
    let rotated = gamma.rotated();
    assert_eq!(
        label_between(
            &sys,
            &rotated,
            &sys.left_multiply(s1, &u2),
            &sys.left_multiply(s1, &v2)
        ),
        Ok(5)
    );
    let parabolic = gamma.without_initial();
    let j = parabolic.support();
    assert_eq!(
        label_between(
            &sys,
            &parabolic,
            &sys.restrict(&u3, j),
            &sys.restrict(&v3, j)
        ),
        Ok(4)
    );

    // all three pairs are covers of the Cambrian lattice
    let p = CambrianPoset::build(&sys, &gamma, 9);
    let idx = |w| p.index_of(&w).unwrap();
    assert_eq!(p.cover_label(idx(u1.clone()), idx(v1.clone())), Ok(1));
    assert_eq!(p.cover_label(idx(u2), idx(v2)), Ok(6));
    assert_eq!(p.cover_label(idx(u3), idx(v3)), Ok(6));
    assert!(label_between(&sys, &gamma, &v1, &u1).is_err());
}

#[test]
fn minimum_label_appears_in_every_chain_and_labels_are_distinct() {
    for p in posets() {
        for (u, v) in p.comparable_pairs() {
            if u == v {
                continue;
            }
            let i0 = position_label(p.alpha(u), p.alpha(v)).unwrap();
            for c in maximal_chains(&p.interval(u, v).unwrap()) {
                assert!(c.labels.contains(&i0));
                let mut sorted = c.labels.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(sorted.len(), c.labels.len());
            }
        }
    }
}

#[test]
fn cover_labels_lie_in_the_position_difference() {
    for p in posets() {
        for &(a, b) in p.covers() {
            let l = p.cover_label(a, b).unwrap();
            assert!(p.alpha(b).contains(&l) && !p.alpha(a).contains(&l));
            assert!(p.alpha(a).is_subset(p.alpha(b)));
        }
    }
}

fn check_recursion(sys: &CoxeterSystem, p: &CambrianPoset) {
    let gamma = p.gamma();
    let s = gamma.initial().unwrap();
    let n = gamma.rank();
    for &(a, b) in p.covers() {
        let (u, v) = (p.element(a), p.element(b));
        let label = p.cover_label(a, b).unwrap();
        let su = u.has_left_descent(s);
        let sv = v.has_left_descent(s);
        if !su && sv {
            assert_eq!(label, 1);
        } else if su {
            let inner = label_between(
                sys,
                &gamma.rotated(),
                &sys.left_multiply(s, u),
                &sys.left_multiply(s, v),
            )
            .unwrap();
            assert_eq!(label, inner + 1);
        } else {
            let parabolic = gamma.without_initial();
            let j = parabolic.support();
            let (ru, rv) = (sys.restrict(u, j), sys.restrict(v, j));
            assert_eq!(
                (&ru, &rv),
                (u, v),
                "sortables not above s lie in the parabolic"
            );
            let inner = label_between(sys, &parabolic, &ru, &rv).unwrap();
            // block of the first difference, counted in the shorter word
            let k = (inner - 1) / (n - 1) + 1;
            assert_eq!(label, inner + k);
        }
    }
}

#[test]
fn label_recursion_on_all_covers() {
    for p in posets() {
        check_recursion(&p.system().clone(), &p);
    }
}

#[test]
fn rising_and_falling_chains() {
    for p in posets() {
        for (u, v) in p.comparable_pairs() {
            let chains = maximal_chains(&p.interval(u, v).unwrap());
            let census = ChainCensus::of(&chains);
            assert_eq!(census.rising, 1);
            assert!(census.falling <= 1);
            match el_check(&chains) {
                ElVerdict::Pass { rising } if u == p.bottom() => {
                    assert_eq!(chains[rising].len(), p.element(v).length())
                }
                ElVerdict::Pass { rising } => {
                    assert!(chains[rising].len() <= p.element(v).length() - p.element(u).length())
                }
                ElVerdict::Fail(f) => panic!("{f}"),
            }
        }
    }
}

#[test]
fn spanning_trees() {
    for p in posets() {
        let t = spanning_tree(&p);
        assert!(t.verified());
        assert_eq!(t.edges.len() + 1, p.len());
    }
    let sys = types::a(3);
    let p = CambrianPoset::build(&sys, &CoxeterWord::standard(&sys), 6);
    assert_eq!(spanning_tree(&p).edges.len(), 13);
}

#[test]
fn rising_chain_can_be_shorter_than_the_length_difference() {
    // pentagon: s2 is covered by s1s2s1 although the lengths differ by two
    let sys = types::a(2);
    let p = CambrianPoset::build(&sys, &CoxeterWord::standard(&sys), 3);
    assert_eq!(p.len(), 5);
    let u = p.index_of(&sys.parse_element("s2").unwrap()).unwrap();
    let v = p.index_of(&sys.parse_element("s1 s2 s1").unwrap()).unwrap();
    assert!(p.is_cover(u, v));
    let chains = maximal_chains(&p.interval(u, v).unwrap());
    assert_eq!(chains.len(), 1);
    assert_eq!(chains[0].labels, vec![1]);
    assert_eq!(p.element(v).length() - p.element(u).length(), 2);
}
