mod common;

use finbase::identity::named;
use finbase::monoid::{
    build_a01, build_reflexive_relations, build_sw, direct_product, find_counterexample, is_isoterm_bounded, satisfies,
    FiniteMonoid,
};
use finbase::fb::{fact_w12_check, WFamily};
use finbase::{Identity, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_identities, eval, random_word, v, w};

/// Associativity and two-sided identity, checked over every triple.
fn assert_monoid_laws(m: &FiniteMonoid) {
    let n = m.size();
    for a in 0..n {
        assert_eq!(m.mul(m.one(), a), a);
        assert_eq!(m.mul(a, m.one()), a);
        for b in 0..n {
            let ab = m.mul(a, b);
            for c in 0..n {
                assert_eq!(m.mul(ab, c), m.mul(a, m.mul(b, c)), "({a}{b}){c}");
            }
        }
    }
}

fn sw(words: &[&str]) -> FiniteMonoid {
    build_sw(&words.iter().map(|s| w(s)).collect::<Vec<_>>()).unwrap()
}

#[test]
fn built_monoids_obey_the_laws() {
    for m in [
        build_a01(),
        build_reflexive_relations(2).unwrap(),
        build_reflexive_relations(3).unwrap(),
        sw(&["a t a"]),
        sw(&["a b t a b", "a a t2 b"]),
        direct_product(&build_a01(), &sw(&["a a t a"])),
    ] {
        assert_monoid_laws(&m);
    }
}

#[test]
fn counterexamples_really_separate() {
    let m = sw(&["a b t a b"]);
    for id in all_identities(2, 4, false) {
        if let Some(a) = find_counterexample(&m, &id) {
            let vars: Vec<_> = a.values.iter().map(|(x, _)| *x).collect();
            let vals: Vec<_> = a.values.iter().map(|(_, e)| *e).collect();
            assert_ne!(eval(&m, &id.lhs, &vars, &vals), eval(&m, &id.rhs, &vars, &vals), "{id}");
        }
    }
}

/// Brute force over all assignments, without orbit pruning.
fn satisfies_naive(m: &FiniteMonoid, id: &Identity) -> bool {
    let vars = id.content();
    let n = m.size();
    let total = n.pow(vars.len() as u32);
    (0..total).all(|mut code| {
        let vals: Vec<usize> = (0..vars.len())
            .map(|_| {
                let e = code % n;
                code /= n;
                e
            })
            .collect();
        eval(m, &id.lhs, &vars, &vals) == eval(m, &id.rhs, &vars, &vals)
    })
}

#[test]
fn orbit_pruning_loses_nothing() {
    let s3 = build_reflexive_relations(3).unwrap();
    for id in all_identities(2, 4, false) {
        assert_eq!(satisfies(&s3, &id), satisfies_naive(&s3, &id), "{id}");
    }
}

#[test]
fn mirrored_isoterms_agree() {
    let (u, mirrored) = (w("x y z t x z y"), w("y z x t z y x"));
    for m in [build_a01(), build_reflexive_relations(2).unwrap(), sw(&["a b t a b"]), sw(&["a b c t a c b"]), sw(&["a a t a"])] {
        let a = is_isoterm_bounded(&m, &u, 8).unwrap().is_isoterm();
        let b = is_isoterm_bounded(&m, &mirrored, 8).unwrap().is_isoterm();
        assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn adjacency_condition_matches_sigmas(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alphabet = [v("a"), v("b"), v("c")];
        let words: Vec<Word> = (0..2).map(|_| random_word(&mut rng, &alphabet, 1..=6)).collect();
        let m = build_sw(&words).unwrap();
        assert_monoid_laws(&m);
        let both = satisfies(&m, &named::sigma_1().identity) && satisfies(&m, &named::sigma_2().identity);
        prop_assert_eq!(fact_w12_check(&WFamily::finite(words).unwrap()).holds, both);
    }
}
