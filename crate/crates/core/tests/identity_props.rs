mod common;

use std::collections::HashMap;

use finbase::derivation::{delta_closure, derivable};
use finbase::identity::{
    classify, is_balanced, is_block_balanced, is_block_balanced_by_blocks, is_p11, is_p12, is_p1mu, is_p22, is_pmu2,
    is_pn, is_regular, named, unstable_pairs,
};
use finbase::{Identity, Var, Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_identities, random_structured_word, random_word, shuffle_blocks, v};

/// A random identity: the rhs is a block shuffle, a full permutation or an
/// unrelated word, so that every property is hit reasonably often.
fn random_identity(rng: &mut impl Rng) -> Identity {
    let lin = rng.gen_range(0..=2);
    let non = rng.gen_range(1..=3);
    let u = random_structured_word(rng, lin, non, 1, 3);
    let rhs = match rng.gen_range(0..4) {
        0 | 1 => shuffle_blocks(rng, &u),
        2 => {
            let mut l = u.letters().to_vec();
            l.shuffle(rng);
            Word::from(l)
        }
        _ => {
            let alphabet = u.content();
            if alphabet.is_empty() {
                Word::empty()
            } else {
                random_word(rng, &alphabet, 1..=8)
            }
        }
    };
    Identity::new(u, rhs)
}

type Property = (&'static str, fn(&Identity) -> bool);

fn stable_properties() -> Vec<Property> {
    vec![
        ("regular", is_regular),
        ("balanced", is_balanced),
        ("P1", |id| is_pn(id, 1)),
        ("P2", |id| is_pn(id, 2)),
        ("block-balanced", is_block_balanced),
        ("P11", is_p11),
        ("P22", is_p22),
        ("P12", is_p12),
        ("P1mu", is_p1mu),
        ("Pmu2", is_pmu2),
    ]
}

fn random_substitution(rng: &mut impl Rng, vars: &[Var], allow_empty: bool) -> HashMap<Var, Word> {
    let alphabet = [v("a"), v("b"), v("c")];
    vars.iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut image = random_word(rng, &alphabet, usize::from(!allow_empty)..=3).letters().to_vec();
            // A private letter now and then keeps some images linear.
            if rng.gen_bool(0.3) {
                image.push(v(&format!("f{i}")));
            }
            (x, Word::from(image))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn implication_lattice(seed in any::<u64>()) {
        let id = random_identity(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = classify(&id, Some(2));
        prop_assert!(!r.block_balanced || r.balanced, "{}", id);
        prop_assert!(!r.balanced || r.regular, "{}", id);
        prop_assert!(!r.p12 || r.p1, "{}", id);
        prop_assert!(!r.p1mu || r.p11, "{}", id);
        prop_assert!(!r.pmu2 || r.p22, "{}", id);
        prop_assert!(!(r.p1mu && r.pmu2) || (r.p11 && r.p22), "{}", id);
    }

    #[test]
    fn block_balance_by_either_route(seed in any::<u64>()) {
        let id = random_identity(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(is_block_balanced(&id), is_block_balanced_by_blocks(&id), "{}", id);
    }

    #[test]
    fn no_unstable_pairs_iff_trivial(seed in any::<u64>()) {
        let id = random_identity(&mut ChaCha8Rng::seed_from_u64(seed));
        if is_balanced(&id) {
            prop_assert_eq!(unstable_pairs(&id).unwrap().is_empty(), id.is_trivial(), "{}", id);
        }
    }

    #[test]
    fn properties_survive_substitution(seed in any::<u64>(), allow_empty in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let id = random_identity(&mut rng);
        let theta = random_substitution(&mut rng, &id.content(), allow_empty);
        let image = id.substitute(&theta, allow_empty).unwrap();
        for (name, p) in stable_properties() {
            if p(&id) {
                prop_assert!(p(&image), "{} lost: {} ↦ {}", name, id, image);
            }
        }
    }

    #[test]
    fn properties_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = random_identity(&mut rng);
        let mut l = first.rhs.letters().to_vec();
        if rng.gen_bool(0.5) {
            l.shuffle(&mut rng);
        }
        let mid = Word::from(l);
        let third = shuffle_blocks(&mut rng, &mid);
        let (a, b) = (Identity::new(first.lhs.clone(), first.rhs.clone()), Identity::new(first.rhs.clone(), third.clone()));
        let joined = Identity::new(first.lhs.clone(), third);
        for (name, p) in stable_properties() {
            if p(&a) && p(&b) {
                prop_assert!(p(&joined), "{} not transitive: {} then {}", name, a, b);
            }
        }
    }
}

/// Consequences of `{σμ}^δ` are the block-balanced identities that keep
/// the order of first occurrences and of last occurrences.
#[test]
fn sigma_mu_consequences_are_characterized() {
    let system = delta_closure(&[named::sigma_mu()]);
    let mut derivable_count = 0;
    for id in all_identities(3, 6, true) {
        let expected = is_block_balanced(&id) && is_p11(&id) && is_p22(&id);
        let found = derivable(&id, &system, 6, 10).is_some();
        assert_eq!(found, expected, "{id}");
        derivable_count += usize::from(found);
    }
    assert!(derivable_count > 100);
}
