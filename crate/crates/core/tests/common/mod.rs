//! Enumerators, random generators and oracles shared by the integration
//! tests.

#![allow(dead_code)]

use std::collections::HashSet;

use finbase::derivation::RewriteSystem;
use finbase::monoid::FiniteMonoid;
use finbase::word::{blocks, Segment};
use finbase::{Identity, Var, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn v(name: &str) -> Var {
    Var::new(name)
}

pub fn w(text: &str) -> Word {
    Word::parse(text).expect("word")
}

pub fn id(text: &str) -> Identity {
    Identity::parse(text).expect("identity")
}

/// Every word over `alphabet` of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &[Var], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Var>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for &a in alphabet {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned().map(Word::from));
        layer = next;
    }
    out
}

/// Identities over at most `vars` variables with both sides of length at
/// most `max_len`, one per class under renaming and orientation. With
/// `same_content` only identities whose sides have equal content are kept.
pub fn all_identities(vars: usize, max_len: usize, same_content: bool) -> Vec<Identity> {
    let alphabet: Vec<Var> = (0..vars).map(Var::canonical).collect();
    let words = all_words(&alphabet, max_len);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if same_content && u.content_set() != v.content_set() {
                continue;
            }
            let id = Identity::new(u.clone(), v.clone());
            if seen.insert(id.unoriented_key()) {
                out.push(id);
            }
        }
    }
    out
}

/// Value of `u` in `m` when variable `i` of `vars` is sent to `values[i]`.
pub fn eval(m: &FiniteMonoid, u: &Word, vars: &[Var], values: &[usize]) -> usize {
    u.letters().iter().fold(m.one(), |acc, x| {
        let i = vars.iter().position(|y| y == x).expect("variable listed");
        m.mul(acc, values[i])
    })
}

/// A uniformly random word over `alphabet` with length drawn from `lens`.
pub fn random_word(rng: &mut impl Rng, alphabet: &[Var], lens: std::ops::RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(lens);
    (0..len).map(|_| *alphabet.choose(rng).expect("nonempty alphabet")).collect()
}

/// A random word with `linear` linear letters `t1, t2, …` and non-linear
/// variables `x, y, z, s` (the first `nonlinear` of them), each occurring
/// between `min_occ` and `max_occ` times, in random order.
pub fn random_structured_word(
    rng: &mut impl Rng,
    linear: usize,
    nonlinear: usize,
    min_occ: usize,
    max_occ: usize,
) -> Word {
    let mut letters = Vec::new();
    for i in 0..linear {
        letters.push(v(&format!("t{}", i + 1)));
    }
    for name in ["x", "y", "z", "s"].iter().take(nonlinear) {
        for _ in 0..rng.gen_range(min_occ..=max_occ) {
            letters.push(v(name));
        }
    }
    letters.shuffle(rng);
    Word::from(letters)
}

/// `u` with the letters of each block shuffled, so that `u ≈ result` is
/// block-balanced.
pub fn shuffle_blocks(rng: &mut impl Rng, u: &Word) -> Word {
    let mut out = Vec::with_capacity(u.len());
    for seg in blocks(u).segments {
        match seg {
            Segment::Separator { occurrence, .. } => out.push(occurrence.var),
            Segment::Block { letters, .. } => {
                let mut l = letters.into_letters();
                l.shuffle(rng);
                out.extend(l);
            }
        }
    }
    Word::from(out)
}

/// The end of a random walk of up to `steps` rewrites from `u`, never
/// visiting words longer than `max_len`.
pub fn random_walk(rng: &mut impl Rng, system: &RewriteSystem, u: &Word, steps: usize, max_len: usize) -> Word {
    let mut cur = u.clone();
    for _ in 0..steps {
        let next: Vec<Word> = system.neighbors(&cur).into_iter().filter(|n| n.len() <= max_len).collect();
        match next.choose(rng) {
            Some(n) => cur = n.clone(),
            None => break,
        }
    }
    cur
}

/// Whether consecutive words agree in `m` under `samples` random
/// assignments each; returns the first failing transition.
pub fn sound_under_random_assignments(
    rng: &mut impl Rng,
    m: &FiniteMonoid,
    words: &[Word],
    samples: usize,
) -> Result<(), String> {
    for pair in words.windows(2) {
        let mut vars = pair[0].content();
        for x in pair[1].content() {
            if !vars.contains(&x) {
                vars.push(x);
            }
        }
        let mut values = vec![0; vars.len()];
        for _ in 0..samples {
            for e in values.iter_mut() {
                *e = rng.gen_range(0..m.size());
            }
            if eval(m, &pair[0], &vars, &values) != eval(m, &pair[1], &vars, &values) {
                return Err(format!("`{}` and `{}` differ", pair[0], pair[1]));
            }
        }
    }
    Ok(())
}
