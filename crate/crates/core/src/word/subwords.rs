use std::collections::BTreeSet;

use super::{Var, Word};

/// All nonempty subsequences of `u` of length at most `m`.
///
/// Each subsequence is grown from its leftmost embedding, so every word is
/// produced exactly once: extending `s` (whose leftmost embedding ends at
/// position `e`) by a letter `a` lands on the first `a` after `e`.
pub fn scattered_subwords(u: &Word, m: usize) -> BTreeSet<Word> {
    let letters = u.letters();
    let alphabet = u.content();
    // next[p][k]: first position >= p holding alphabet[k].
    let mut next = vec![vec![usize::MAX; alphabet.len()]; letters.len() + 1];
    for p in (0..letters.len()).rev() {
        next[p] = next[p + 1].clone();
        let k = alphabet.iter().position(|&a| a == letters[p]).expect("letter in content");
        next[p][k] = p;
    }
    let mut out = BTreeSet::new();
    let mut frontier: Vec<(Vec<Var>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..m {
        let mut grown = Vec::new();
        for (prefix, from) in &frontier {
            for (k, &a) in alphabet.iter().enumerate() {
                let p = next[*from][k];
                if p != usize::MAX {
                    let mut longer = prefix.clone();
                    longer.push(a);
                    out.insert(Word::from(longer.clone()));
                    grown.push((longer, p + 1));
                }
            }
        }
        frontier = grown;
    }
    out
}

/// Whether `u` and `v` have the same subsequences of length at most `m`,
/// i.e. whether `u ≈ v` belongs to the Simon congruence of level `m`.
pub fn simon_equiv(u: &Word, v: &Word, m: usize) -> bool {
    u.content_set() == v.content_set() && scattered_subwords(u, m) == scattered_subwords(v, m)
}

/// A hashable key such that two words get the same key iff they are
/// `simon_equiv` at level `m`.
pub fn simon_key(u: &Word, m: usize) -> Vec<Word> {
    scattered_subwords(u, m).into_iter().collect()
}
