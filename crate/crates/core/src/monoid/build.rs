use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::{FiniteMonoid, MonoidError};
use crate::word::Word;

/// Prints a factor compactly (`ab`) when every variable is a single
/// character, and space-separated otherwise.
fn factor_label(w: &Word) -> String {
    if w.letters().iter().all(|v| v.name().chars().count() == 1) {
        w.letters().iter().map(|v| v.name().to_string()).collect()
    } else {
        w.to_string()
    }
}

/// The Rees quotient of the free monoid by the ideal of words that are not
/// factors of any word of `words`.
///
/// Elements are `1`, the nonempty factors in shortlex order, and `0` last.
pub fn build_sw(words: &[Word]) -> Result<FiniteMonoid, MonoidError> {
    if words.iter().any(Word::is_empty) {
        return Err(MonoidError::EmptyWordInW);
    }
    let mut factors: Vec<Word> = words
        .iter()
        .flat_map(|w| w.factors())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    factors.sort_by(|a, b| a.shortlex_cmp(b));
    let n = factors.len() + 2;
    let zero = n - 1;
    let index: HashMap<&Word, usize> = factors.iter().enumerate().map(|(i, f)| (f, i + 1)).collect();

    let mut labels = vec!["1".to_string()];
    labels.extend(factors.iter().map(factor_label));
    labels.push("0".to_string());

    let mut right = vec![zero as u32; n * n];
    for a in 0..n {
        right[a] = a as u32;
        right[a * n] = a as u32;
    }
    for (i, f) in factors.iter().enumerate() {
        for (j, g) in factors.iter().enumerate() {
            if let Some(&k) = index.get(&f.concat(g)) {
                right[(j + 1) * n + (i + 1)] = k as u32;
            }
        }
    }
    FiniteMonoid::from_columns(0, labels, right)
}

/// The five-element monoid `{1, a, b, ba, 0}` with `aa = a`, `bb = b` and
/// `ab = 0`.
pub fn build_a01() -> FiniteMonoid {
    let labels = ["1", "a", "b", "ba", "0"].map(String::from).to_vec();
    let table = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 1, 4, 4, 4],
        vec![2, 3, 2, 3, 4],
        vec![3, 3, 4, 4, 4],
        vec![4, 4, 4, 4, 4],
    ];
    FiniteMonoid::new(0, labels, table).expect("valid table")
}

/// The monoid of reflexive binary relations on `n` points under composition.
///
/// Element `i` is the relation whose off-diagonal pairs are given by the bits
/// of `i`, so index 0 is the identity relation. Conjugation by the `n!`
/// point permutations is registered as a symmetry.
pub fn build_reflexive_relations(n: usize) -> Result<FiniteMonoid, MonoidError> {
    if !(2..=4).contains(&n) {
        return Err(MonoidError::SizeOutOfRange(n));
    }
    let off_diagonal: Vec<(usize, usize)> =
        (0..n).cartesian_product(0..n).filter(|(i, j)| i != j).collect();
    let size = 1usize << off_diagonal.len();
    // Matrices are packed row by row into 4-bit nibbles.
    let bit = |i: usize, j: usize| 1u16 << (4 * i + j);
    let diagonal: u16 = (0..n).map(|i| bit(i, i)).fold(0, |a, b| a | b);
    let matrix: Vec<u16> = (0..size)
        .map(|mask| {
            off_diagonal
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .fold(diagonal, |m, (_, &(i, j))| m | bit(i, j))
        })
        .collect();
    let mut index = vec![u32::MAX; 1 << 16];
    for (e, &m) in matrix.iter().enumerate() {
        index[m as usize] = e as u32;
    }
    let row = |m: u16, i: usize| (m >> (4 * i)) & 0xF;
    let compose = |a: u16, b: u16| -> u16 {
        let mut out = 0u16;
        for i in 0..n {
            let mut r = 0u16;
            for k in 0..n {
                if row(a, i) >> k & 1 == 1 {
                    r |= row(b, k);
                }
            }
            out |= r << (4 * i);
        }
        out
    };
    let mut right = vec![0u32; size * size];
    for b in 0..size {
        for a in 0..size {
            right[b * size + a] = index[compose(matrix[a], matrix[b]) as usize];
        }
    }
    let labels = matrix
        .iter()
        .map(|&m| (0..n).map(|i| (0..n).map(|j| if row(m, i) >> j & 1 == 1 { '1' } else { '0' }).collect::<String>()).join("|"))
        .collect();
    let monoid = FiniteMonoid::from_columns(0, labels, right)?;

    let symmetries = (0..n)
        .permutations(n)
        .map(|p| {
            (0..size)
                .map(|e| {
                    let m = matrix[e];
                    let mut image = 0u16;
                    for i in 0..n {
                        for j in 0..n {
                            if row(m, i) >> j & 1 == 1 {
                                image |= bit(p[i], p[j]);
                            }
                        }
                    }
                    index[image as usize] as usize
                })
                .collect()
        })
        .collect();
    monoid.with_symmetries(symmetries)
}

/// Componentwise product; element `(i, j)` has index `i·|N| + j`.
pub fn direct_product(m: &FiniteMonoid, n: &FiniteMonoid) -> FiniteMonoid {
    let (sm, sn) = (m.size(), n.size());
    let size = sm * sn;
    let labels =
        (0..sm).cartesian_product(0..sn).map(|(i, j)| format!("({},{})", m.label(i), n.label(j))).collect();
    let mut right = vec![0u32; size * size];
    for b in 0..size {
        for a in 0..size {
            let (ai, aj, bi, bj) = (a / sn, a % sn, b / sn, b % sn);
            right[b * size + a] = (m.mul(ai, bi) * sn + n.mul(aj, bj)) as u32;
        }
    }
    FiniteMonoid::from_columns(m.one() * sn + n.one(), labels, right).expect("product of monoids is a monoid")
}

/// The one-element monoid.
pub fn trivial_monoid() -> FiniteMonoid {
    FiniteMonoid::new(0, vec!["1".into()], vec![vec![0]]).expect("valid table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn sw_orders() {
        let m = build_sw(&[w("ab")]).unwrap();
        assert_eq!(m.labels(), ["1", "a", "b", "ab", "0"]);
        assert_eq!(m.mul(1, 2), 3);
        assert_eq!(m.mul(2, 1), 4);
        assert_eq!(build_sw(&[]).unwrap().size(), 2);
        assert_eq!(build_sw(&[w("ab"), Word::empty()]), Err(MonoidError::EmptyWordInW));
    }

    #[test]
    fn a01_relations() {
        let m = build_a01();
        let (a, b, ba, zero) = (1, 2, 3, 4);
        assert_eq!(m.mul(a, b), zero);
        assert_eq!(m.mul(b, a), ba);
        assert_eq!(m.mul(ba, ba), zero);
    }

    #[test]
    fn reflexive_relation_sizes() {
        assert_eq!(build_reflexive_relations(2).unwrap().size(), 4);
        let s3 = build_reflexive_relations(3).unwrap();
        assert_eq!(s3.size(), 64);
        assert_eq!(s3.one(), 0);
        assert_eq!(s3.label(0), "100|010|001");
        assert!(build_reflexive_relations(5).is_err());
        assert!(build_reflexive_relations(1).is_err());
    }

    #[test]
    fn products() {
        let a = build_a01();
        let s = build_sw(&[w("ata")]).unwrap();
        assert_eq!(direct_product(&a, &s).size(), 5 * s.size());
        let same = direct_product(&a, &trivial_monoid());
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(same.mul(x, y), a.mul(x, y));
            }
        }
    }
}
