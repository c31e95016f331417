//! Finite monoids given by multiplication tables, the constructions used
//! throughout the crate, and brute-force model checking.

mod build;
mod check;
mod isoterm;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::{build_a01, build_reflexive_relations, build_sw, direct_product, trivial_monoid};
pub use check::{equational_classes, evaluate, find_counterexample, satisfies, satisfies_all, Assignment};
pub use isoterm::{is_b_unstable, is_isoterm_bounded, BUnstableVerdict, IsotermVerdict};

/// Monoids up to this size have their laws checked over all triples; larger
/// ones use a generator-based associativity test.
const EXHAUSTIVE_CHECK_LIMIT: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("multiplication table must be {size}×{size}")]
    TableShape { size: usize },
    #[error("table entry {entry} is not an element (size {size})")]
    EntryOutOfRange { entry: usize, size: usize },
    #[error("element {one} is not a two-sided identity (fails at {at})")]
    NotIdentity { one: usize, at: usize },
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("labels must be given for all {size} elements")]
    Labels { size: usize },
    #[error("a monoid must have at least one element")]
    Empty,
    #[error("W may not contain the empty word")]
    EmptyWordInW,
    #[error("reflexive relations are supported on 2 to 4 points, not {0}")]
    SizeOutOfRange(usize),
    #[error("length bound {bound} is shorter than the probed word ({len} letters)")]
    BoundTooSmall { bound: usize, len: usize },
    #[error("variable `{0}` must be non-linear in the probed word")]
    NamedVariableLinear(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid monoid file: {0}")]
    Format(String),
}

/// A finite monoid with elements `0..size`.
///
/// The table is stored by columns: `right[b * size + a] = a·b`, so that
/// folding a word left to right walks one column per letter.
#[derive(Clone)]
pub struct FiniteMonoid {
    size: usize,
    one: usize,
    labels: Vec<String>,
    right: Vec<u32>,
    /// Automorphisms (as element permutations) used to prune assignment
    /// enumeration; always contains the identity map when nonempty.
    symmetries: Vec<Vec<u32>>,
}

/// On-disk form: `table[a][b] = a·b`.
#[derive(Serialize, Deserialize)]
struct MonoidFile {
    size: usize,
    one: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    /// Builds and validates a monoid from a row-major table.
    pub fn new(one: usize, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteMonoid, MonoidError> {
        let size = table.len();
        if size == 0 {
            return Err(MonoidError::Empty);
        }
        if table.iter().any(|row| row.len() != size) {
            return Err(MonoidError::TableShape { size });
        }
        let mut right = vec![0u32; size * size];
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= size {
                    return Err(MonoidError::EntryOutOfRange { entry: c, size });
                }
                right[b * size + a] = c as u32;
            }
        }
        FiniteMonoid::from_columns(one, labels, right)
    }

    pub(crate) fn from_columns(one: usize, labels: Vec<String>, right: Vec<u32>) -> Result<FiniteMonoid, MonoidError> {
        let size = labels.len();
        if size == 0 {
            return Err(MonoidError::Empty);
        }
        if right.len() != size * size {
            return Err(MonoidError::TableShape { size });
        }
        if let Some(&bad) = right.iter().find(|&&c| c as usize >= size) {
            return Err(MonoidError::EntryOutOfRange { entry: bad as usize, size });
        }
        let m = FiniteMonoid { size, one, labels, right, symmetries: Vec::new() };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), MonoidError> {
        let n = self.size;
        if self.one >= n {
            return Err(MonoidError::EntryOutOfRange { entry: self.one, size: n });
        }
        if let Some(at) = (0..n).find(|&x| self.mul(self.one, x) != x || self.mul(x, self.one) != x) {
            return Err(MonoidError::NotIdentity { one: self.one, at });
        }
        let pivots: Vec<usize> =
            if n <= EXHAUSTIVE_CHECK_LIMIT { (0..n).collect() } else { self.generators() };
        // Checking (a·g)·c = a·(g·c) for g ranging over a generating set
        // suffices: associativity then propagates to all products of
        // generators by induction on their length.
        for &b in &pivots {
            for a in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(MonoidError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// A generating set found greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.size;
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[self.one] = true;
        let mut members = vec![self.one];
        for e in 0..n {
            if reached[e] {
                continue;
            }
            gens.push(e);
            // Close the reached set under right multiplication by all
            // generators; only new products need expanding, except that the
            // new generator must be applied to every old member.
            let mut queue: Vec<usize> = Vec::new();
            for &m in &members {
                let p = self.mul(m, e);
                if !reached[p] {
                    reached[p] = true;
                    queue.push(p);
                }
            }
            while let Some(m) = queue.pop() {
                members.push(m);
                for &g in &gens {
                    let p = self.mul(m, g);
                    if !reached[p] {
                        reached[p] = true;
                        queue.push(p);
                    }
                }
            }
        }
        gens
    }

    /// Registers automorphisms used to prune assignment enumeration. The
    /// identity map is added automatically; each map is validated.
    pub fn with_symmetries(mut self, maps: Vec<Vec<usize>>) -> Result<FiniteMonoid, MonoidError> {
        let n = self.size;
        let gens = self.generators();
        let mut all: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        for map in maps {
            if map.len() != n {
                return Err(MonoidError::NotAutomorphism("wrong length".into()));
            }
            let mut seen = vec![false; n];
            for &i in &map {
                if i >= n || std::mem::replace(&mut seen[i], true) {
                    return Err(MonoidError::NotAutomorphism("not a permutation".into()));
                }
            }
            if map[self.one] != self.one {
                return Err(MonoidError::NotAutomorphism("identity not fixed".into()));
            }
            // A bijection respecting products with generators on the right
            // respects all products.
            for a in 0..n {
                for &g in &gens {
                    if map[self.mul(a, g)] != self.mul(map[a], map[g]) {
                        return Err(MonoidError::NotAutomorphism(format!("fails at {a}·{g}")));
                    }
                }
            }
            let map: Vec<u32> = map.into_iter().map(|i| i as u32).collect();
            if !all.contains(&map) {
                all.push(map);
            }
        }
        self.symmetries = all;
        Ok(self)
    }

    /// One representative (the smallest index) per orbit of the registered
    /// symmetries; all elements when none are registered.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        if self.symmetries.len() <= 1 {
            return (0..self.size).collect();
        }
        (0..self.size)
            .filter(|&e| self.symmetries.iter().all(|s| s[e] as usize >= e))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.right[b * self.size + a] as usize
    }

    /// The column of right multiplication by `b`.
    #[inline]
    pub(crate) fn column(&self, b: usize) -> &[u32] {
        &self.right[b * self.size..(b + 1) * self.size]
    }

    /// Whether every element is invertible.
    pub fn is_group(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).any(|b| self.mul(a, b) == self.one))
    }

    pub fn to_json(&self) -> String {
        let table = (0..self.size).map(|a| (0..self.size).map(|b| self.mul(a, b)).collect()).collect();
        let file = MonoidFile { size: self.size, one: self.one, labels: self.labels.clone(), table };
        serde_json::to_string(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FiniteMonoid, MonoidError> {
        let file: MonoidFile = serde_json::from_str(text).map_err(|e| MonoidError::Format(e.to_string()))?;
        if file.labels.len() != file.size {
            return Err(MonoidError::Labels { size: file.size });
        }
        if file.table.len() != file.size {
            return Err(MonoidError::TableShape { size: file.size });
        }
        FiniteMonoid::new(file.one, file.labels, file.table)
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid(size {}, one {})", self.size, self.labels[self.one])
    }
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.one == other.one && self.labels == other.labels && self.right == other.right
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert_eq!(FiniteMonoid::new(0, labels(2), vec![vec![0, 1], vec![1]]), Err(MonoidError::TableShape { size: 2 }));
        assert!(matches!(
            FiniteMonoid::new(1, labels(2), vec![vec![0, 1], vec![1, 0]]),
            Err(MonoidError::NotIdentity { .. })
        ));
        // Here (1·1)·2 = 1 but 1·(1·2) = 2.
        let broken = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        assert!(matches!(FiniteMonoid::new(0, labels(3), broken), Err(MonoidError::NotAssociative { .. })));
    }

    #[test]
    fn json_round_trip() {
        let m = build_a01();
        let back = FiniteMonoid::from_json(&m.to_json()).unwrap();
        assert_eq!(back.to_json(), m.to_json());
    }
}
