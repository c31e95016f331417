//! Words over interned variables, occurrence bookkeeping, blocks,
//! compactness and scattered subwords.

mod blocks;
mod parse;
mod subwords;
mod var;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use blocks::{blocks, blocks12, Decomposition, Segment};
pub use parse::ParseOptions;
pub use subwords::{scattered_subwords, simon_equiv, simon_key};
pub use var::{is_identifier, Var};

pub type VarSet = BTreeSet<Var>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse word `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("variable `{0}` is linear (occurs at most once) but a non-linear variable is required")]
    NamedVariableLinear(String),
}

/// A finite sequence of variables. The empty word is the monoid identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Var>);

/// The `index`-th occurrence (1-based, counted from the left) of `var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OccRef {
    pub var: Var,
    pub index: usize,
}

impl OccRef {
    pub fn new(var: Var, index: usize) -> OccRef {
        OccRef { var, index }
    }
}

impl fmt::Display for OccRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.var, self.index)
    }
}

impl From<Vec<Var>> for Word {
    fn from(letters: Vec<Var>) -> Word {
        Word(letters)
    }
}

impl FromIterator<Var> for Word {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn parse(input: &str) -> Result<Word, WordError> {
        parse::parse_word(input, ParseOptions::default())
    }

    pub fn parse_with(input: &str, options: ParseOptions) -> Result<Word, WordError> {
        parse::parse_word(input, options)
    }

    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Var> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn occ(&self, x: Var) -> usize {
        self.0.iter().filter(|&&v| v == x).count()
    }

    /// Occurrence counts of every variable in the word.
    pub fn counts(&self) -> HashMap<Var, usize> {
        let mut counts = HashMap::new();
        for &v in &self.0 {
            *counts.entry(v).or_insert(0) += 1;
        }
        counts
    }

    /// Content in order of first appearance.
    pub fn content(&self) -> Vec<Var> {
        let mut seen = VarSet::new();
        self.0.iter().copied().filter(|v| seen.insert(*v)).collect()
    }

    pub fn content_set(&self) -> VarSet {
        self.0.iter().copied().collect()
    }

    /// Variables occurring exactly once, in order of appearance.
    pub fn lin(&self) -> Vec<Var> {
        self.con_filtered(|n| n == 1)
    }

    /// Variables occurring more than once, in order of first appearance.
    pub fn non(&self) -> Vec<Var> {
        self.con_filtered(|n| n > 1)
    }

    /// Variables occurring at most `n` times, in order of first appearance.
    pub fn con_n(&self, n: usize) -> Vec<Var> {
        self.con_filtered(|k| k <= n)
    }

    fn con_filtered(&self, keep: impl Fn(usize) -> bool) -> Vec<Var> {
        let counts = self.counts();
        self.content().into_iter().filter(|v| keep(counts[v])).collect()
    }

    pub fn is_linear_in(&self, x: Var) -> bool {
        self.occ(x) == 1
    }

    pub fn is_n_limited(&self, n: usize) -> bool {
        self.counts().values().all(|&k| k <= n)
    }

    /// The word obtained by deleting every variable not in `keep`.
    pub fn restrict_to(&self, keep: &VarSet) -> Word {
        self.retain(|v| keep.contains(&v))
    }

    pub fn retain(&self, keep: impl Fn(Var) -> bool) -> Word {
        Word(self.0.iter().copied().filter(|&v| keep(v)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Replaces `self[start..end]` by `replacement`.
    pub fn splice(&self, start: usize, end: usize, replacement: &[Var]) -> Word {
        let mut letters = Vec::with_capacity(self.len() - (end - start) + replacement.len());
        letters.extend_from_slice(&self.0[..start]);
        letters.extend_from_slice(replacement);
        letters.extend_from_slice(&self.0[end..]);
        Word(letters)
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor.0.as_slice())
    }

    /// All distinct nonempty factors.
    pub fn factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            for j in i + 1..=self.len() {
                out.insert(self.factor(i, j));
            }
        }
        out
    }

    /// Homomorphic image; variables missing from `theta` are kept unchanged.
    pub fn substitute(&self, theta: &HashMap<Var, Word>) -> Word {
        let mut letters = Vec::new();
        for v in &self.0 {
            match theta.get(v) {
                Some(image) => letters.extend_from_slice(&image.0),
                None => letters.push(*v),
            }
        }
        Word(letters)
    }

    /// Applies a bijective variable renaming.
    pub fn rename(&self, map: &HashMap<Var, Var>) -> Word {
        Word(self.0.iter().map(|v| *map.get(v).unwrap_or(v)).collect())
    }

    /// The occurrence sitting at `pos`.
    pub fn occurrence_at(&self, pos: usize) -> OccRef {
        let var = self.0[pos];
        let index = self.0[..=pos].iter().filter(|&&v| v == var).count();
        OccRef { var, index }
    }

    /// Every position labelled by its occurrence, in positional order.
    pub fn occurrences(&self) -> Vec<OccRef> {
        let mut seen: HashMap<Var, usize> = HashMap::new();
        self.0
            .iter()
            .map(|&var| {
                let n = seen.entry(var).or_insert(0);
                *n += 1;
                OccRef { var, index: *n }
            })
            .collect()
    }

    /// Map from occurrence to position.
    pub fn positions(&self) -> HashMap<OccRef, usize> {
        self.occurrences().into_iter().enumerate().map(|(p, o)| (o, p)).collect()
    }

    pub fn position_of(&self, occ: OccRef) -> Option<usize> {
        if occ.index == 0 {
            return None;
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == occ.var)
            .nth(occ.index - 1)
            .map(|(p, _)| p)
    }

    pub fn first_position(&self, x: Var) -> Option<usize> {
        self.0.iter().position(|&v| v == x)
    }

    pub fn last_position(&self, x: Var) -> Option<usize> {
        self.0.iter().rposition(|&v| v == x)
    }

    /// The last occurrence of `x`, if any.
    pub fn last_occurrence(&self, x: Var) -> Option<OccRef> {
        match self.occ(x) {
            0 => None,
            n => Some(OccRef { var: x, index: n }),
        }
    }

    /// Flags for each position: (is first occurrence, is last occurrence).
    pub fn first_last_flags(&self) -> Vec<(bool, bool)> {
        let n = self.len();
        let mut seen = VarSet::new();
        let mut first = vec![false; n];
        for (p, &v) in self.0.iter().enumerate() {
            first[p] = seen.insert(v);
        }
        seen.clear();
        let mut last = vec![false; n];
        for (p, &v) in self.0.iter().enumerate().rev() {
            last[p] = seen.insert(v);
        }
        first.into_iter().zip(last).collect()
    }

    fn require_non_linear(&self, x: Var) -> Result<(), WordError> {
        if self.occ(x) <= 1 {
            Err(WordError::NamedVariableLinear(x.name().to_string()))
        } else {
            Ok(())
        }
    }

    /// Whether, inside every block, the occurrences of `x` form one run.
    pub fn is_x_compact(&self, x: Var) -> Result<bool, WordError> {
        self.require_non_linear(x)?;
        Ok(self.runs_contiguous(|v| v == x))
    }

    /// Whether, inside every block, the occurrences of `x` and `y` together
    /// form one run.
    pub fn is_xy_compact(&self, x: Var, y: Var) -> Result<bool, WordError> {
        self.require_non_linear(x)?;
        self.require_non_linear(y)?;
        Ok(self.runs_contiguous(|v| v == x || v == y))
    }

    /// Whether the word is `x`-compact for every non-linear `x`.
    pub fn is_compact(&self) -> bool {
        self.non().into_iter().all(|x| self.runs_contiguous(|v| v == x))
    }

    fn runs_contiguous(&self, selected: impl Fn(Var) -> bool) -> bool {
        blocks(self).blocks().all(|(_, block)| {
            let hits: Vec<usize> = block
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, &v)| selected(v))
                .map(|(i, _)| i)
                .collect();
            hits.windows(2).all(|w| w[1] == w[0] + 1)
        })
    }

    /// Comparison in shortlex order by variable name.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a: Vec<_> = self.0.iter().map(|v| v.name()).collect();
            let b: Vec<_> = other.0.iter().map(|v| v.name()).collect();
            a.cmp(&b)
        })
    }
}

/// Multiset of occurrences per variable, used by balance checks.
pub fn occurrence_profile(w: &Word) -> BTreeMap<Var, usize> {
    w.counts().into_iter().collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Word, WordError> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Word::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for parsing a word literal; panics on malformed input.
pub fn w(text: &str) -> Word {
    Word::parse(text).unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms_agree() {
        assert_eq!(w("xt1xyt2y"), w("x t1 x y t2 y"));
        assert_eq!(w("(xy)^3"), w("x y x y x y"));
        assert_eq!(w("x^3 y^2"), w("xxxyy"));
        assert_eq!(w("1"), Word::empty());
        let powers = ParseOptions { digit_powers: true };
        assert_eq!(Word::parse_with("a2ta", powers).unwrap(), w("a a t a"));
        assert_eq!(w("a2ta").len(), 3);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Word::parse("x + y").is_err());
        assert!(Word::parse("(x y").is_err());
        assert!(Word::parse("x)").is_err());
        assert!(Word::parse("^2").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for text in ["x t1 x y t2 y", "1", "foo bar foo", "x"] {
            assert_eq!(w(text).to_string(), text);
        }
    }

    #[test]
    fn content_partitions() {
        let u = w("x t1 x y t2 y z");
        assert_eq!(u.lin(), vec![Var::new("t1"), Var::new("t2"), Var::new("z")]);
        assert_eq!(u.non(), vec![Var::new("x"), Var::new("y")]);
        assert_eq!(u.con_n(1), u.lin());
    }

    #[test]
    fn deletion_examples() {
        let keep: VarSet = ["x", "y", "t2"].iter().map(|s| Var::new(s)).collect();
        assert_eq!(w("x t1 x y t2 y").restrict_to(&keep), w("x x y t2 y"));
        let u = w("x y x y");
        assert_eq!(u.restrict_to(&u.content_set()), u);
        assert_eq!(u.restrict_to(&[Var::new("x")].into()), w("x x"));
    }

    #[test]
    fn occurrences_and_positions() {
        let u = w("x y x x y");
        assert_eq!(u.occurrence_at(3), OccRef::new(Var::new("x"), 3));
        assert_eq!(u.position_of(OccRef::new(Var::new("y"), 2)), Some(4));
        assert_eq!(u.position_of(OccRef::new(Var::new("y"), 3)), None);
        assert_eq!(u.last_occurrence(Var::new("x")), Some(OccRef::new(Var::new("x"), 3)));
    }

    #[test]
    fn compactness_examples() {
        let x = Var::new("x");
        let y = Var::new("y");
        assert!(w("x x y t y x y").is_x_compact(x).unwrap());
        assert!(!w("x y y x").is_x_compact(x).unwrap());
        assert!(w("p x x y z t p y x y z").is_xy_compact(x, y).unwrap());
        assert!(!w("x y z y x z").is_xy_compact(x, y).unwrap());
        assert!(w("x x y t1 y y y x t2 x").is_compact());
        assert_eq!(
            w("x t y").is_x_compact(x),
            Err(WordError::NamedVariableLinear("x".into()))
        );
    }
}
