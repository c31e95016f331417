//! The finite-basis decision procedure for products `A0^1 × S(W)`, the
//! adjacency test that characterizes `S(W) ⊨ {σ1, σ2}`, the chain of
//! alternating examples and bounded checkers for related sufficient
//! conditions.

mod hypotheses;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{build_a01, build_sw, direct_product, FiniteMonoid, MonoidError};
use crate::word::{OccRef, Var, Word};

pub use hypotheses::{check_abtab, check_fbs3, check_fbtlem, check_fbtlem1, ClauseReport, HypothesisReport, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FbError {
    #[error("W violates the adjacency condition: {0}")]
    HypothesisViolated(W12Violation),
    #[error("chain index {0} is outside 1..=8")]
    IndexOutOfRange(usize),
    #[error("W contains the empty word")]
    EmptyWord,
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A set of words `W`: either finite, or the infinite family
/// `{aᵏbᵏ : k > 0}` together with a finite part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WFamily {
    Finite { words: Vec<Word> },
    Symbolic { finite: Vec<Word> },
}

impl WFamily {
    pub fn finite(words: Vec<Word>) -> Result<WFamily, FbError> {
        if words.iter().any(Word::is_empty) {
            return Err(FbError::EmptyWord);
        }
        Ok(WFamily::Finite { words })
    }

    /// The explicitly listed words.
    pub fn words(&self) -> &[Word] {
        match self {
            WFamily::Finite { words } => words,
            WFamily::Symbolic { finite } => finite,
        }
    }

    /// The monoid `A0^1 × S(W)`, or `A0^1` alone for empty `W`.
    pub fn product_monoid(&self) -> Result<FiniteMonoid, FbError> {
        match self {
            WFamily::Symbolic { .. } => Err(FbError::Monoid(MonoidError::Format("S(W) of an infinite W is not finite".into()))),
            WFamily::Finite { words } if words.is_empty() => Ok(build_a01()),
            WFamily::Finite { words } => Ok(direct_product(&build_a01(), &build_sw(words)?)),
        }
    }
}

/// An adjacent pair of occurrences of distinct non-linear variables that is
/// not a first occurrence next to a last occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct W12Violation {
    pub word_index: usize,
    pub word: Word,
    pub position: usize,
    pub left: OccRef,
    pub right: OccRef,
}

impl std::fmt::Display for W12Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pair {{{}, {}}} at position {} of `{}`", self.left, self.right, self.position + 1, self.word)
    }
}

/// Result of the adjacency test, with the first violation found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct W12Report {
    pub holds: bool,
    pub violation: Option<W12Violation>,
}

/// Whether every adjacent pair of occurrences of distinct non-linear
/// variables, in every word of `W`, is `{first x, last y}` in some order.
///
/// The words `aᵏbᵏ` of the symbolic family always pass: their only such
/// pair is the last `a` next to the first `b`.
pub fn fact_w12_check(w: &WFamily) -> W12Report {
    for (word_index, u) in w.words().iter().enumerate() {
        let counts = u.counts();
        let flags = u.first_last_flags();
        let occ = u.occurrences();
        for p in 0..u.len().saturating_sub(1) {
            let (a, b) = (u.letters()[p], u.letters()[p + 1]);
            if a == b || counts[&a] < 2 || counts[&b] < 2 {
                continue;
            }
            let first_last = (flags[p].0 && flags[p + 1].1) || (flags[p].1 && flags[p + 1].0);
            if !first_last {
                let violation = W12Violation { word_index, word: u.clone(), position: p, left: occ[p], right: occ[p + 1] };
                return W12Report { holds: false, violation: Some(violation) };
            }
        }
    }
    W12Report { holds: true, violation: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    #[serde(rename = "FB")]
    Fb,
    #[serde(rename = "NFB")]
    Nfb,
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Decision::Fb => "FB",
            Decision::Nfb => "NFB",
        })
    }
}

/// An occurrence of `b^(m+1-d) T b^d` with nonempty `T` in a word of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub d: usize,
    pub word_index: usize,
    pub word: Word,
    pub start: usize,
    pub end: usize,
    pub b: Var,
    pub t: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FbWitness {
    /// `W` is empty, so the monoid is `A0^1` itself.
    TrivialW,
    /// `W` contains arbitrarily long powers.
    InfiniteM,
    /// No word of `W` has a factor `b^(m+1-d) T b^d`.
    FreeD { d: usize },
    /// For each `d` in `1..=m`, a factor `b^(m+1-d) T b^d` of a word of `W`.
    Covered { covers: Vec<Cover> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FbVerdict {
    pub decision: Decision,
    /// The largest exponent of a power factor of a word of `W`; `None` when
    /// unbounded.
    pub m: Option<usize>,
    pub witness: FbWitness,
}

/// Largest `k` such that some `aᵏ` is a factor of a word of `W`.
pub fn max_power(words: &[Word]) -> usize {
    words
        .iter()
        .flat_map(|u| u.letters().chunk_by(|a, b| a == b).map(<[Var]>::len).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}

/// The first factor `b^(m+1-d) T b^d` with `T` nonempty (and unrestricted)
/// in the words of `W`.
pub fn find_cover(words: &[Word], m: usize, d: usize) -> Option<Cover> {
    let (left, right) = (m + 1 - d, d);
    for (word_index, u) in words.iter().enumerate() {
        let l = u.letters();
        let n = l.len();
        for start in 0..n {
            let b = l[start];
            if start + left > n || l[start..start + left].iter().any(|&c| c != b) {
                continue;
            }
            // T occupies start+left .. end-right and must be nonempty.
            for end in start + left + 1 + right..=n {
                if l[end - right..end].iter().all(|&c| c == b) {
                    return Some(Cover {
                        d,
                        word_index,
                        word: u.clone(),
                        start,
                        end,
                        b,
                        t: u.factor(start + left, end - right),
                    });
                }
            }
        }
    }
    None
}

/// Decides whether `A0^1 × S(W)` is finitely based, for `W` passing
/// [`fact_w12_check`]. It is finitely based iff powers in `W` are
/// unbounded, or for some `d` in `1..=m` no word of `W` has a factor
/// `b^(m+1-d) T b^d` with `T` nonempty.
pub fn theorem_alg_decide(w: &WFamily) -> Result<FbVerdict, FbError> {
    let report = fact_w12_check(w);
    if let Some(v) = report.violation {
        return Err(FbError::HypothesisViolated(v));
    }
    if let WFamily::Symbolic { .. } = w {
        return Ok(FbVerdict { decision: Decision::Fb, m: None, witness: FbWitness::InfiniteM });
    }
    let words = w.words();
    if words.is_empty() {
        return Ok(FbVerdict { decision: Decision::Fb, m: Some(0), witness: FbWitness::TrivialW });
    }
    let m = max_power(words);
    let mut covers = Vec::with_capacity(m);
    for d in 1..=m {
        match find_cover(words, m, d) {
            None => return Ok(FbVerdict { decision: Decision::Fb, m: Some(m), witness: FbWitness::FreeD { d } }),
            Some(c) => covers.push(c),
        }
    }
    Ok(FbVerdict { decision: Decision::Nfb, m: Some(m), witness: FbWitness::Covered { covers } })
}

/// The set `W` of the `k`-th member `A0^1 × S(W)` of the alternating chain
/// (`k = 1` is `A0^1` itself, with empty `W`).
pub fn chain_monoid(k: usize) -> Result<WFamily, FbError> {
    let words: &[&str] = match k {
        1 => &[],
        2 => &["a t a"],
        3 => &["a a t a"],
        4 => &["a a t a", "a t a a"],
        5 => &["a a a t a", "a t a a a"],
        6 => &["a a a t a", "a t a a a", "a a t a a"],
        7 => &["a a a a t a", "a t a a a a", "a a a t a a"],
        8 => &["a a a a t a", "a t a a a a", "a a a t a a", "a a t a a a"],
        _ => return Err(FbError::IndexOutOfRange(k)),
    };
    WFamily::finite(words.iter().map(|s| Word::parse(s).expect("valid word")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn fam(words: &[&str]) -> WFamily {
        WFamily::finite(words.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert!(fact_w12_check(&fam(&["a a a b b", "a a b b b"])).holds);
        let r = fact_w12_check(&fam(&["a b a b"]));
        let v = r.violation.unwrap();
        assert_eq!((v.left, v.right), (OccRef::new(Var::new("a"), 1), OccRef::new(Var::new("b"), 1)));
        assert!(fact_w12_check(&fam(&[])).holds);
        assert!(fact_w12_check(&WFamily::Symbolic { finite: vec![] }).holds);
    }

    #[test]
    fn decision_examples() {
        let v = theorem_alg_decide(&fam(&["a t a"])).unwrap();
        assert_eq!((v.decision, v.m), (Decision::Nfb, Some(1)));
        let v = theorem_alg_decide(&fam(&["a a t a"])).unwrap();
        assert_eq!((v.decision, v.m, v.witness), (Decision::Fb, Some(2), FbWitness::FreeD { d: 2 }));
        let v = theorem_alg_decide(&fam(&["a a t a", "a t a a"])).unwrap();
        assert_eq!((v.decision, v.m), (Decision::Nfb, Some(2)));
        let v = theorem_alg_decide(&fam(&["a a a t a", "a t a a a"])).unwrap();
        assert_eq!((v.decision, v.witness), (Decision::Fb, FbWitness::FreeD { d: 2 }));
        assert!(matches!(theorem_alg_decide(&fam(&["a b a b"])), Err(FbError::HypothesisViolated(_))));
        assert_eq!(theorem_alg_decide(&fam(&[])).unwrap().witness, FbWitness::TrivialW);
    }

    #[test]
    fn chain_alternates() {
        for k in 1..=8 {
            let v = theorem_alg_decide(&chain_monoid(k).unwrap()).unwrap();
            assert_eq!(v.decision == Decision::Fb, k % 2 == 1, "M{k}");
        }
        assert_eq!(chain_monoid(6).unwrap(), fam(&["a a a t a", "a t a a a", "a a t a a"]));
        assert!(matches!(chain_monoid(9), Err(FbError::IndexOutOfRange(9))));
    }

    #[test]
    fn covers_allow_b_inside_t() {
        let c = find_cover(&[w("a a a")], 1, 1).unwrap();
        assert_eq!((c.start, c.end, c.t.clone()), (0, 3, w("a")));
        assert!(find_cover(&[w("a a")], 1, 1).is_none());
    }
}
