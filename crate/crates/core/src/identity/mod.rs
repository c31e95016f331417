//! Identities `u ≈ v`, their canonical form, structural properties, unstable
//! pairs and the good/bad typing of adjacent pairs.

pub mod named;
mod pairs;
mod props;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::word::{Var, VarSet, Word, WordError};

pub use pairs::{
    blbal1_condition, find_critical_pair, pair_is_good, sigma_type, unstable_pairs, PairType,
    SigmaSet, UnstablePair,
};
pub use props::{
    classify, is_almost_linear, is_balanced, is_block_balanced, is_block_balanced_by_blocks,
    is_compact_identity, is_n_limited, is_p11, is_p12, is_p1b, is_p1mu, is_p22, is_pmu2, is_pn,
    is_regular, PropertyReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("cannot parse identity `{0}`: expected `<word> == <word>`")]
    Syntax(String),
    #[error("identity `{0}` is not balanced")]
    NotBalanced(String),
    #[error("invalid occurrence pair: {0}")]
    InvalidPair(String),
    #[error("substitution has no image for variable `{0}`")]
    PartialSubstitution(String),
    #[error("substitution maps `{0}` to the empty word")]
    EmptyImage(String),
}

/// An identity `lhs ≈ rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity { lhs, rhs }
    }

    /// Parses `u == v` (also accepts `≈` or `~` as the separator).
    pub fn parse(text: &str) -> Result<Identity, IdentityError> {
        Identity::parse_with(text, Default::default())
    }

    pub fn parse_with(text: &str, options: crate::word::ParseOptions) -> Result<Identity, IdentityError> {
        let parts: Vec<&str> = ["==", "≈", "~"]
            .iter()
            .find_map(|sep| {
                let parts: Vec<&str> = text.split(sep).collect();
                (parts.len() == 2).then_some(parts)
            })
            .ok_or_else(|| IdentityError::Syntax(text.to_string()))?;
        Ok(Identity::new(
            Word::parse_with(parts[0], options)?,
            Word::parse_with(parts[1], options)?,
        ))
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    /// The mirror image: both sides read right to left.
    pub fn reversed(&self) -> Identity {
        Identity::new(self.lhs.reversed(), self.rhs.reversed())
    }

    /// Variables of both sides, lhs first, in order of first appearance.
    pub fn content(&self) -> Vec<Var> {
        let mut seen = HashSet::new();
        self.lhs
            .letters()
            .iter()
            .chain(self.rhs.letters())
            .copied()
            .filter(|v| seen.insert(*v))
            .collect()
    }

    /// Deletes every variable outside `keep` from both sides.
    pub fn restrict_to(&self, keep: &VarSet) -> Identity {
        Identity::new(self.lhs.restrict_to(keep), self.rhs.restrict_to(keep))
    }

    /// Renames variables in order of first appearance (lhs, then rhs) to
    /// the fixed enumeration `x, y, z, p, …`.
    pub fn canonical(&self) -> Identity {
        let map: HashMap<Var, Var> =
            self.content().into_iter().enumerate().map(|(i, v)| (v, Var::canonical(i))).collect();
        Identity::new(self.lhs.rename(&map), self.rhs.rename(&map))
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// A renaming-invariant key that also ignores orientation.
    pub fn unoriented_key(&self) -> Identity {
        let a = self.canonical();
        let b = self.swapped().canonical();
        let (sa, sb) = (a.to_string(), b.to_string());
        if sa <= sb {
            a
        } else {
            b
        }
    }

    /// Applies `theta` to both sides. Every variable must have an image, and
    /// images must be nonempty unless `allow_empty` is set.
    pub fn substitute(&self, theta: &HashMap<Var, Word>, allow_empty: bool) -> Result<Identity, IdentityError> {
        for v in self.content() {
            match theta.get(&v) {
                None => return Err(IdentityError::PartialSubstitution(v.name().to_string())),
                Some(image) if image.is_empty() && !allow_empty => {
                    return Err(IdentityError::EmptyImage(v.name().to_string()))
                }
                Some(_) => {}
            }
        }
        Ok(Identity::new(self.lhs.substitute(theta), self.rhs.substitute(theta)))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

impl FromStr for Identity {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Identity, IdentityError> {
        Identity::parse(s)
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Identity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Identity::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// An identity together with a display name such as `σ1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedIdentity {
    pub name: String,
    pub identity: Identity,
}

impl NamedIdentity {
    pub fn new(name: impl Into<String>, identity: Identity) -> NamedIdentity {
        NamedIdentity { name: name.into(), identity }
    }
}

/// Shorthand for parsing an identity literal; panics on malformed input.
pub fn id(text: &str) -> Identity {
    Identity::parse(text).unwrap_or_else(|e| panic!("{e}"))
}
