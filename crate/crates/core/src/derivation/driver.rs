use std::collections::BTreeSet;
use std::fmt::Debug;

use super::trace::Trace;
use super::{DerivationError, RewriteSystem};
use crate::identity::{find_critical_pair, unstable_pairs, Identity, NamedIdentity, UnstablePair};
use crate::word::{OccRef, Word};

/// A well-founded measure; derivation stops when it reaches zero.
pub trait Measure: Ord + Clone + Debug {
    fn is_zero(&self) -> bool;
}

impl Measure for usize {
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

/// Compared lexicographically, most significant entry first.
impl Measure for Vec<usize> {
    fn is_zero(&self) -> bool {
        self.iter().all(|&k| k == 0)
    }
}

/// One round of a measure-decreasing derivation: `lhs` rewrites `u` and
/// `rhs` rewrites `v`. Rules outside the system that a round relies on are
/// declared in `extra_rules`.
#[derive(Clone, Debug)]
pub struct StepResult {
    pub lhs: Trace,
    pub rhs: Trace,
    pub extra_rules: Vec<NamedIdentity>,
}

impl StepResult {
    pub fn left(lhs: Trace, v: &Word) -> StepResult {
        StepResult { lhs, rhs: Trace::empty(v.clone()), extra_rules: Vec::new() }
    }
}

/// Two traces `u → u'` and `v → v'`, plus the rules used beyond the system.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub lhs: Trace,
    pub rhs: Trace,
    pub extra_rules: Vec<NamedIdentity>,
}

impl Derivation {
    /// The identity `u' ≈ v'` that was reached.
    pub fn reached(&self) -> Identity {
        Identity::new(self.lhs.end.clone(), self.rhs.end.clone())
    }

    /// A single trace `u → … → v`, when both sides met.
    pub fn into_trace(self) -> Result<Trace, DerivationError> {
        if self.lhs.end != self.rhs.end {
            return Err(DerivationError::Stalled(format!("sides end at different words: {}", self.reached())));
        }
        Ok(self.lhs.then(self.rhs.inverted()))
    }
}

/// Repeatedly applies `step_rule` while `measure` is nonzero, checking that
/// every round replays, uses only admitted rules and strictly decreases the
/// measure.
pub fn measure_decreasing_derive<K: Measure>(
    id: &Identity,
    system: &RewriteSystem,
    measure: impl Fn(&Identity) -> K,
    mut step_rule: impl FnMut(&Identity) -> Result<StepResult, DerivationError>,
) -> Result<Derivation, DerivationError> {
    let mut out = Derivation {
        lhs: Trace::empty(id.lhs.clone()),
        rhs: Trace::empty(id.rhs.clone()),
        extra_rules: Vec::new(),
    };
    let mut current = id.clone();
    let mut value = measure(&current);
    while !value.is_zero() {
        let round = step_rule(&current)?;
        if round.lhs.start != current.lhs || round.rhs.start != current.rhs {
            return Err(DerivationError::Stalled(format!("step rule started from the wrong words at `{current}`")));
        }
        round.lhs.replay()?;
        round.rhs.replay()?;
        out.extra_rules.extend(round.extra_rules);
        let extended;
        let admitted = if out.extra_rules.is_empty() {
            system
        } else {
            extended = system.extended(&out.extra_rules);
            &extended
        };
        round.lhs.uses_only(admitted)?;
        round.rhs.uses_only(admitted)?;
        let next = Identity::new(round.lhs.end.clone(), round.rhs.end.clone());
        let next_value = measure(&next);
        if next_value >= value {
            return Err(DerivationError::StepRuleFailedToDecrease {
                identity: current.to_string(),
                before: format!("{value:?}"),
                after: format!("{next_value:?}"),
            });
        }
        out.lhs = out.lhs.then(round.lhs);
        out.rhs = out.rhs.then(round.rhs);
        current = next;
        value = next_value;
    }
    Ok(out)
}

/// Assigns a Type in `1..=types()` to pairs of occurrences of distinct
/// variables in a word.
pub trait TypeAssignment {
    fn types(&self) -> usize;
    fn type_of(&self, u: &Word, c: OccRef, d: OccRef) -> Option<usize>;
}

type PairKey = (OccRef, OccRef);

fn key(p: &UnstablePair) -> PairKey {
    if p.left <= p.right {
        (p.left, p.right)
    } else {
        (p.right, p.left)
    }
}

/// Unstable pairs grouped by Type (index `i - 1` holds Type `i`).
fn typed_pairs(id: &Identity, types: &dyn TypeAssignment) -> Result<Vec<BTreeSet<PairKey>>, DerivationError> {
    let mut out = vec![BTreeSet::new(); types.types()];
    let pairs = unstable_pairs(id).map_err(|e| DerivationError::PropertyViolated(e.to_string()))?;
    for p in &pairs {
        let t = types
            .type_of(&id.lhs, p.left, p.right)
            .ok_or_else(|| DerivationError::PropertyViolated(format!("unstable pair {{{}, {}}} has no Type", p.left, p.right)))?;
        out[t - 1].insert(key(p));
    }
    Ok(out)
}

/// The Type-driven derivation: while `u ≈ v` is nontrivial, take its
/// leftmost critical pair `{c,d}` of Type `i` and let `step_rule` produce
/// `u → w`. Each round must make `{c,d}` stable, keep every stable pair of
/// Type at least `i` stable, and keep `property`; the vector of unstable
/// pair counts from the highest Type down must therefore decrease.
pub fn typed_derive(
    id: &Identity,
    system: &RewriteSystem,
    types: &dyn TypeAssignment,
    property: impl Fn(&Identity) -> bool,
    mut step_rule: impl FnMut(&Identity, &UnstablePair, usize) -> Result<StepResult, DerivationError>,
) -> Result<Derivation, DerivationError> {
    if !property(id) {
        return Err(DerivationError::PropertyViolated(format!("`{id}` lacks the driving property")));
    }
    let measure = |i: &Identity| -> Vec<usize> {
        typed_pairs(i, types).map(|sets| sets.iter().rev().map(BTreeSet::len).collect()).unwrap_or_default()
    };
    measure_decreasing_derive(id, system, measure, |current| {
        let pair = find_critical_pair(current)
            .map_err(|e| DerivationError::PropertyViolated(e.to_string()))?
            .ok_or_else(|| DerivationError::Stalled("no critical pair in a nontrivial identity".into()))?;
        let t = types
            .type_of(&current.lhs, pair.left, pair.right)
            .ok_or_else(|| DerivationError::PropertyViolated("critical pair has no Type".into()))?;
        let before = typed_pairs(current, types)?;
        let round = step_rule(current, &pair, t)?;
        let next = Identity::new(round.lhs.end.clone(), current.rhs.clone());
        if !round.rhs.is_empty() {
            return Err(DerivationError::Stalled("typed step rules rewrite the left side only".into()));
        }
        if !property(&next) {
            return Err(DerivationError::PropertyViolated(format!("step produced `{next}`")));
        }
        let after = typed_pairs(&next, types)?;
        if after[t - 1].contains(&key(&pair)) {
            return Err(DerivationError::StepRuleFailedToDecrease {
                identity: current.to_string(),
                before: format!("critical pair {{{}, {}}}", pair.left, pair.right),
                after: "still unstable".into(),
            });
        }
        for i in t..=types.types() {
            if let Some(new) = after[i - 1].difference(&before[i - 1]).next() {
                return Err(DerivationError::StepRuleFailedToDecrease {
                    identity: current.to_string(),
                    before: format!("Type {i} pair {{{}, {}}} stable", new.0, new.1),
                    after: "unstable".into(),
                });
            }
        }
        Ok(round)
    })
}
