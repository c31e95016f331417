use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use super::matcher::{matches_at, Binding};
use super::trace::{Direction, Step};
use crate::identity::{is_balanced, Identity, NamedIdentity};
use crate::word::{Var, VarSet, Word};

/// A rewrite rule with its sides compiled to local variable indices.
#[derive(Clone, Debug)]
pub(crate) struct CompiledRule {
    pub name: String,
    pub identity: Identity,
    pub vars: Vec<Var>,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl CompiledRule {
    fn new(rule: &NamedIdentity) -> CompiledRule {
        let vars = rule.identity.content();
        let compile = |w: &Word| w.letters().iter().map(|x| vars.iter().position(|v| v == x).unwrap()).collect();
        CompiledRule {
            name: rule.name.clone(),
            lhs: compile(&rule.identity.lhs),
            rhs: compile(&rule.identity.rhs),
            identity: rule.identity.clone(),
            vars,
        }
    }

    pub fn sides(&self, direction: Direction) -> (&[usize], &[usize]) {
        match direction {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }

    /// The image of a compiled side under a binding into `w`; `None` when
    /// the side uses a variable the binding leaves open.
    pub fn image(&self, side: &[usize], w: &[Var], binding: &Binding) -> Option<Vec<Var>> {
        let mut out = Vec::new();
        for &i in side {
            let (s, l) = binding[i]?;
            out.extend_from_slice(&w[s..s + l]);
        }
        Some(out)
    }

    pub fn step(&self, direction: Direction, position: usize, w: &[Var], binding: &Binding) -> Step {
        let substitution = self
            .vars
            .iter()
            .zip(binding)
            .filter_map(|(v, b)| b.map(|(s, l)| (*v, Word::from(w[s..s + l].to_vec()))))
            .collect();
        Step { rule: self.name.clone(), identity: self.identity.clone(), direction, position, substitution }
    }
}

/// A set of identities closed under deleting variables, applied in both
/// directions.
#[derive(Clone, Debug, Serialize)]
pub struct RewriteSystem {
    pub base: Vec<NamedIdentity>,
    /// Canonical, nontrivial, pairwise inequivalent members of the closure.
    pub closure: Vec<NamedIdentity>,
    #[serde(skip)]
    keys: HashSet<Identity>,
    #[serde(skip)]
    compiled: Vec<CompiledRule>,
}

/// Name of the member obtained by deleting `deleted` from `base`.
fn restricted_name(base: &str, deleted: &[Var]) -> String {
    if deleted.is_empty() {
        base.to_string()
    } else {
        format!("{base}[-{}]", deleted.iter().map(|v| v.name().to_string()).join(","))
    }
}

/// The member of the δ-closure of `rule` obtained by deleting `deleted`,
/// with its variables kept as in `rule`.
pub fn restrict_rule(rule: &NamedIdentity, deleted: &[Var]) -> NamedIdentity {
    let keep: VarSet = rule.identity.content().into_iter().filter(|v| !deleted.contains(v)).collect();
    NamedIdentity::new(restricted_name(&rule.name, deleted), rule.identity.restrict_to(&keep))
}

/// Closes `base` under deleting every subset of variables. Members are
/// canonicalized, trivial ones dropped and duplicates (up to renaming and
/// orientation) merged; a member is named after the first base identity and
/// the smallest deletion set producing it.
pub fn delta_closure(base: &[NamedIdentity]) -> RewriteSystem {
    let mut closure = Vec::new();
    let mut keys = HashSet::new();
    for rule in base {
        let content = rule.identity.content();
        for k in 0..=content.len() {
            for deleted in content.iter().copied().combinations(k) {
                let member = restrict_rule(rule, &deleted);
                if member.identity.is_trivial() {
                    continue;
                }
                if keys.insert(member.identity.unoriented_key()) {
                    closure.push(NamedIdentity::new(member.name, member.identity.canonical()));
                }
            }
        }
    }
    let compiled = closure.iter().map(CompiledRule::new).collect();
    RewriteSystem { base: base.to_vec(), closure, keys, compiled }
}

impl RewriteSystem {
    pub fn empty() -> RewriteSystem {
        delta_closure(&[])
    }

    /// Adds further identities (with their closures).
    pub fn extended(&self, extra: &[NamedIdentity]) -> RewriteSystem {
        let mut base = self.base.clone();
        base.extend_from_slice(extra);
        delta_closure(&base)
    }

    pub fn len(&self) -> usize {
        self.closure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.is_empty()
    }

    /// Whether `id` is a member of the closure up to renaming and orientation.
    pub fn contains(&self, id: &Identity) -> bool {
        self.keys.contains(&id.unoriented_key())
    }

    /// Whether every member is balanced, so that rewriting preserves the
    /// multiset of letters.
    pub fn is_balanced(&self) -> bool {
        self.closure.iter().all(|r| is_balanced(&r.identity))
    }

    pub(crate) fn compiled(&self) -> &[CompiledRule] {
        &self.compiled
    }

    /// All single rewrites of `w` with the step producing each, in order of
    /// rule, direction, position and match.
    pub fn rewrites(&self, w: &Word) -> Vec<(Step, Word)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for rule in &self.compiled {
            for direction in [Direction::Forward, Direction::Backward] {
                let (from, to) = rule.sides(direction);
                if from.is_empty() {
                    continue;
                }
                for start in 0..letters.len() {
                    for (end, binding) in matches_at(from, rule.vars.len(), letters, start, None) {
                        let Some(image) = rule.image(to, letters, &binding) else { continue };
                        let mut next = letters[..start].to_vec();
                        next.extend(image);
                        next.extend_from_slice(&letters[end..]);
                        out.push((rule.step(direction, start, letters, &binding), Word::from(next)));
                    }
                }
            }
        }
        out
    }

    /// The distinct words one rewrite away from `w`.
    pub fn neighbors(&self, w: &Word) -> Vec<Word> {
        let mut seen = HashSet::new();
        self.rewrites(w).into_iter().map(|(_, n)| n).filter(|n| n != w && seen.insert(n.clone())).collect()
    }
}

/// `rewrite_neighbors(w, R)`: every word obtainable by one rule application.
pub fn rewrite_neighbors(w: &Word, system: &RewriteSystem) -> Vec<Word> {
    system.neighbors(w)
}
