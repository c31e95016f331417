use std::collections::BTreeMap;

use super::system::restrict_rule;
use super::trace::{Direction, Step};
use crate::identity::NamedIdentity;
use crate::word::{Var, Word};

/// A step applying `rule` under `theta`, where variables sent to the empty
/// word are first deleted from the rule. The result therefore uses a member
/// of the closure of `rule` under deletion, with nonempty images only.
pub fn instance_step(rule: &NamedIdentity, direction: Direction, position: usize, theta: &[(Var, Word)]) -> Step {
    let deleted: Vec<Var> = theta.iter().filter(|(_, w)| w.is_empty()).map(|(v, _)| *v).collect();
    let member = restrict_rule(rule, &deleted);
    let substitution: BTreeMap<Var, Word> =
        theta.iter().filter(|(_, w)| !w.is_empty()).map(|(v, w)| (*v, w.clone())).collect();
    Step { rule: member.name, identity: member.identity, direction, position, substitution }
}

pub(crate) fn var(name: &str) -> Var {
    Var::new(name)
}

pub(crate) fn single(x: Var) -> Word {
    Word::from(vec![x])
}

/// Position of the next occurrence of `u[p]` after `from`, if any.
pub(crate) fn next_occurrence(u: &Word, p: usize, from: usize) -> Option<usize> {
    let x = u.letters()[p];
    (from..u.len()).find(|&i| u.letters()[i] == x)
}

/// Position of the previous occurrence of `u[p]` before `before`, if any.
pub(crate) fn prev_occurrence(u: &Word, p: usize, before: usize) -> Option<usize> {
    let x = u.letters()[p];
    (0..before).rev().find(|&i| u.letters()[i] == x)
}
