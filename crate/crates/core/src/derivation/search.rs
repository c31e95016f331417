use std::collections::HashMap;

use super::matcher::matches_at;
use super::trace::{Direction, Step, Trace};
use super::{DerivationError, RewriteSystem};
use crate::identity::{is_balanced, Identity};
use crate::word::Word;

type Visited = HashMap<Word, Option<(Word, Step)>>;

/// Bounded bidirectional breadth-first search for a derivation of `id`.
///
/// Words longer than `max_len` are never visited and each side explores at
/// most `max_depth` rewrites from its endpoint, so traces of up to
/// `2 · max_depth` steps can be found. `None` only means that no derivation
/// exists within these bounds.
pub fn derivable(id: &Identity, system: &RewriteSystem, max_len: usize, max_depth: usize) -> Option<Trace> {
    if id.is_trivial() {
        return Some(Trace::empty(id.lhs.clone()));
    }
    if id.lhs.len() > max_len || id.rhs.len() > max_len {
        return None;
    }
    // Balanced rules preserve the letter multiset, so nothing else is
    // reachable.
    if system.is_balanced() && !is_balanced(id) {
        return None;
    }
    let mut seen: [Visited; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier: [Vec<Word>; 2] = [vec![id.lhs.clone()], vec![id.rhs.clone()]];
    let mut depth = [0usize; 2];
    seen[0].insert(id.lhs.clone(), None);
    seen[1].insert(id.rhs.clone(), None);
    loop {
        let open: Vec<usize> = (0..2).filter(|&s| depth[s] < max_depth && !frontier[s].is_empty()).collect();
        let &side = open.iter().min_by_key(|&&s| (frontier[s].len(), s))?;
        let mut next = Vec::new();
        for w in std::mem::take(&mut frontier[side]) {
            for (step, n) in system.rewrites(&w) {
                if n.len() > max_len || seen[side].contains_key(&n) {
                    continue;
                }
                seen[side].insert(n.clone(), Some((w.clone(), step)));
                if seen[1 - side].contains_key(&n) {
                    return Some(join(&seen, n, id));
                }
                next.push(n);
            }
        }
        frontier[side] = next;
        depth[side] += 1;
    }
}

/// Steps from the root of one search tree to `w`.
fn path_to(seen: &Visited, w: &Word) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut cur = w.clone();
    while let Some(Some((parent, step))) = seen.get(&cur) {
        steps.push(step.clone());
        cur = parent.clone();
    }
    steps.reverse();
    steps
}

fn join(seen: &[Visited; 2], meet: Word, id: &Identity) -> Trace {
    let forward = Trace { start: id.lhs.clone(), steps: path_to(&seen[0], &meet), end: meet.clone() };
    let backward = Trace { start: id.rhs.clone(), steps: path_to(&seen[1], &meet), end: meet };
    forward.then(backward.inverted())
}

/// A single rule application turning `w` into `target`, trying the
/// smallest window around the region where they differ first.
pub fn find_step(w: &Word, target: &Word, system: &RewriteSystem) -> Option<Step> {
    if w == target {
        return None;
    }
    let (a, b) = (w.letters(), target.letters());
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let max_suffix = a.len().min(b.len()) - prefix;
    let suffix = a.iter().rev().zip(b.iter().rev()).take(max_suffix).take_while(|(x, y)| x == y).count();
    let shift = b.len() as isize - a.len() as isize;
    let mut best: Option<(usize, Step)> = None;
    for start in (0..=prefix).rev() {
        for end in a.len() - suffix..=a.len() {
            if end <= start {
                continue;
            }
            let width = end - start;
            if best.as_ref().is_some_and(|(bw, _)| *bw <= width) {
                continue;
            }
            let target_end = end as isize + shift;
            if target_end < start as isize || target_end as usize > b.len() {
                continue;
            }
            let replacement = &b[start..target_end as usize];
            'rules: for rule in system.compiled() {
                for direction in [Direction::Forward, Direction::Backward] {
                    let (from, to) = rule.sides(direction);
                    if from.is_empty() || from.len() > width {
                        continue;
                    }
                    for (_, binding) in matches_at(from, rule.vars.len(), a, start, Some(end)) {
                        if rule.image(to, a, &binding).as_deref() == Some(replacement) {
                            best = Some((width, rule.step(direction, start, a, &binding)));
                            break 'rules;
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, s)| s)
}

/// Certifies a sequence of words as a derivation over `system`, one rule
/// application per transition.
pub fn certify(words: &[Word], system: &RewriteSystem) -> Result<Trace, DerivationError> {
    let mut steps = Vec::new();
    for pair in words.windows(2) {
        if pair[0] == pair[1] {
            continue;
        }
        let step = find_step(&pair[0], &pair[1], system).ok_or_else(|| {
            DerivationError::Stalled(format!("no single rule turns `{}` into `{}`", pair[0], pair[1]))
        })?;
        steps.push(step);
    }
    Trace::from_steps(words[0].clone(), steps)
}
