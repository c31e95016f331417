use crate::identity::{
    blbal1_condition, find_critical_pair, is_block_balanced, is_p12, named, unstable_pairs, Identity,
    NamedIdentity, SigmaSet, UnstablePair,
};
use crate::word::{blocks, OccRef, Segment, Var, VarSet, Word};

use super::driver::{measure_decreasing_derive, typed_derive, StepResult, TypeAssignment};
use super::steps::{instance_step, next_occurrence, prev_occurrence, single, var};
use super::system::delta_closure;
use super::trace::{Direction, Step, Trace};
use super::DerivationError;

/// A step swapping the adjacent letters at `p` and `p + 1` of `u` with a
/// member of `sigma` (tried in the order σ1, σμ, σ2), if one applies.
pub fn swap_step(u: &Word, p: usize, sigma: SigmaSet) -> Option<Step> {
    let letters = u.letters();
    if p + 1 >= letters.len() || letters[p] == letters[p + 1] {
        return None;
    }
    let (a, b) = (letters[p], letters[p + 1]);
    let (x, y, t1, t2) = (var("x"), var("y"), var("t1"), var("t2"));
    let a_next = next_occurrence(u, p, p + 2);
    let b_next = next_occurrence(u, p + 1, p + 2);
    let a_prev = prev_occurrence(u, p, p);
    let b_prev = prev_occurrence(u, p + 1, p);
    let gap = |s: usize, e: usize| u.factor(s, e);

    if sigma.sigma_1 {
        if let (Some(i), Some(j)) = (a_next, b_next) {
            // x y t1 x t2 y → y x t1 x t2 y, reading x as the letter whose
            // next occurrence comes first.
            let (first, second, direction) = if i < j { (a, b, Direction::Forward) } else { (b, a, Direction::Backward) };
            let (k, l) = (i.min(j), i.max(j));
            let theta = [(x, single(first)), (y, single(second)), (t1, gap(p + 2, k)), (t2, gap(k + 1, l))];
            return Some(instance_step(&named::sigma_1(), direction, p, &theta));
        }
    }
    if sigma.sigma_mu {
        // x t1 x y t2 y → x t1 y x t2 y with x = a, y = b.
        if let (Some(i), Some(j)) = (a_prev, b_next) {
            let theta = [(x, single(a)), (y, single(b)), (t1, gap(i + 1, p)), (t2, gap(p + 2, j))];
            return Some(instance_step(&named::sigma_mu(), Direction::Forward, i, &theta));
        }
        // The reverse rewrite with x = b, y = a.
        if let (Some(i), Some(j)) = (b_prev, a_next) {
            let theta = [(x, single(b)), (y, single(a)), (t1, gap(i + 1, p)), (t2, gap(p + 2, j))];
            return Some(instance_step(&named::sigma_mu(), Direction::Backward, i, &theta));
        }
    }
    if sigma.sigma_2 {
        if let (Some(i), Some(j)) = (a_prev, b_prev) {
            // x t1 y t2 x y → x t1 y t2 y x, reading x as the letter whose
            // previous occurrence comes first.
            let (first, second, direction) = if i < j { (a, b, Direction::Forward) } else { (b, a, Direction::Backward) };
            let (k, l) = (i.min(j), i.max(j));
            let theta = [(x, single(first)), (y, single(second)), (t1, gap(k + 1, l)), (t2, gap(l + 1, p))];
            return Some(instance_step(&named::sigma_2(), direction, k, &theta));
        }
    }
    None
}

fn swap_trace(u: &Word, p: usize, sigma: SigmaSet) -> Result<Trace, DerivationError> {
    let step = swap_step(u, p, sigma).ok_or_else(|| {
        DerivationError::Stalled(format!("no member of {sigma} swaps positions {p} and {} of `{u}`", p + 1))
    })?;
    Trace::from_steps(u.clone(), vec![step])
}

fn ch_size(id: &Identity) -> usize {
    unstable_pairs(id).map(|p| p.len()).unwrap_or(usize::MAX)
}

/// Derives an identity satisfying the `sigma` pair condition from the
/// closure of `sigma`, swapping one critical pair per round.
pub fn derive_blbal(id: &Identity, sigma: SigmaSet) -> Result<Trace, DerivationError> {
    if !is_block_balanced(id) {
        return Err(DerivationError::NotBlockBalanced(id.to_string()));
    }
    if !blbal1_condition(id, sigma) {
        return Err(DerivationError::PropertyViolated(format!("`{id}` has an unstable {sigma}-bad pair")));
    }
    let system = delta_closure(&sigma.identities());
    let derivation = measure_decreasing_derive(id, &system, ch_size, |current| {
        let pair = find_critical_pair(current)
            .map_err(|e| DerivationError::PropertyViolated(e.to_string()))?
            .expect("nonzero measure means a nontrivial identity");
        Ok(StepResult::left(swap_trace(&current.lhs, pair.left_pos, sigma)?, &current.rhs))
    })?;
    derivation.into_trace()
}

/// A derivation of a block-balanced identity from `{σ1, σμ, σ2}^δ`.
pub fn derive_block_balanced(id: &Identity) -> Result<Trace, DerivationError> {
    derive_blbal(id, SigmaSet::FULL)
}

/// A derivation of a block-balanced identity with the first/last order
/// property from `{σ1, σ2}^δ`.
pub fn derive_p12_block_balanced(id: &Identity) -> Result<Trace, DerivationError> {
    if !is_block_balanced(id) {
        return Err(DerivationError::NotBlockBalanced(id.to_string()));
    }
    if !is_p12(id) {
        return Err(DerivationError::PropertyViolated(format!("`{id}` changes the order of a first and a last occurrence")));
    }
    derive_blbal(id, SigmaSet::new(true, false, true))
}

/// Type 2 for a pair of last occurrences, Type 1 for every other pair of
/// occurrences of distinct variables.
pub struct LastPairTypes;

impl TypeAssignment for LastPairTypes {
    fn types(&self) -> usize {
        2
    }

    fn type_of(&self, u: &Word, c: OccRef, d: OccRef) -> Option<usize> {
        if c.var == d.var {
            return None;
        }
        let is_last = |o: OccRef| u.occ(o.var) == o.index;
        Some(if is_last(c) && is_last(d) { 2 } else { 1 })
    }
}

/// Moves the non-last occurrences of `x` and `y` right, within each block,
/// until `u` is `xy`-compact. Each move is a swap by `{σ1, σμ}^δ`.
fn make_xy_compact(u: &Word, x: Var, y: Var) -> Result<Trace, DerivationError> {
    let pair = SigmaSet::new(true, true, false);
    let mut trace = Trace::empty(u.clone());
    let is_xy = |v: Var| v == x || v == y;
    loop {
        let w = trace.end.clone();
        let mut block_ranges = Vec::new();
        for s in &blocks(&w).segments {
            if let Segment::Block { start, letters } = s {
                block_ranges.push(*start..start + letters.len());
            }
        }
        // Within a block, find an x/y letter followed by other letters and
        // then another x/y letter; move it one place right.
        let target = block_ranges.iter().find_map(|r| {
            let xy: Vec<usize> = r.clone().filter(|&p| is_xy(w.letters()[p])).collect();
            xy.windows(2).rev().find(|pair| pair[1] > pair[0] + 1).map(|pair| pair[0])
        });
        let Some(p) = target else { return Ok(trace) };
        trace = trace.then(swap_trace(&w, p, pair)?);
    }
}

/// Derives a block-balanced identity of a monoid satisfying `{σ1, σμ}` from
/// `{σ1, σμ}^δ` and block-balanced identities with two non-linear
/// variables. Pairs of last occurrences are handled by compacting and then
/// applying the projection of the identity onto the two variables; these
/// projections are reported as extra rules.
pub fn derive_from_two_variable(id: &Identity) -> Result<(Trace, Vec<NamedIdentity>), DerivationError> {
    if !is_block_balanced(id) {
        return Err(DerivationError::NotBlockBalanced(id.to_string()));
    }
    let sigma = SigmaSet::new(true, true, false);
    let system = delta_closure(&sigma.identities());
    let v = id.rhs.clone();
    let derivation = typed_derive(id, &system, &LastPairTypes, is_block_balanced, |current, pair: &UnstablePair, t| {
        let u = &current.lhs;
        if t == 1 {
            return Ok(StepResult::left(swap_trace(u, pair.left_pos, sigma)?, &v));
        }
        let (x, y) = (pair.left.var, pair.right.var);
        let compact = make_xy_compact(u, x, y)?;
        let keep: VarSet = [x, y].into_iter().chain(u.lin()).collect();
        let projection = NamedIdentity::new(
            format!("proj({x},{y})"),
            Identity::new(compact.end.restrict_to(&keep), v.restrict_to(&keep)),
        );
        let finish = projection_step(&compact.end, &projection, x, y)?;
        Ok(StepResult { lhs: compact.then(finish), rhs: Trace::empty(v.clone()), extra_rules: vec![projection] })
    })?;
    let extra = derivation.extra_rules.clone();
    Ok((derivation.into_trace()?, extra))
}

/// Applies `projection` (whose sides keep `x`, `y` and the linear letters
/// of the `xy`-compact word `u`) to `u`. The letters between a linear letter
/// and a neighbouring run of `x` and `y` join the image of the linear
/// letter, so only the runs themselves are rearranged.
fn projection_step(u: &Word, projection: &NamedIdentity, x: Var, y: Var) -> Result<Trace, DerivationError> {
    let letters = u.letters();
    let lin = u.lin();
    let kept: Vec<usize> =
        (0..letters.len()).filter(|&p| letters[p] == x || letters[p] == y || lin.contains(&letters[p])).collect();
    let mut images: Vec<(usize, usize)> = kept.iter().map(|&p| (p, p + 1)).collect();
    for k in 0..kept.len().saturating_sub(1) {
        let (p, q) = (kept[k], kept[k + 1]);
        if q == p + 1 {
            continue;
        }
        // Two x/y letters never have a gap between them in a compact word.
        if lin.contains(&letters[p]) {
            images[k].1 = q;
        } else {
            images[k + 1].0 = p + 1;
        }
    }
    let mut theta: Vec<(Var, Word)> = vec![(x, single(x)), (y, single(y))];
    for (k, &p) in kept.iter().enumerate() {
        if lin.contains(&letters[p]) {
            theta.push((letters[p], u.factor(images[k].0, images[k].1)));
        }
    }
    let step = instance_step(projection, Direction::Forward, kept[0], &theta);
    Trace::from_steps(u.clone(), vec![step])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::id;
    use crate::word::w;

    #[test]
    fn swaps_use_the_expected_rule() {
        let s = swap_step(&w("x y t x s y"), 0, SigmaSet::FULL).unwrap();
        assert_eq!(s.rule, "σ1");
        assert_eq!(s.apply(&w("x y t x s y")).unwrap(), w("y x t x s y"));
        let s = swap_step(&w("x x y y"), 1, SigmaSet::new(false, true, false)).unwrap();
        assert_eq!(s.rule, "σμ[-t1,t2]");
        assert_eq!(s.apply(&w("xxyy")).unwrap(), w("xyxy"));
        assert!(swap_step(&w("x t x y s y"), 2, SigmaSet::new(true, false, true)).is_none());
        let u = w("y x t x y");
        let s = swap_step(&u, 0, SigmaSet::new(true, false, false)).unwrap();
        assert_eq!(s.apply(&u).unwrap(), w("x y t x y"));
    }

    #[test]
    fn block_balanced_examples() {
        assert_eq!(derive_block_balanced(&id("x x y y == x y x y")).unwrap().len(), 1);
        let t = derive_block_balanced(&id("x x y y == y x y x")).unwrap();
        assert!(t.len() <= 3 && t.is_valid());
        assert!(derive_block_balanced(&id("x y x == x y x")).unwrap().is_empty());
        assert!(matches!(derive_block_balanced(&id("x y == y x")), Err(DerivationError::NotBlockBalanced(_))));
    }

    #[test]
    fn p12_examples() {
        assert_eq!(derive_p12_block_balanced(&named::sigma_1().identity).unwrap().len(), 1);
        assert_eq!(derive_p12_block_balanced(&id("x y x y == y x x y")).unwrap().len(), 1);
        assert!(matches!(
            derive_p12_block_balanced(&named::sigma_mu().identity),
            Err(DerivationError::PropertyViolated(_))
        ));
    }

    #[test]
    fn two_variable_reduction() {
        let i = id("x y z t x y z == y z x t z y x");
        let (trace, extra) = derive_from_two_variable(&i).unwrap();
        assert!(trace.is_valid());
        assert_eq!(trace.identity(), i);
        assert!(!extra.is_empty());
        for rule in &extra {
            assert!(is_block_balanced(&rule.identity));
            assert!(rule.identity.lhs.non().len() <= 2);
        }
    }
}
