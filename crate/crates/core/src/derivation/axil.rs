use serde::{Deserialize, Serialize};

use crate::identity::named;
use crate::word::{Var, Word};

use super::steps::{instance_step, single, var};
use super::trace::{Direction, Step, Trace};
use super::DerivationError;

/// Whether an axil transformation adds or removes the occurrence of `x`
/// in front of `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxilDirection {
    Insert,
    Erase,
}

fn prev_of(u: &Word, x: Var, before: usize) -> Option<usize> {
    (0..before).rev().find(|&i| u.letters()[i] == x)
}

fn next_of(u: &Word, x: Var, from: usize) -> Option<usize> {
    (from..u.len()).find(|&i| u.letters()[i] == x)
}

fn missing(what: &str, u: &Word, p: usize) -> DerivationError {
    DerivationError::Stalled(format!("no {what} around position {} of `{u}`", p + 1))
}

/// `x t1 x t2 x → x t1 x x t2 x`, doubling the `x` at `m`.
pub(crate) fn dup_at(u: &Word, m: usize) -> Result<Step, DerivationError> {
    let x = u.letters()[m];
    let p = prev_of(u, x, m).ok_or_else(|| missing("earlier x", u, m))?;
    let n = next_of(u, x, m + 1).ok_or_else(|| missing("later x", u, m))?;
    let theta = [(var("x"), single(x)), (var("t1"), u.factor(p + 1, m)), (var("t2"), u.factor(m + 1, n))];
    Ok(instance_step(&named::duplication(), Direction::Forward, p, &theta))
}

/// `x t1 x x t2 x → x t1 x t2 x`, merging the square at `m, m + 1`.
pub(crate) fn undup_at(u: &Word, m: usize) -> Result<Step, DerivationError> {
    let x = u.letters()[m];
    let p = prev_of(u, x, m).ok_or_else(|| missing("earlier x", u, m))?;
    let n = next_of(u, x, m + 2).ok_or_else(|| missing("later x", u, m))?;
    let theta = [(var("x"), single(x)), (var("t1"), u.factor(p + 1, m)), (var("t2"), u.factor(m + 2, n))];
    Ok(instance_step(&named::duplication(), Direction::Backward, p, &theta))
}

/// `x t1 y x x t2 y → x t1 x y x x t2 y` for the `y` at `py`, which must be
/// followed by a square of `x`.
pub(crate) fn ins_at(u: &Word, py: usize) -> Result<Step, DerivationError> {
    let (y, x) = (u.letters()[py], u.letters()[py + 1]);
    let p = prev_of(u, x, py).ok_or_else(|| missing("earlier x", u, py))?;
    let n = next_of(u, y, py + 3).ok_or_else(|| missing("later y", u, py))?;
    let theta = [
        (var("x"), single(x)),
        (var("y"), single(y)),
        (var("t1"), u.factor(p + 1, py)),
        (var("t2"), u.factor(py + 3, n)),
    ];
    Ok(instance_step(&named::insertion(), Direction::Forward, p, &theta))
}

/// The inverse of [`ins_at`]: removes the `x` at `r`, which must be followed
/// by `y x x`.
pub(crate) fn unins_at(u: &Word, r: usize) -> Result<Step, DerivationError> {
    let (x, y) = (u.letters()[r], u.letters()[r + 1]);
    let p = prev_of(u, x, r).ok_or_else(|| missing("earlier x", u, r))?;
    let n = next_of(u, y, r + 4).ok_or_else(|| missing("later y", u, r))?;
    let theta = [
        (var("x"), single(x)),
        (var("y"), single(y)),
        (var("t1"), u.factor(p + 1, r)),
        (var("t2"), u.factor(r + 4, n)),
    ];
    Ok(instance_step(&named::insertion(), Direction::Backward, p, &theta))
}

/// Appends the step that `step_for` builds for the current end word.
pub(crate) fn push(trace: &mut Trace, step_for: impl FnOnce(&Word) -> Result<Step, DerivationError>) -> Result<(), DerivationError> {
    let step = step_for(&trace.end)?;
    let next = step.apply(&trace.end)?;
    trace.steps.push(step);
    trace.end = next;
    Ok(())
}

/// A trace between `A B x C` and `A x B x C` over `{dup, ins}^δ`, where `dup`
/// is `x t1 x t2 x ≈ x t1 x x t2 x` and `ins` is
/// `x t1 y x x t2 y ≈ x t1 x y x x t2 y`.
///
/// The inserted `x` is first doubled, then copies of `x x` are walked to
/// the left through `B` one letter at a time, and finally the surplus
/// copies in front of all but the first letter of `B` are removed.
pub fn axil_transform(a: &Word, b: &Word, c: &Word, x: Var, direction: AxilDirection) -> Result<Trace, DerivationError> {
    if a.occ(x) == 0 {
        return Err(DerivationError::PreconditionViolated(format!("{x} does not occur in A = `{a}`")));
    }
    if c.occ(x) == 0 {
        return Err(DerivationError::PreconditionViolated(format!("{x} does not occur in C = `{c}`")));
    }
    if let Some(z) = b.content().into_iter().find(|z| c.occ(*z) == 0) {
        return Err(DerivationError::PreconditionViolated(format!("{z} occurs in B = `{b}` but not in C = `{c}`")));
    }
    let start = a.concat(b).concat(&single(x)).concat(c);
    let mut t = Trace::empty(start);
    let (base, p) = (a.len(), b.len());
    // A B x x C
    push(&mut t, |w| dup_at(w, base + p))?;
    // A x b1 x x b2 x x … bp x x C
    for i in (0..p).rev() {
        let py = base + i;
        push(&mut t, |w| ins_at(w, py))?;
        if i > 0 {
            push(&mut t, |w| dup_at(w, py))?;
        }
    }
    // A x b1 b2 … bp x x C: drop the pairs in front of b2, …, bp in turn.
    for i in 1..p {
        push(&mut t, |w| unins_at(w, base + 2 + i))?;
        push(&mut t, |w| unins_at(w, base + 1 + i))?;
    }
    if p > 0 {
        push(&mut t, |w| undup_at(w, base + 1 + p))?;
    }
    Ok(match direction {
        AxilDirection::Insert => t,
        AxilDirection::Erase => t.inverted(),
    })
}

/// The mirror image: a trace between `A x B C` and `A x B x C` over
/// `{dup, ins*}^δ`, where `x` occurs in `A` and `C` and `con(B) ⊆ con(A)`.
pub fn dual_axil_transform(a: &Word, b: &Word, c: &Word, x: Var, direction: AxilDirection) -> Result<Trace, DerivationError> {
    axil_transform(&c.reversed(), &b.reversed(), &a.reversed(), x, direction).map(|t| t.mirrored())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{delta_closure, derivable, RewriteSystem};
    use crate::identity::Identity;
    use crate::word::w;

    fn system() -> RewriteSystem {
        delta_closure(&[named::duplication(), named::insertion()])
    }

    fn dual_system() -> RewriteSystem {
        delta_closure(&[named::duplication(), named::insertion_dual()])
    }

    #[test]
    fn empty_middle_is_one_duplication() {
        let t = axil_transform(&w("x y"), &Word::empty(), &w("y x"), Var::new("x"), AxilDirection::Insert).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.end, w("x y x x y x"));
        assert!(t.steps[0].rule.starts_with("dup"));
    }

    #[test]
    fn single_letter_middle() {
        let x = Var::new("x");
        let t = axil_transform(&w("x"), &w("y"), &w("x y"), x, AxilDirection::Insert).unwrap();
        assert_eq!((t.start.clone(), t.end.clone()), (w("x y x x y"), w("x x y x x y")));
        assert_eq!(t.len(), 3);
        t.uses_only(&system()).unwrap();
        assert!(derivable(&t.identity(), &system(), 8, 4).is_some());
        let back = axil_transform(&w("x"), &w("y"), &w("x y"), x, AxilDirection::Erase).unwrap();
        assert_eq!(back.end, w("x y x x y"));
    }

    #[test]
    fn longer_middles_take_four_steps_per_letter() {
        let x = Var::new("x");
        let (a, b, c) = (w("z x"), w("y z y x"), w("x z y"));
        let t = axil_transform(&a, &b, &c, x, AxilDirection::Insert).unwrap();
        assert_eq!(t.len(), 4 * b.len() - 1);
        assert_eq!(t.end, w("z x x y z y x x x z y"));
        t.uses_only(&system()).unwrap();
    }

    #[test]
    fn dual_uses_mirrored_insertion() {
        let x = Var::new("x");
        let t = dual_axil_transform(&w("x y"), &w("y"), &w("x"), x, AxilDirection::Insert).unwrap();
        assert_eq!((t.start.clone(), t.end.clone()), (w("x y x y x"), w("x y x y x x")));
        t.uses_only(&dual_system()).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.identity(), Identity::new(w("x y x y x"), w("x y x y x x")));
    }

    #[test]
    fn preconditions_name_the_failing_clause() {
        let x = Var::new("x");
        let e = axil_transform(&w("x"), &w("y"), &w("y"), x, AxilDirection::Insert).unwrap_err();
        assert!(matches!(e, DerivationError::PreconditionViolated(ref m) if m.contains("C")));
        let e = axil_transform(&w("y"), &w("y"), &w("x y"), x, AxilDirection::Insert).unwrap_err();
        assert!(matches!(e, DerivationError::PreconditionViolated(ref m) if m.contains("A")));
        let e = axil_transform(&w("x"), &w("z"), &w("x"), x, AxilDirection::Insert).unwrap_err();
        assert!(matches!(e, DerivationError::PreconditionViolated(ref m) if m.contains("B")));
    }
}
