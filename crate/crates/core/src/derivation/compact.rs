use crate::identity::{named, SigmaSet};
use crate::word::Word;

use super::blbal::swap_step;
use super::steps::{instance_step, next_occurrence, single, var};
use super::trace::{Direction, Trace};
use super::DerivationError;

/// The positions of both occurrences of each variable occurring twice with
/// no linear letter in between, as `(first, second)`.
fn l_variables(u: &Word) -> Vec<(usize, usize)> {
    let counts = u.counts();
    let letters = u.letters();
    let mut out = Vec::new();
    for (x, &k) in &counts {
        if k != 2 {
            continue;
        }
        let i = u.first_position(*x).expect("occurs");
        let j = u.last_position(*x).expect("occurs");
        if (i + 1..j).all(|p| counts[&letters[p]] > 1) {
            out.push((i, j));
        }
    }
    out
}

/// A compact word equivalent to the 2-limited word `w`, with a trace over
/// `{σμ, yxxty ≈ xxyty}^δ`.
///
/// Variables with no linear letter between their occurrences are handled
/// innermost first. Inside the region of such a variable `x`, second
/// occurrences are pushed out to the left of the first `x` by `σμ` swaps and
/// adjacent squares are shifted out by `yxxty ≈ xxyty`; then only first
/// occurrences remain and the second `x` moves left next to the first.
pub fn compact_normal_form(w: &Word) -> Result<(Word, Trace), DerivationError> {
    if !w.is_n_limited(2) {
        return Err(DerivationError::NotTwoLimited(w.to_string()));
    }
    let mu = SigmaSet::new(false, true, false);
    let mut trace = Trace::empty(w.clone());
    loop {
        let u = trace.end.clone();
        let Some((mut i, mut j)) = l_variables(&u).into_iter().filter(|(i, j)| j > &(i + 1)).min_by_key(|(i, j)| (j - i, *i))
        else {
            break;
        };
        let mut u = u;
        let mut steps = Vec::new();
        loop {
            let letters = u.letters().to_vec();
            let target = (i + 1..j).find_map(|q| {
                let z = letters[q];
                let prev = (0..q).rev().find(|&p| letters[p] == z);
                match prev {
                    Some(_) => Some((q, false)),
                    None if letters.get(q + 1) == Some(&z) => Some((q, true)),
                    None => None,
                }
            });
            match target {
                Some((q, false)) => {
                    // A second occurrence after only first occurrences: swap it
                    // left until it passes the first x.
                    for p in (i..q).rev() {
                        let step = swap_step(&u, p, mu).ok_or_else(|| stalled(&u, p))?;
                        u = step.apply(&u)?;
                        steps.push(step);
                    }
                    i += 1;
                }
                Some((q, true)) => {
                    // An adjacent square: shift it left one letter at a time.
                    let z = letters[q];
                    for p in (i..q).rev() {
                        let y = u.letters()[p];
                        let next = next_occurrence(&u, p, p + 3).ok_or_else(|| stalled(&u, p))?;
                        let theta = [(var("y"), single(y)), (var("x"), single(z)), (var("t"), u.factor(p + 3, next))];
                        let step = instance_step(&named::square_shift(), Direction::Forward, p, &theta);
                        u = step.apply(&u)?;
                        steps.push(step);
                    }
                    i += 2;
                }
                None => break,
            }
        }
        // Only first occurrences are left between the two x's.
        while j > i + 1 {
            let step = swap_step(&u, j - 1, mu).ok_or_else(|| stalled(&u, j - 1))?;
            u = step.apply(&u)?;
            steps.push(step);
            j -= 1;
        }
        let start = trace.end.clone();
        trace = trace.then(Trace::from_steps(start, steps)?);
    }
    Ok((trace.end.clone(), trace))
}

fn stalled(u: &Word, p: usize) -> DerivationError {
    DerivationError::Stalled(format!("cannot move the letter at {} of `{u}`", p + 1))
}
