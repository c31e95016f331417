//! Matching identity sides against factors of a word, with every pattern
//! variable bound to a nonempty factor.

use crate::word::Var;

/// Per pattern variable, the `(start, len)` of its image in the subject.
pub(crate) type Binding = Vec<Option<(usize, usize)>>;

/// All matches of `pattern` (over variables `0..nvars`) starting at `start`
/// in `w`, as `(end, binding)`, shortest images first. With `end` given, only
/// matches covering exactly `w[start..end]` are returned.
pub(crate) fn matches_at(
    pattern: &[usize],
    nvars: usize,
    w: &[Var],
    start: usize,
    end: Option<usize>,
) -> Vec<(usize, Binding)> {
    let mut out = Vec::new();
    let mut binding = vec![None; nvars];
    let limit = end.unwrap_or(w.len());
    if start + pattern.len() <= limit {
        extend(pattern, 0, w, start, limit, end.is_some(), &mut binding, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    pattern: &[usize],
    pi: usize,
    w: &[Var],
    wi: usize,
    limit: usize,
    exact: bool,
    binding: &mut Binding,
    out: &mut Vec<(usize, Binding)>,
) {
    if pi == pattern.len() {
        if !exact || wi == limit {
            out.push((wi, binding.clone()));
        }
        return;
    }
    let v = pattern[pi];
    // Every later pattern position needs at least one letter.
    let rest = pattern.len() - pi - 1;
    match binding[v] {
        Some((s, l)) => {
            if wi + l + rest <= limit && w[s..s + l] == w[wi..wi + l] {
                extend(pattern, pi + 1, w, wi + l, limit, exact, binding, out);
            }
        }
        None => {
            let max = limit.saturating_sub(wi + rest);
            for l in 1..=max {
                binding[v] = Some((wi, l));
                extend(pattern, pi + 1, w, wi + l, limit, exact, binding, out);
            }
            binding[v] = None;
        }
    }
}
