//! Bounded checkers for the hypotheses of several sufficient conditions for
//! finite basability. Isoterm and b-unstable probes only explore bounded
//! words, so each clause gets a three-valued verdict.

use serde::{Deserialize, Serialize};

use crate::identity::{named, Identity};
use crate::monoid::{is_b_unstable, is_isoterm_bounded, satisfies, FiniteMonoid, IsotermVerdict};
use crate::word::{simon_equiv, Var, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Met,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// Met only if all are met; refuted if any is refuted.
    fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Met;
        for v in verdicts {
            match v {
                Verdict::Refuted => return Verdict::Refuted,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Met => {}
            }
        }
        out
    }

    /// Met if any is met; refuted only if all are refuted.
    fn any(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Refuted;
        for v in verdicts {
            match v {
                Verdict::Met => return Verdict::Met,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Refuted => {}
            }
        }
        out
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Met => "met",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub clause: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl ClauseReport {
    fn new(clause: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> ClauseReport {
        ClauseReport { clause: clause.into(), verdict, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem: String,
    pub clauses: Vec<ClauseReport>,
    pub overall: Verdict,
}

fn var(name: &str) -> Var {
    Var::new(name)
}

fn pw(x: &str, k: usize) -> Word {
    Word::from(vec![var(x); k])
}

fn cat(parts: &[Word]) -> Word {
    parts.iter().flat_map(|w| w.letters().iter().copied()).collect()
}

fn satisfied(m: &FiniteMonoid, clause: &str, id: &Identity) -> ClauseReport {
    if satisfies(m, id) {
        ClauseReport::new(clause, Verdict::Met, format!("{id} holds"))
    } else {
        ClauseReport::new(clause, Verdict::Refuted, format!("{id} fails"))
    }
}

/// Isoterm probe with candidate sides up to two letters longer than `u`.
fn isoterm(m: &FiniteMonoid, clause: &str, u: &Word) -> ClauseReport {
    match is_isoterm_bounded(m, u, u.len() + 2) {
        Ok(IsotermVerdict::IsotermUpTo { bound, .. }) => {
            ClauseReport::new(clause, Verdict::Met, format!("{u} is an isoterm (sides up to length {bound})"))
        }
        Ok(IsotermVerdict::NotIsoterm { witness, .. }) => {
            ClauseReport::new(clause, Verdict::Refuted, format!("{u} is not an isoterm: {witness}"))
        }
        Err(e) => ClauseReport::new(clause, Verdict::Inconclusive, e.to_string()),
    }
}

fn is_isoterm(m: &FiniteMonoid, u: &Word) -> Option<bool> {
    is_isoterm_bounded(m, u, u.len() + 2).ok().map(|v| v.is_isoterm())
}

fn sigma12(m: &FiniteMonoid) -> Vec<ClauseReport> {
    vec![
        satisfied(m, "satisfies σ1", &named::sigma_1().identity),
        satisfied(m, "satisfies σ2", &named::sigma_2().identity),
    ]
}

fn report(theorem: &str, clauses: Vec<ClauseReport>, overall: Verdict) -> HypothesisReport {
    HypothesisReport { theorem: theorem.into(), clauses, overall }
}

/// Almost-linear words over `x` and the linear letter `s` with at least one
/// `x` and at most `bound` of them: `xⁱ` and `xⁱ s xʲ`.
fn almost_linear_prefixes(x: &str, bound: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for total in 1..=bound {
        out.push(pw(x, total));
        for i in 0..=total {
            out.push(cat(&[pw(x, i), pw("s", 1), pw(x, total - i)]));
        }
    }
    out
}

/// Probes for the condition: whenever `{x, y}` is b-unstable in `A x yᵏ`,
/// some `0 < c < k` gives `A x yᶜ t yᵏ⁻ᶜ ≈ A y x yᶜ⁻¹ t yᵏ⁻ᶜ`.
fn left_b_condition(m: &FiniteMonoid, clause: &str, ks: impl Iterator<Item = usize> + Clone, bound: usize) -> ClauseReport {
    let (x, y) = (var("x"), var("y"));
    let mut probes = 0;
    for k in ks {
        for a in almost_linear_prefixes("x", bound) {
            let u = cat(&[a.clone(), pw("x", 1), pw("y", k)]);
            match is_b_unstable(m, &u, x, y) {
                Err(e) => return ClauseReport::new(clause, Verdict::Inconclusive, e.to_string()),
                Ok(v) if !v.unstable => continue,
                Ok(_) => {}
            }
            probes += 1;
            let found = (1..k).find(|&c| {
                let lhs = cat(&[a.clone(), pw("x", 1), pw("y", c), pw("t", 1), pw("y", k - c)]);
                let rhs = cat(&[a.clone(), pw("y", 1), pw("x", 1), pw("y", c - 1), pw("t", 1), pw("y", k - c)]);
                satisfies(m, &Identity::new(lhs, rhs))
            });
            if found.is_none() {
                return ClauseReport::new(clause, Verdict::Refuted, format!("{{x, y}} is b-unstable in {u} but no swap identity holds"));
            }
        }
    }
    ClauseReport::new(clause, Verdict::Met, format!("{probes} b-unstable prefixes, each with a swap identity"))
}

/// The mirror condition for `xᵏ y B`: some `0 < p < k` gives
/// `xᵏ⁻ᵖ t xᵖ y B ≈ xᵏ⁻ᵖ t xᵖ⁻¹ y x B`.
fn right_b_condition(m: &FiniteMonoid, clause: &str, ks: impl Iterator<Item = usize> + Clone, bound: usize) -> ClauseReport {
    let (x, y) = (var("x"), var("y"));
    let mut probes = 0;
    for k in ks {
        for b in almost_linear_prefixes("y", bound) {
            let b = b.reversed();
            let u = cat(&[pw("x", k), pw("y", 1), b.clone()]);
            match is_b_unstable(m, &u, x, y) {
                Err(e) => return ClauseReport::new(clause, Verdict::Inconclusive, e.to_string()),
                Ok(v) if !v.unstable => continue,
                Ok(_) => {}
            }
            probes += 1;
            let found = (1..k).find(|&p| {
                let lhs = cat(&[pw("x", k - p), pw("t", 1), pw("x", p), pw("y", 1), b.clone()]);
                let rhs = cat(&[pw("x", k - p), pw("t", 1), pw("x", p - 1), pw("y", 1), pw("x", 1), b.clone()]);
                satisfies(m, &Identity::new(lhs, rhs))
            });
            if found.is_none() {
                return ClauseReport::new(clause, Verdict::Refuted, format!("{{x, y}} is b-unstable in {u} but no swap identity holds"));
            }
        }
    }
    ClauseReport::new(clause, Verdict::Met, format!("{probes} b-unstable suffixes, each with a swap identity"))
}

/// Hypotheses of the criterion for subvarieties of `var{σ1, σ2}` containing
/// `A0^1`: non-periodic, or aperiodic of index `m` with some
/// `x^(m-d) t x^d ≈ x^c t x^p`, `0 < d < m`, `c + p > m`.
pub fn check_fbs3(m: &FiniteMonoid, search_bound: usize) -> HypothesisReport {
    let mut clauses = sigma12(m);
    // Containing A0^1 means every identity has the first/last order
    // property; probe with two-variable identities of length up to 4.
    let short: Vec<Word> = (1..=4usize)
        .flat_map(|n| {
            (0..1usize << n).map(move |bits| (0..n).map(|i| var(if bits >> i & 1 == 1 { "y" } else { "x" })).collect::<Word>())
        })
        .collect();
    let outside = short.iter().enumerate().find_map(|(i, u)| {
        short[i + 1..].iter().find(|v| !simon_equiv(u, v, 2) && satisfies(m, &Identity::new(u.clone(), (*v).clone()))).map(|v| Identity::new(u.clone(), v.clone()))
    });
    clauses.push(match outside {
        Some(id) => ClauseReport::new("variety contains A0^1", Verdict::Refuted, format!("{id} holds but fails in A0^1")),
        None => ClauseReport::new(
            "variety contains A0^1",
            Verdict::Inconclusive,
            "no identity failing in A0^1 among two-variable words up to length 4",
        ),
    });
    let index = (1..=search_bound).find(|&k| satisfies(m, &Identity::new(pw("x", k), pw("x", k + 1))));
    let main = match index {
        None => ClauseReport::new(
            "(i) non-periodic",
            Verdict::Inconclusive,
            format!("no x^k ≈ x^(k+1) with k ≤ {search_bound}; candidate for the non-periodic case"),
        ),
        Some(1) => ClauseReport::new("(ii) aperiodic", Verdict::Refuted, "x ≈ x² holds, so m = 1 leaves no d"),
        Some(k) => {
            let found = (1..k).find_map(|d| {
                (0..=k).flat_map(|c| (0..=k).map(move |p| (c, p))).filter(|(c, p)| c + p > k).find_map(|(c, p)| {
                    let id = Identity::new(cat(&[pw("x", k - d), pw("t", 1), pw("x", d)]), cat(&[pw("x", c), pw("t", 1), pw("x", p)]));
                    satisfies(m, &id).then_some((d, id))
                })
            });
            match found {
                Some((d, id)) => ClauseReport::new("(ii) aperiodic", Verdict::Met, format!("m = {k}, d = {d}: {id} holds")),
                None => ClauseReport::new("(ii) aperiodic", Verdict::Refuted, format!("m = {k}: no x^(m-d) t x^d ≈ x^c t x^p holds")),
            }
        }
    };
    clauses.push(main);
    // The bounded probe never confirms membership of A0^1, so only a
    // refutation from it affects the overall verdict.
    let probe = match clauses[2].verdict {
        Verdict::Refuted => Verdict::Refuted,
        _ => Verdict::Met,
    };
    let overall = Verdict::all([clauses[0].verdict, clauses[1].verdict, probe, clauses[3].verdict]);
    report("fbS3", clauses, overall)
}

/// Hypotheses of the criterion for monoids satisfying `{σ1, σ2}` with `xy`
/// an isoterm: conditions on `xᵐyⁿ` and on b-unstable pairs in `A x yᵏ`
/// and `xᵏ y B`, probed with exponents up to `k_bound`.
pub fn check_fbtlem1(m: &FiniteMonoid, k_bound: usize) -> HypothesisReport {
    let mut clauses = sigma12(m);
    clauses.push(isoterm(m, "xy is an isoterm", &cat(&[pw("x", 1), pw("y", 1)])));
    let mut first = ClauseReport::new("(i) powers", Verdict::Met, "every x^m y^n probed is an isoterm or has a split identity");
    'outer: for a in 2..=k_bound {
        for b in 2..=k_bound {
            let u = cat(&[pw("x", a), pw("y", b)]);
            match is_isoterm(m, &u) {
                None => {
                    first = ClauseReport::new("(i) powers", Verdict::Inconclusive, format!("isoterm probe of {u} failed"));
                    break 'outer;
                }
                Some(true) => continue,
                Some(false) => {}
            }
            let ok = (1..a).any(|d| {
                (1..b).any(|c| {
                    let lhs = cat(&[pw("x", d), pw("t", 1), pw("x", a - d), pw("y", b - c), pw("t", 1), pw("y", c)]);
                    let rhs = cat(&[pw("x", d), pw("t", 1), pw("y", b - c), pw("x", a - d), pw("t", 1), pw("y", c)]);
                    satisfies(m, &Identity::new(lhs, rhs))
                })
            });
            if !ok {
                first = ClauseReport::new("(i) powers", Verdict::Refuted, format!("{u} is not an isoterm and no split identity holds"));
                break 'outer;
            }
        }
    }
    clauses.push(first);
    clauses.push(left_b_condition(m, "(ii) b-unstable in A x y^k", 2..=k_bound, k_bound));
    clauses.push(right_b_condition(m, "(iii) b-unstable in x^k y B", 2..=k_bound, k_bound));
    let overall = Verdict::all(clauses.iter().map(|c| c.verdict));
    report("fbtlem1", clauses, overall)
}

/// Hypotheses of the criterion for monoids satisfying `{σ1, σ2}` with
/// `xᵉyᵉ` an isoterm (`e = exponent`) and a one-step swap identity, plus
/// the b-unstable conditions for `1 < k ≤ e`.
pub fn check_fbtlem(m: &FiniteMonoid, exponent: usize, k_bound: usize) -> HypothesisReport {
    let e = exponent.max(1);
    let mut clauses = sigma12(m);
    clauses.push(isoterm(m, &format!("x^{e} y^{e} is an isoterm"), &cat(&[pw("x", e), pw("y", e)])));
    let mut swaps = Vec::new();
    for d in 1..=e {
        swaps.push(Identity::new(
            cat(&[pw("x", e + 1 - d), pw("t", 1), pw("x", d), pw("y", 1), pw("t", 1), pw("y", 1)]),
            cat(&[pw("x", e + 1 - d), pw("t", 1), pw("x", d - 1), pw("y", 1), pw("x", 1), pw("t", 1), pw("y", 1)]),
        ));
        swaps.push(Identity::new(
            cat(&[pw("x", 1), pw("t", 1), pw("x", 1), pw("y", d), pw("t", 1), pw("y", e + 1 - d)]),
            cat(&[pw("x", 1), pw("t", 1), pw("y", 1), pw("x", 1), pw("y", d - 1), pw("t", 1), pw("y", e + 1 - d)]),
        ));
    }
    let holding: Vec<String> = swaps.iter().filter(|id| satisfies(m, id)).map(Identity::to_string).collect();
    clauses.push(if holding.is_empty() {
        let all: Vec<String> = swaps.iter().map(Identity::to_string).collect();
        ClauseReport::new("swap identity", Verdict::Refuted, format!("none of {} holds", all.join(", ")))
    } else {
        ClauseReport::new("swap identity", Verdict::Met, format!("{} holds", holding.join(", ")))
    });
    if e > 1 {
        clauses.push(left_b_condition(m, "(i) b-unstable in A x y^k", 2..=e, k_bound));
        clauses.push(right_b_condition(m, "(ii) b-unstable in x^k y B", 2..=e, k_bound));
    }
    let overall = Verdict::all(clauses.iter().map(|c| c.verdict));
    report("fbtlem", clauses, overall)
}

/// Hypotheses of the criterion for monoids satisfying the compaction
/// system `Ω`: `xytyx` and `xytxy` isoterms, or `xyztxzy` an isoterm.
pub fn check_abtab(m: &FiniteMonoid) -> HypothesisReport {
    let mut clauses: Vec<ClauseReport> =
        named::abtab_omega().iter().map(|r| satisfied(m, &format!("satisfies {}", r.name), &r.identity)).collect();
    let pre = Verdict::all(clauses.iter().map(|c| c.verdict));
    let a = isoterm(m, "(i) xytyx is an isoterm", &Word::parse("x y t y x").expect("word"));
    let b = isoterm(m, "(i) xytxy is an isoterm", &Word::parse("x y t x y").expect("word"));
    let c = isoterm(m, "(ii) xyztxzy is an isoterm", &Word::parse("x y z t x z y").expect("word"));
    let first = Verdict::all([a.verdict, b.verdict]);
    let main = Verdict::any([first, c.verdict]);
    clauses.extend([a, b, c]);
    report("abtab", clauses, Verdict::all([pre, main]))
}
