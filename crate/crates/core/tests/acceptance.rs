//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Built with `harness = false`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use finbase::derivation::{
    axil_transform, compact_normal_form, delta_closure, derivable, derive_block_balanced, derive_j3,
    derive_p12_block_balanced, j3_system, AxilDirection, RewriteSystem, Trace,
};
use finbase::fb::{chain_monoid, check_fbtlem, fact_w12_check, theorem_alg_decide, Decision, Verdict, WFamily};
use finbase::identity::{blbal1_condition, classify, is_block_balanced, is_p12, named, NamedIdentity, SigmaSet};
use finbase::monoid::{
    build_a01, build_reflexive_relations, build_sw, is_isoterm_bounded, satisfies, FiniteMonoid, IsotermVerdict,
};
use finbase::word::simon_equiv;
use finbase::{Identity, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sw(words: &[&str]) -> FiniteMonoid {
    build_sw(&words.iter().map(|s| w(s)).collect::<Vec<_>>()).expect("S(W)")
}

fn chain_reproduction() -> Outcome {
    let got: Vec<Decision> =
        (1..=8).map(|k| theorem_alg_decide(&chain_monoid(k).unwrap()).map(|v| v.decision)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let want: Vec<Decision> = (1..=8).map(|k| if k % 2 == 1 { Decision::Fb } else { Decision::Nfb }).collect();
    if got == want {
        Ok("M1..M8 alternate FB/NFB".into())
    } else {
        Err(format!("got {got:?}"))
    }
}

fn straub_agreement() -> Outcome {
    let a01 = build_a01();
    let ids = all_identities(3, 6, true);
    let mut bad = Vec::new();
    for id in &ids {
        let s = satisfies(&a01, id);
        let p = classify(id, None).p12;
        let j = simon_equiv(&id.lhs, &id.rhs, 2);
        if s != p || p != j {
            bad.push(format!("{id}: A01 {s}, P12 {p}, J2 {j}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} identities agree", ids.len()))
    } else {
        Err(format!("{} disagreements, first: {}", bad.len(), bad[0]))
    }
}

fn volkov_desk_scale() -> Outcome {
    let s3 = build_reflexive_relations(3).map_err(|e| e.to_string())?;
    let ids = all_identities(2, 5, false);
    for id in &ids {
        if satisfies(&s3, id) != simon_equiv(&id.lhs, &id.rhs, 2) {
            return Err(format!("S3 disagrees on {id}"));
        }
    }
    let s4 = build_reflexive_relations(4).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alphabet = [v("x"), v("y")];
    let j3 = j3_system();
    let (samples, mut equivalent) = (10_000, 0);
    for i in 0..samples {
        let u = random_word(&mut rng, &alphabet, 1..=8);
        // Half the samples are walks in the J3 rewrite graph so that both
        // answers are well represented.
        let other = if i % 2 == 0 {
            random_word(&mut rng, &alphabet, 1..=8)
        } else {
            random_walk(&mut rng, &j3, &u, 4, 8)
        };
        let id = Identity::new(u, other);
        let j = simon_equiv(&id.lhs, &id.rhs, 3);
        equivalent += usize::from(j);
        if satisfies(&s4, &id) != j {
            return Err(format!("S4 disagrees on {id}"));
        }
    }
    Ok(format!("{} exhaustive on S3, {samples} sampled on S4 ({equivalent} in J3)", ids.len()))
}

fn blbal1_equivalence() -> Outcome {
    let ids = all_identities(3, 6, false);
    let mut checked = 0;
    for sigma in SigmaSet::all() {
        let system = delta_closure(&sigma.identities());
        for id in &ids {
            let cond = blbal1_condition(id, sigma);
            let found = derivable(id, &system, 8, 10);
            if let Some(t) = &found {
                if t.replay().is_err() || t.identity() != *id {
                    return Err(format!("invalid trace for {id} over {sigma}"));
                }
            }
            if cond != found.is_some() {
                return Err(format!("{id} over {sigma}: condition {cond}, derivable {}", found.is_some()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (identity, Σ) pairs agree"))
}

fn delta_closure_fidelity() -> Outcome {
    let got = delta_closure(&[named::sigma_mu()]);
    let listed = ["x t1 x y t2 y == x t1 y x t2 y", "x x y t2 y == x y x t2 y", "x t1 x y y == x t1 y x y", "x x y y == x y x y"];
    let mut keys: Vec<Identity> = got.closure.iter().map(|r| r.identity.unoriented_key()).collect();
    let mut want: Vec<Identity> = listed.iter().map(|s| id(s).unoriented_key()).collect();
    keys.sort();
    want.sort();
    if keys == want {
        Ok("{σμ}^δ has the 4 listed members".into())
    } else {
        Err(format!("got {:?}", got.closure.iter().map(|r| r.identity.to_string()).collect::<Vec<_>>()))
    }
}

/// One derivation family for the constructive-derivation criterion.
struct Family {
    name: &'static str,
    monoids: Vec<(&'static str, FiniteMonoid)>,
    rules: Vec<NamedIdentity>,
    /// Whether the property holds between the start word and a later word.
    stable: fn(&Word, &Word) -> bool,
}

const INPUTS: usize = 1000;
const SAMPLES: usize = 1000;

/// Checks the three requirements on each generated trace.
fn check_family(
    fam: &Family,
    rng: &mut ChaCha8Rng,
    mut next: impl FnMut(&mut ChaCha8Rng) -> Result<Trace, String>,
) -> Result<String, String> {
    let system = delta_closure(&fam.rules);
    let mut steps = 0;
    for i in 0..INPUTS {
        let trace = next(rng).map_err(|e| format!("{}: input {i}: {e}", fam.name))?;
        let words = trace.replay().map_err(|e| format!("{}: replay of {}: {e}", fam.name, trace.identity()))?;
        trace.uses_only(&system).map_err(|e| format!("{}: {}: {e}", fam.name, trace.identity()))?;
        for (label, m) in &fam.monoids {
            sound_under_random_assignments(rng, m, &words, SAMPLES)
                .map_err(|e| format!("{}: {label}: {} : {e}", fam.name, trace.identity()))?;
        }
        if let Some(bad) = words.iter().find(|u| !(fam.stable)(&words[0], u)) {
            return Err(format!("{}: property lost at `{bad}` in {}", fam.name, trace.identity()));
        }
        steps += trace.len();
    }
    Ok(format!("{} {INPUTS} inputs/{steps} steps", fam.name))
}

/// The monoids must satisfy every base rule; rules with many variables on
/// the relation monoid are checked through its Simon congruence instead.
fn monoids_satisfy(fam: &Family) -> Result<(), String> {
    for (label, m) in &fam.monoids {
        for r in &fam.rules {
            let ok = if label.starts_with("S3") {
                simon_equiv(&r.identity.lhs, &r.identity.rhs, 2)
            } else {
                satisfies(m, &r.identity)
            };
            if !ok {
                return Err(format!("{label} fails {}", r.name));
            }
        }
    }
    Ok(())
}

fn block_balanced_stable(a: &Word, b: &Word) -> bool {
    is_block_balanced(&Identity::new(a.clone(), b.clone()))
}

fn p12_stable(a: &Word, b: &Word) -> bool {
    let id = Identity::new(a.clone(), b.clone());
    is_block_balanced(&id) && is_p12(&id)
}

fn j2_stable(a: &Word, b: &Word) -> bool {
    simon_equiv(a, b, 2)
}

fn j3_stable(a: &Word, b: &Word) -> bool {
    simon_equiv(a, b, 3)
}

fn random_block_balanced(rng: &mut ChaCha8Rng) -> Identity {
    loop {
        let (lin, non) = (rng.gen_range(0..=2), rng.gen_range(1..=3));
        let u = random_structured_word(rng, lin, non, 2, 3);
        let v = shuffle_blocks(rng, &u);
        if u != v {
            return Identity::new(u, v);
        }
    }
}

fn constructive_derivations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s3 = || build_reflexive_relations(3).expect("S3");
    let families = [
        Family {
            name: "block-balanced",
            monoids: vec![("S(aata)", sw(&["a a t a"])), ("S(atab)", sw(&["a t a b"])), ("S(aata,ataa)", sw(&["a a t a", "a t a a"]))],
            rules: SigmaSet::FULL.identities(),
            stable: block_balanced_stable,
        },
        Family {
            name: "P12",
            monoids: vec![("A01", build_a01()), ("S(aabb)", sw(&["a a b b"])), ("S(a3b2,a2b3)", sw(&["a a a b b", "a a b b b"]))],
            rules: SigmaSet::new(true, false, true).identities(),
            stable: p12_stable,
        },
        Family {
            name: "compact",
            monoids: vec![("S(abtab)", sw(&["a b t a b"])), ("S(aata)", sw(&["a a t a"])), ("S(ataa)", sw(&["a t a a"]))],
            rules: vec![named::sigma_mu(), named::square_shift()],
            stable: block_balanced_stable,
        },
        Family {
            name: "axil",
            monoids: vec![("A01", build_a01()), ("S(aabb)", sw(&["a a b b"])), ("S3", s3())],
            rules: vec![named::duplication(), named::insertion()],
            stable: j2_stable,
        },
        Family {
            name: "J3",
            monoids: vec![("S3", s3()), ("A01", build_a01()), ("S(abba)", sw(&["a b b a"]))],
            rules: named::j3_basis(),
            stable: j3_stable,
        },
    ];
    for fam in &families {
        monoids_satisfy(fam)?;
    }
    let mut lines = Vec::new();
    lines.push(check_family(&families[0], &mut rng, |rng| {
        derive_block_balanced(&random_block_balanced(rng)).map_err(|e| e.to_string())
    })?);
    lines.push(check_family(&families[1], &mut rng, |rng| {
        let id = (0..10_000).map(|_| random_block_balanced(rng)).find(is_p12).ok_or("no P12 identity generated")?;
        derive_p12_block_balanced(&id).map_err(|e| e.to_string())
    })?);
    lines.push(check_family(&families[2], &mut rng, |rng| {
        // Only words that need work.
        let u = loop {
            let (lin, non) = (rng.gen_range(0..=2), rng.gen_range(2..=4));
            let u = random_structured_word(rng, lin, non, 1, 2);
            if !u.is_compact() {
                break u;
            }
        };
        let (normal, trace) = compact_normal_form(&u).map_err(|e| e.to_string())?;
        if !normal.is_compact() {
            return Err(format!("{normal} is not compact"));
        }
        Ok(trace)
    })?);
    lines.push(check_family(&families[3], &mut rng, |rng| {
        let x = v("x");
        let others = [v("y"), v("z"), v("t")];
        let mut c = random_word(rng, &others, 0..=3).letters().to_vec();
        c.insert(rng.gen_range(0..=c.len()), x);
        let c = Word::from(c);
        let b = random_word(rng, &c.content(), 0..=4);
        let mut a = random_word(rng, &others, 0..=3).letters().to_vec();
        a.insert(rng.gen_range(0..=a.len()), x);
        let dir = if rng.gen_bool(0.5) { AxilDirection::Insert } else { AxilDirection::Erase };
        axil_transform(&Word::from(a), &b, &c, x, dir).map_err(|e| e.to_string())
    })?);
    let j3 = j3_system();
    lines.push(check_family(&families[4], &mut rng, |rng| {
        let alphabet = [v("x"), v("y"), v("z"), v("t")];
        loop {
            let k = rng.gen_range(2..=4);
            let u = random_word(rng, &alphabet[..k], 3..=8);
            let steps = rng.gen_range(1..=6);
            let end = random_walk(rng, &j3, &u, steps, 11);
            if end != u {
                return derive_j3(&Identity::new(u, end)).map_err(|e| e.to_string());
            }
        }
    })?);
    Ok(lines.join("; "))
}

fn dif_facts() -> Outcome {
    let m1 = sw(&["a a t1 a a b b t2 b"]);
    let m2 = sw(&["a a a b b", "a a b b b"]);
    if !satisfies(&m1, &id("x x x y y == y y x x x")) {
        return Err("S(a²t1a²b²t2b) fails x³y² ≈ y²x³".into());
    }
    match is_isoterm_bounded(&m2, &w("a a b b"), 8).map_err(|e| e.to_string())? {
        IsotermVerdict::IsotermUpTo { .. } => {}
        other => return Err(format!("a²b² in S(a³b²,a²b³): {other:?}")),
    }
    let refuted = check_fbtlem(&m2, 2, 3);
    let swap = refuted.clauses.iter().find(|c| c.clause == "swap identity").ok_or("no swap clause")?;
    if swap.verdict != Verdict::Refuted {
        return Err(format!("swap identities on S(a³b²,a²b³): {}", swap.detail));
    }
    let confirmed = check_fbtlem(&m1, 2, 3);
    let target = id("x t x y t y y == x t y x t y y");
    if !satisfies(&m1, &target) || confirmed.overall != Verdict::Met {
        return Err(format!("fbtlem on S(a²t1a²b²t2b): {}", confirmed.overall));
    }
    Ok("4 facts hold".into())
}

fn w12_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let alphabet = [v("a"), v("b"), v("c"), v("d")];
    let (sigma_1, sigma_2) = (named::sigma_1().identity, named::sigma_2().identity);
    let mut holding = 0;
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let words: Vec<Word> = (0..k)
            .map(|_| {
                let vars = rng.gen_range(1..=4);
                random_word(&mut rng, &alphabet[..vars], 1..=8)
            })
            .collect();
        let fam = WFamily::finite(words.clone()).map_err(|e| e.to_string())?;
        let m = build_sw(&words).map_err(|e| e.to_string())?;
        let fact = fact_w12_check(&fam).holds;
        let both = satisfies(&m, &sigma_1) && satisfies(&m, &sigma_2);
        holding += usize::from(fact);
        if fact != both {
            let listed: Vec<String> = words.iter().map(Word::to_string).collect();
            return Err(format!("W = {{{}}}: adjacency {fact}, σ1∧σ2 {both}", listed.join(", ")));
        }
    }
    Ok(format!("200 random W agree ({holding} satisfy the condition)"))
}

fn j3_basis_soundness() -> Outcome {
    let mut all = named::j3_basis();
    all.push(named::xy_cubed());
    for r in &all {
        if !simon_equiv(&r.identity.lhs, &r.identity.rhs, 3) {
            return Err(format!("{} is not in J3", r.name));
        }
    }
    let mut targets = named::j3_sigma();
    targets.extend(named::j3_delta());
    targets.push(named::xy_cubed());
    let system: RewriteSystem = j3_system();
    for r in &targets {
        let t = derive_j3(&r.identity).map_err(|e| format!("{}: {e}", r.name))?;
        t.replay().map_err(|e| format!("{}: {e}", r.name))?;
        t.uses_only(&system).map_err(|e| format!("{}: {e}", r.name))?;
        if t.identity() != r.identity {
            return Err(format!("{}: trace derives {}", r.name, t.identity()));
        }
    }
    Ok(format!("{} basis members in J3, {} derivations replay", all.len(), targets.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("chain reproduction", chain_reproduction),
        ("A0^1 / P12 / J2 agreement", straub_agreement),
        ("relation monoids vs Simon congruence", volkov_desk_scale),
        ("block-balanced derivability equivalence", blbal1_equivalence),
        ("deletion closure of σμ", delta_closure_fidelity),
        ("constructive derivations", constructive_derivations),
        ("facts about the swap-identity examples", dif_facts),
        ("adjacency condition vs σ1, σ2", w12_equivalence),
        ("J3 basis soundness", j3_basis_soundness),
    ];
    // Criterion numbers given on the command line restrict the run.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    let ran = if only.is_empty() { criteria.len() } else { only.len() };
    println!("{} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
