//! Command dispatch. Each command calls one library operation and reports
//! its result both as JSON and as text.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use finbase::derivation::{
    compact_normal_form, derivable, derive_block_balanced, derive_j3, derive_p12_block_balanced, Trace,
};
use finbase::fb::{
    chain_monoid, check_abtab, check_fbs3, check_fbtlem, check_fbtlem1, fact_w12_check, theorem_alg_decide, Decision,
    FbVerdict, FbWitness, HypothesisReport, Verdict, WFamily,
};
use finbase::identity::{classify, find_critical_pair, unstable_pairs};
use finbase::monoid::{find_counterexample, is_b_unstable, is_isoterm_bounded, FiniteMonoid, IsotermVerdict};
use finbase::word::{blocks, blocks12, scattered_subwords, simon_equiv, Segment};
use finbase::Word;

use crate::input::Syntax;
use crate::{Command, DeriveCmd, FbCmd, IdentityCmd, JmCmd, MonoidCmd, TraceOut, WordCmd};

pub struct Output {
    pub json: Value,
    pub human: String,
    /// False for a negative answer to a yes/no question.
    pub positive: bool,
}

fn out(json: Value, human: String) -> Output {
    Output { json, human, positive: true }
}

fn verdict(json: Value, human: String, positive: bool) -> Output {
    Output { json, human, positive }
}

pub fn run(command: &Command, syntax: Syntax) -> Result<Output> {
    match command {
        Command::Word(c) => word(c, syntax),
        Command::Identity(c) => identity(c, syntax),
        Command::Monoid(c) => monoid(c, syntax),
        Command::Derive(c) => derive(c, syntax),
        Command::Jm(c) => jm(c, syntax),
        Command::Fb(c) => fb(c, syntax),
    }
}

fn word(c: &WordCmd, syntax: Syntax) -> Result<Output> {
    match c {
        WordCmd::Blocks { word, first_last } => {
            let u = syntax.word(word)?;
            let d = if *first_last { blocks12(&u) } else { blocks(&u) };
            let human = d
                .segments
                .iter()
                .map(|s| match s {
                    Segment::Separator { occurrence, .. } => format!("|{}|", occurrence.var),
                    Segment::Block { letters, .. } => format!("[{letters}]"),
                })
                .collect::<Vec<_>>()
                .join(" ");
            Ok(out(json!({ "word": u, "segments": d.segments }), human))
        }
        WordCmd::Compact { word, vars } => {
            let u = syntax.word(word)?;
            let compact = match vars.as_deref().map(|v| v.split(',').map(str::trim).collect::<Vec<_>>()) {
                None => u.is_compact(),
                Some(v) if v.len() == 1 => u.is_x_compact(syntax.var(v[0])?)?,
                Some(v) if v.len() == 2 => u.is_xy_compact(syntax.var(v[0])?, syntax.var(v[1])?)?,
                Some(_) => bail!("--vars takes one variable or a pair `x,y`"),
            };
            Ok(verdict(json!({ "word": u, "vars": vars, "compact": compact }), format!("compact: {compact}"), compact))
        }
        WordCmd::Subwords { word, m } => {
            let u = syntax.word(word)?;
            let subs: Vec<Word> = scattered_subwords(&u, *m).into_iter().collect();
            let human = subs.iter().map(Word::to_string).collect::<Vec<_>>().join("\n");
            Ok(out(json!({ "word": u, "m": m, "subwords": subs }), human))
        }
    }
}

/// Display names of the property flags.
fn flag_name(key: &str) -> String {
    match key {
        "p1" => "P₁".into(),
        "p1b" => "P₁ᵇ".into(),
        "p12" => "P₁,₂".into(),
        "p11" => "P₁,₁".into(),
        "p22" => "P₂,₂".into(),
        "p1mu" => "P₁,μ".into(),
        "pmu2" => "Pμ,₂".into(),
        "block_balanced" => "block-balanced".into(),
        "almost_linear" => "almost linear".into(),
        other => match other.strip_suffix("_limited") {
            Some(n) => format!("{n}-limited"),
            None => match other.strip_prefix('p') {
                Some(n) => format!("P_{n}"),
                None => other.into(),
            },
        },
    }
}

fn identity(c: &IdentityCmd, syntax: Syntax) -> Result<Output> {
    match c {
        IdentityCmd::Classify { identity, n } => {
            let id = syntax.identity(identity)?;
            let report = classify(&id, *n);
            let flags = report.flags();
            let mut human = format!("{id}\n");
            for (k, v) in &flags {
                writeln!(human, "  {}: {v}", flag_name(k))?;
            }
            for note in &report.notes {
                writeln!(human, "  note: {note}")?;
            }
            Ok(out(json!({ "identity": id, "properties": flags, "notes": report.notes }), human))
        }
        IdentityCmd::Pairs { identity } => {
            let id = syntax.identity(identity)?;
            let pairs = unstable_pairs(&id)?;
            let critical = find_critical_pair(&id)?;
            let mut human = format!("{} unstable pairs\n", pairs.len());
            for p in &pairs {
                writeln!(human, "  {{{}, {}}}{}", p.left, p.right, if p.critical { " (critical)" } else { "" })?;
            }
            Ok(out(json!({ "identity": id, "pairs": pairs, "critical": critical }), human))
        }
    }
}

fn monoid_json(m: &FiniteMonoid) -> Value {
    serde_json::from_str(&m.to_json()).expect("valid json")
}

fn monoid_summary(m: &FiniteMonoid) -> String {
    let mut s = format!("monoid of order {} with identity {}\n", m.size(), m.label(m.one()));
    if m.size() <= 16 {
        for a in 0..m.size() {
            let row: Vec<&str> = (0..m.size()).map(|b| m.label(m.mul(a, b))).collect();
            writeln!(s, "  {:>6} | {}", m.label(a), row.join(" ")).expect("string write");
        }
    }
    s
}

fn monoid(c: &MonoidCmd, syntax: Syntax) -> Result<Output> {
    match c {
        MonoidCmd::Build { spec, words } => {
            let m = match (spec, words) {
                (Some(s), None) => syntax.monoid(s)?,
                (None, Some(w)) => finbase::monoid::build_sw(&syntax.words(w)?)?,
                _ => bail!("give either a monoid specification or --words"),
            };
            Ok(out(monoid_json(&m), monoid_summary(&m)))
        }
        MonoidCmd::Satisfies { monoid, identity } => {
            let m = syntax.monoid(monoid)?;
            let id = syntax.identity(identity)?;
            let counterexample = find_counterexample(&m, &id).map(|a| a.describe(&m));
            let holds = counterexample.is_none();
            let human = match &counterexample {
                None => format!("satisfies: true ({id})"),
                Some(a) => {
                    let vals: Vec<String> = a.iter().map(|(k, v)| format!("{k} ↦ {v}")).collect();
                    format!("satisfies: false ({id}); counterexample {}", vals.join(", "))
                }
            };
            Ok(verdict(json!({ "identity": id, "satisfies": holds, "counterexample": counterexample }), human, holds))
        }
        MonoidCmd::Isoterm { monoid, word, bound } => {
            let m = syntax.monoid(monoid)?;
            let u = syntax.word(word)?;
            let bound = bound.unwrap_or(u.len() + 2);
            let v = is_isoterm_bounded(&m, &u, bound)?;
            let human = match &v {
                IsotermVerdict::IsotermUpTo { bound, .. } => format!("isoterm: true (sides up to length {bound})"),
                IsotermVerdict::NotIsoterm { witness, .. } => format!("isoterm: false; {witness} holds"),
            };
            let positive = v.is_isoterm();
            Ok(verdict(json!({ "word": u, "bound": bound, "result": v }), human, positive))
        }
        MonoidCmd::BUnstable { monoid, word, x, y } => {
            let m = syntax.monoid(monoid)?;
            let u = syntax.word(word)?;
            let (x, y) = (syntax.var(x)?, syntax.var(y)?);
            let v = is_b_unstable(&m, &u, x, y)?;
            let human = match &v.witness {
                Some(w) => format!("b-unstable: true; {w} holds"),
                None => format!("b-unstable: {}", v.unstable),
            };
            let positive = v.unstable;
            Ok(verdict(json!({ "word": u, "x": x, "y": y, "result": v }), human, positive))
        }
        MonoidCmd::Product { left, right } => {
            let m = finbase::monoid::direct_product(&syntax.monoid(left)?, &syntax.monoid(right)?);
            Ok(out(monoid_json(&m), monoid_summary(&m)))
        }
    }
}

fn emit(trace: &Trace, target: &TraceOut) -> Result<()> {
    match target.emit_trace.as_deref() {
        None => Ok(()),
        Some("-") => {
            print!("{}", trace.to_json_lines());
            Ok(())
        }
        Some(path) => std::fs::write(path, trace.to_json_lines()).with_context(|| format!("writing {path}")),
    }
}

fn trace_output(trace: &Trace, target: &TraceOut) -> Result<Output> {
    emit(trace, target)?;
    let words = trace.replay()?;
    let mut human = format!("{} in {} steps\n", trace.identity(), trace.len());
    writeln!(human, "  {}", words[0])?;
    for (step, w) in trace.steps.iter().zip(&words[1..]) {
        writeln!(human, "  → {w}    [{} {:?} at {}]", step.rule, step.direction, step.position + 1)?;
    }
    Ok(out(json!({ "identity": trace.identity(), "steps": trace.len(), "trace": trace }), human))
}

fn derive(c: &DeriveCmd, syntax: Syntax) -> Result<Output> {
    match c {
        DeriveCmd::Search { identity, rules, rule, max_len, max_depth, out: target } => {
            let id = syntax.identity(identity)?;
            let system = syntax.system(rules, rule)?;
            let max_len = max_len.unwrap_or(id.lhs.len().max(id.rhs.len()) + 2);
            match derivable(&id, &system, max_len, *max_depth) {
                Some(trace) => trace_output(&trace, target),
                None => Ok(verdict(
                    json!({ "identity": id, "derivable": false, "max_len": max_len, "max_depth": max_depth }),
                    format!("no derivation of {id} within length {max_len} and depth {max_depth}"),
                    false,
                )),
            }
        }
        DeriveCmd::BlockBalanced { identity, out: target } => {
            trace_output(&derive_block_balanced(&syntax.identity(identity)?)?, target)
        }
        DeriveCmd::P12 { identity, out: target } => {
            trace_output(&derive_p12_block_balanced(&syntax.identity(identity)?)?, target)
        }
        DeriveCmd::J3 { identity, out: target } => trace_output(&derive_j3(&syntax.identity(identity)?)?, target),
        DeriveCmd::Compact { word, out: target } => {
            let (normal, trace) = compact_normal_form(&syntax.word(word)?)?;
            let mut o = trace_output(&trace, target)?;
            o.json["normal_form"] = json!(normal);
            o.human = format!("normal form: {normal}\n{}", o.human);
            Ok(o)
        }
        DeriveCmd::Replay { file, rules } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
            let checked = finbase::derivation::Trace::from_json_lines(&text).and_then(|t| {
                if !rules.is_empty() {
                    t.uses_only(&syntax.system(rules, &[]).map_err(|e| {
                        finbase::derivation::DerivationError::Format(e.to_string())
                    })?)?;
                }
                Ok(t)
            });
            Ok(match checked {
                Ok(t) => verdict(
                    json!({ "valid": true, "identity": t.identity(), "steps": t.len() }),
                    format!("valid: {} in {} steps", t.identity(), t.len()),
                    true,
                ),
                Err(e) => verdict(json!({ "valid": false, "error": e.to_string() }), format!("invalid: {e}"), false),
            })
        }
    }
}

fn jm(c: &JmCmd, syntax: Syntax) -> Result<Output> {
    let JmCmd::Check { m, identity } = c;
    if *m == 0 {
        bail!("m must be positive");
    }
    let id = syntax.identity(identity)?;
    let eq = simon_equiv(&id.lhs, &id.rhs, *m);
    Ok(verdict(json!({ "identity": id, "m": m, "equivalent": eq }), format!("equivalent: {eq}"), eq))
}

fn family(syntax: Syntax, words: &Option<String>, symbolic: bool) -> Result<WFamily> {
    let words = match words {
        Some(w) => syntax.words(w)?,
        None if symbolic => Vec::new(),
        None => bail!("--words is required"),
    };
    if symbolic {
        if words.iter().any(Word::is_empty) {
            bail!("W contains the empty word");
        }
        Ok(WFamily::Symbolic { finite: words })
    } else {
        Ok(WFamily::finite(words)?)
    }
}

fn describe_verdict(v: &FbVerdict) -> String {
    let m = v.m.map_or("∞".to_string(), |m| m.to_string());
    match &v.witness {
        FbWitness::TrivialW => format!("{}: W is empty (m = {m})", v.decision),
        FbWitness::InfiniteM => format!("{}: powers in W are unbounded", v.decision),
        FbWitness::FreeD { d } => format!("{}, d={d} (m = {m}): no factor b^{} T b^{d}", v.decision, v.m.unwrap_or(0) + 1 - d),
        FbWitness::Covered { covers } => {
            let mut s = format!("{} (m = {m}): every d is covered", v.decision);
            for c in covers {
                write!(s, "\n  d={}: `{}` in word {} ({})", c.d, c.word.factor(c.start, c.end), c.word_index + 1, c.word)
                    .expect("string write");
            }
            s
        }
    }
}

fn hypothesis_text(r: &HypothesisReport) -> String {
    let mut s = format!("{}: {}\n", r.theorem, r.overall);
    for c in &r.clauses {
        writeln!(s, "  [{}] {}: {}", c.verdict, c.clause, c.detail).expect("string write");
    }
    s
}

fn fb(c: &FbCmd, syntax: Syntax) -> Result<Output> {
    match c {
        FbCmd::CheckW12 { words, symbolic } => {
            let w = family(syntax, words, *symbolic)?;
            let r = fact_w12_check(&w);
            let human = match &r.violation {
                None => "adjacency condition holds".to_string(),
                Some(v) => format!("adjacency condition fails: {v}"),
            };
            Ok(verdict(json!({ "w": w, "holds": r.holds, "violation": r.violation }), human, r.holds))
        }
        FbCmd::Decide { words, symbolic } => {
            let w = family(syntax, words, *symbolic)?;
            let v = theorem_alg_decide(&w)?;
            let positive = v.decision == Decision::Fb;
            Ok(verdict(json!({ "w": w, "verdict": v }), describe_verdict(&v), positive))
        }
        FbCmd::Chain { k } => {
            let w = chain_monoid(*k)?;
            let v = theorem_alg_decide(&w)?;
            let listed: Vec<String> = w.words().iter().map(Word::to_string).collect();
            let human = format!("M{k}: W = {{{}}}\n{}", listed.join(", "), describe_verdict(&v));
            Ok(out(json!({ "k": k, "w": w, "verdict": v }), human))
        }
        FbCmd::Hypotheses { theorem, monoid, bound, m } => {
            let mon = syntax.monoid(monoid)?;
            let r = match theorem.to_ascii_lowercase().as_str() {
                "fbs3" => check_fbs3(&mon, *bound),
                "fbtlem1" => check_fbtlem1(&mon, *bound),
                "fbtlem" => check_fbtlem(&mon, *m, *bound),
                "abtab" => check_abtab(&mon),
                other => bail!("unknown criterion `{other}` (expected fbs3, fbtlem1, fbtlem or abtab)"),
            };
            let positive = r.overall != Verdict::Refuted;
            Ok(verdict(serde_json::to_value(&r)?, hypothesis_text(&r), positive))
        }
    }
}
