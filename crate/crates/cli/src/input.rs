//! Parsing of command-line operands: words, identities, word lists, rule
//! sets and monoid specifications.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use finbase::derivation::{delta_closure, j3_system, RewriteSystem};
use finbase::identity::{named, NamedIdentity};
use finbase::monoid::{build_a01, build_reflexive_relations, build_sw, direct_product, trivial_monoid, FiniteMonoid};
use finbase::word::ParseOptions;
use finbase::{Identity, Var, Word};

#[derive(Clone, Copy, Debug, Default)]
pub struct Syntax {
    pub compact_powers: bool,
}

impl Syntax {
    fn options(self) -> ParseOptions {
        ParseOptions { digit_powers: self.compact_powers }
    }

    pub fn word(self, text: &str) -> Result<Word> {
        Ok(Word::parse_with(text, self.options())?)
    }

    pub fn identity(self, text: &str) -> Result<Identity> {
        Ok(Identity::parse_with(text, self.options())?)
    }

    pub fn var(self, text: &str) -> Result<Var> {
        let w = self.word(text)?;
        match w.letters() {
            [x] => Ok(*x),
            _ => bail!("`{text}` is not a single variable"),
        }
    }

    /// A word list given inline (separated by `,` or `;`) or as a file with
    /// one word per line. An existing path wins over inline reading.
    pub fn words(self, source: &str) -> Result<Vec<Word>> {
        let text;
        let items: Vec<&str> = if Path::new(source).is_file() {
            text = std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
            text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
        } else {
            source.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()).collect()
        };
        items.into_iter().map(|s| self.word(s)).collect()
    }

    /// A monoid: `a01`, `trivial`, `s2` to `s4` (reflexive relations),
    /// `sw:WORD,WORD,…` or a JSON file, combined into direct products with `*`.
    pub fn monoid(self, spec: &str) -> Result<FiniteMonoid> {
        let mut factors = spec.split('*').map(|f| self.monoid_factor(f.trim()));
        let first = factors.next().ok_or_else(|| anyhow!("empty monoid specification"))??;
        factors.try_fold(first, |acc, f| Ok(direct_product(&acc, &f?)))
    }

    fn monoid_factor(self, spec: &str) -> Result<FiniteMonoid> {
        let lower = spec.to_ascii_lowercase();
        if let Some(words) = spec.strip_prefix("sw:").or_else(|| spec.strip_prefix("SW:")) {
            return Ok(build_sw(&self.words(words)?)?);
        }
        match lower.as_str() {
            "a01" | "a0^1" => return Ok(build_a01()),
            "trivial" | "1" => return Ok(trivial_monoid()),
            "s2" | "s3" | "s4" => return Ok(build_reflexive_relations(lower[1..].parse().expect("digit"))?),
            _ => {}
        }
        if Path::new(spec).is_file() {
            let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
            return Ok(FiniteMonoid::from_json(&text)?);
        }
        bail!("unknown monoid `{spec}` (expected a01, trivial, s2, s3, s4, sw:WORDS or a JSON file)")
    }

    /// A rewrite system: comma-separated rule names, each expanded with
    /// deletion instances, plus explicit identities.
    pub fn system(self, names: &[String], extra: &[String]) -> Result<RewriteSystem> {
        let mut base: Vec<NamedIdentity> = Vec::new();
        for name in names.iter().flat_map(|n| n.split(',')).map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "sigma1" => base.push(named::sigma_1()),
                "sigma-mu" => base.push(named::sigma_mu()),
                "sigma2" => base.push(named::sigma_2()),
                "square-shift" => base.push(named::square_shift()),
                "middle-erase" => base.push(named::middle_erase()),
                "dup" => base.push(named::duplication()),
                "ins" => base.push(named::insertion()),
                "ins-dual" => base.push(named::insertion_dual()),
                "xy3" => base.push(named::xy_cubed()),
                "omega" => base.extend(named::abtab_omega()),
                "j3" => base.extend(j3_system().base),
                other => bail!(
                    "unknown rule `{other}` (expected sigma1, sigma-mu, sigma2, square-shift, middle-erase, dup, ins, ins-dual, xy3, omega, j3)"
                ),
            }
        }
        for (i, text) in extra.iter().enumerate() {
            base.push(NamedIdentity::new(format!("r{}", i + 1), self.identity(text)?));
        }
        if base.is_empty() {
            bail!("no rules given; use --rules or --rule");
        }
        Ok(delta_closure(&base))
    }
}
