use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::DerivationError;
use crate::identity::Identity;
use crate::word::{Var, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Replace an instance of the lhs by the rhs.
    Forward,
    Backward,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One application of an identity: the factor at `position` equal to the
/// substituted source side is replaced by the substituted target side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub identity: Identity,
    pub direction: Direction,
    pub position: usize,
    pub substitution: BTreeMap<Var, Word>,
}

impl Step {
    fn sides(&self) -> (&Word, &Word) {
        match self.direction {
            Direction::Forward => (&self.identity.lhs, &self.identity.rhs),
            Direction::Backward => (&self.identity.rhs, &self.identity.lhs),
        }
    }

    fn image(&self, side: &Word) -> Result<Word, DerivationError> {
        let theta: HashMap<Var, Word> = self.substitution.iter().map(|(k, v)| (*k, v.clone())).collect();
        for x in side.letters() {
            match theta.get(x) {
                None => return Err(DerivationError::BadStep(format!("no image for `{x}` in {}", self.rule))),
                Some(img) if img.is_empty() => {
                    return Err(DerivationError::BadStep(format!("empty image for `{x}` in {}", self.rule)))
                }
                Some(_) => {}
            }
        }
        Ok(side.substitute(&theta))
    }

    /// The matched factor and its replacement.
    pub fn instance(&self) -> Result<(Word, Word), DerivationError> {
        let (from, to) = self.sides();
        Ok((self.image(from)?, self.image(to)?))
    }

    /// Applies the step to `w`, checking that the matched factor is present.
    pub fn apply(&self, w: &Word) -> Result<Word, DerivationError> {
        let (from, to) = self.instance()?;
        let end = self.position + from.len();
        if end > w.len() || w.factor(self.position, end) != from {
            return Err(DerivationError::ReplayMismatch {
                rule: self.rule.clone(),
                position: self.position,
                word: w.to_string(),
                expected: from.to_string(),
            });
        }
        Ok(w.splice(self.position, end, to.letters()))
    }

    /// The step undoing this one when applied to its result.
    pub fn inverse(&self) -> Step {
        Step { direction: self.direction.flipped(), ..self.clone() }
    }

    /// The same rewrite read right to left in a word of length `len` (the
    /// length of the word the step applies to).
    pub fn mirrored(&self, len: usize) -> Step {
        let (from, _) = self.instance().expect("step built from a valid instance");
        Step {
            rule: mirror_name(&self.rule),
            identity: self.identity.reversed(),
            direction: self.direction,
            position: len - self.position - from.len(),
            substitution: self.substitution.iter().map(|(k, v)| (*k, v.reversed())).collect(),
        }
    }
}

/// Names of mirror-image rules: `ins` and `ins*`, and the numbered pairs,
/// swap; self-dual rules keep their name. A deletion suffix is preserved.
pub fn mirror_name(name: &str) -> String {
    let (head, tail) = match name.find('[') {
        Some(i) => name.split_at(i),
        None => (name, ""),
    };
    let head = match head {
        "ins" => "ins*".to_string(),
        "ins*" => "ins".to_string(),
        "σ1" => "σ2".to_string(),
        "σ2" => "σ1".to_string(),
        "Σ1" => "Σ2".to_string(),
        "Σ2" => "Σ1".to_string(),
        "dup" | "σμ" | "Δ1" | "Δ2" => head.to_string(),
        other if other.ends_with('ᴿ') => other.trim_end_matches('ᴿ').to_string(),
        other => format!("{other}ᴿ"),
    };
    format!("{head}{tail}")
}

/// A derivation `start → … → end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub start: Word,
    pub steps: Vec<Step>,
    pub end: Word,
}

#[derive(Serialize, Deserialize)]
struct Header {
    start: Word,
    end: Word,
    steps: usize,
}

impl Trace {
    pub fn empty(w: Word) -> Trace {
        Trace { start: w.clone(), steps: Vec::new(), end: w }
    }

    /// Builds a trace from steps, computing the end word by replay.
    pub fn from_steps(start: Word, steps: Vec<Step>) -> Result<Trace, DerivationError> {
        let mut end = start.clone();
        for s in &steps {
            end = s.apply(&end)?;
        }
        Ok(Trace { start, steps, end })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The words visited, `start` first; fails if any step does not apply
    /// or the recorded end is not reached.
    pub fn replay(&self) -> Result<Vec<Word>, DerivationError> {
        let mut words = vec![self.start.clone()];
        for s in &self.steps {
            let next = s.apply(words.last().expect("nonempty"))?;
            words.push(next);
        }
        let last = words.last().expect("nonempty");
        if *last != self.end {
            return Err(DerivationError::ReplayMismatch {
                rule: "end".into(),
                position: 0,
                word: last.to_string(),
                expected: self.end.to_string(),
            });
        }
        Ok(words)
    }

    pub fn is_valid(&self) -> bool {
        self.replay().is_ok()
    }

    /// Appends `other`, which must start where this trace ends.
    pub fn then(mut self, other: Trace) -> Trace {
        assert_eq!(self.end, other.start, "traces do not compose");
        self.steps.extend(other.steps);
        self.end = other.end;
        self
    }

    /// The trace read backwards: `end → … → start`.
    pub fn inverted(&self) -> Trace {
        Trace {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(Step::inverse).collect(),
            end: self.start.clone(),
        }
    }

    /// The mirror-image derivation between the reversed words.
    pub fn mirrored(&self) -> Trace {
        let words = self.replay().expect("mirroring a valid trace");
        let steps = self.steps.iter().zip(&words).map(|(s, w)| s.mirrored(w.len())).collect();
        Trace { start: self.start.reversed(), steps, end: self.end.reversed() }
    }

    /// Identity derived by this trace.
    pub fn identity(&self) -> Identity {
        Identity::new(self.start.clone(), self.end.clone())
    }

    /// Whether every step uses a member of `system`.
    pub fn uses_only(&self, system: &super::RewriteSystem) -> Result<(), DerivationError> {
        match self.steps.iter().position(|s| !system.contains(&s.identity)) {
            None => Ok(()),
            Some(i) => Err(DerivationError::StepNotAdmitted { index: i, rule: self.steps[i].rule.clone() }),
        }
    }

    /// One JSON object per line: a header with the endpoints, then the steps.
    pub fn to_json_lines(&self) -> String {
        let header = Header { start: self.start.clone(), end: self.end.clone(), steps: self.steps.len() };
        let mut out = serde_json::to_string(&header).expect("serializable");
        out.push('\n');
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("serializable"));
            out.push('\n');
        }
        out
    }

    /// Parses [`Trace::to_json_lines`] output and replays it.
    pub fn from_json_lines(text: &str) -> Result<Trace, DerivationError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Header = serde_json::from_str(lines.next().ok_or_else(|| DerivationError::Format("empty trace".into()))?)
            .map_err(|e| DerivationError::Format(e.to_string()))?;
        let steps: Vec<Step> = lines
            .map(|l| serde_json::from_str(l).map_err(|e| DerivationError::Format(e.to_string())))
            .collect::<Result<_, _>>()?;
        if steps.len() != header.steps {
            return Err(DerivationError::Format(format!("header announces {} steps, found {}", header.steps, steps.len())));
        }
        let trace = Trace { start: header.start, steps, end: header.end };
        trace.replay()?;
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{delta_closure, derivable};
    use crate::identity::{id, named};
    use crate::word::w;

    #[test]
    fn json_round_trip_and_inverse() {
        let r = delta_closure(&[named::sigma_mu()]);
        let t = derivable(&id("x x y y == x y x y"), &r, 6, 4).unwrap();
        assert_eq!(t.len(), 1);
        let back = Trace::from_json_lines(&t.to_json_lines()).unwrap();
        assert_eq!(back, t);
        let inv = t.inverted();
        assert_eq!(inv.replay().unwrap(), vec![w("xyxy"), w("xxyy")]);
        let m = t.mirrored();
        assert_eq!(m.start, w("yyxx"));
        assert!(m.is_valid());
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let r = delta_closure(&[named::sigma_mu()]);
        let mut t = derivable(&id("x x y y == x y x y"), &r, 6, 4).unwrap();
        t.steps[0].position += 1;
        assert!(t.replay().is_err());
    }
}
