use serde::Serialize;

use super::{OccRef, Word};

/// One piece of a word cut at separator positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    Separator { position: usize, occurrence: OccRef },
    Block { start: usize, letters: Word },
}

/// A word split into separators and the maximal nonempty runs between them.
///
/// [`blocks`] cuts at linear letters; [`blocks12`] cuts at every first or
/// last occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub segments: Vec<Segment>,
}

/// Splits `u` at its linear letters. A word made only of linear letters has
/// no blocks.
pub fn blocks(u: &Word) -> Decomposition {
    let counts = u.counts();
    split(u, |p| counts[&u.letters()[p]] == 1)
}

/// Splits `u` at every first or last occurrence of a variable.
pub fn blocks12(u: &Word) -> Decomposition {
    let flags = u.first_last_flags();
    split(u, |p| flags[p].0 || flags[p].1)
}

fn split(u: &Word, is_separator: impl Fn(usize) -> bool) -> Decomposition {
    let occurrences = u.occurrences();
    let mut segments = Vec::new();
    let mut run_start = None;
    for (p, &occurrence) in occurrences.iter().enumerate() {
        if is_separator(p) {
            if let Some(start) = run_start.take() {
                segments.push(Segment::Block { start, letters: u.factor(start, p) });
            }
            segments.push(Segment::Separator { position: p, occurrence });
        } else if run_start.is_none() {
            run_start = Some(p);
        }
    }
    if let Some(start) = run_start {
        segments.push(Segment::Block { start, letters: u.factor(start, u.len()) });
    }
    Decomposition { segments }
}

impl Decomposition {
    /// Blocks with their start positions, in order.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Word)> {
        self.segments.iter().filter_map(|s| match s {
            Segment::Block { start, letters } => Some((*start, letters)),
            Segment::Separator { .. } => None,
        })
    }

    pub fn separators(&self) -> impl Iterator<Item = (usize, OccRef)> + '_ {
        self.segments.iter().filter_map(|s| match s {
            Segment::Separator { position, occurrence } => Some((*position, *occurrence)),
            Segment::Block { .. } => None,
        })
    }

    /// Concatenation of all pieces; equals the decomposed word.
    pub fn concat(&self) -> Word {
        self.segments
            .iter()
            .flat_map(|s| match s {
                Segment::Separator { occurrence, .. } => vec![occurrence.var],
                Segment::Block { letters, .. } => letters.letters().to_vec(),
            })
            .collect()
    }

    /// The blocks lying between consecutive separators, including empty ones:
    /// entry `i` holds the letters after the `i`-th separator (entry 0 holds
    /// the letters before the first separator).
    pub fn gaps(&self) -> Vec<Word> {
        let mut gaps = vec![Word::empty()];
        for s in &self.segments {
            match s {
                Segment::Separator { .. } => gaps.push(Word::empty()),
                Segment::Block { letters, .. } => *gaps.last_mut().expect("nonempty") = letters.clone(),
            }
        }
        gaps
    }

    /// Index (into [`Decomposition::blocks`]) of the block holding `pos`.
    pub fn block_index_of(&self, pos: usize) -> Option<usize> {
        self.blocks().position(|(start, letters)| start <= pos && pos < start + letters.len())
    }
}
