use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{is_balanced, is_block_balanced, Identity, IdentityError};
use crate::word::{OccRef, Word};

/// Two occurrences whose relative order differs between the two sides of a
/// balanced identity. `left` precedes `right` in the lhs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnstablePair {
    pub left: OccRef,
    pub right: OccRef,
    /// Positions in the lhs.
    pub left_pos: usize,
    pub right_pos: usize,
    /// Adjacent in the lhs.
    pub critical: bool,
}

fn require_balanced(id: &Identity) -> Result<(), IdentityError> {
    if is_balanced(id) {
        Ok(())
    } else {
        Err(IdentityError::NotBalanced(id.to_string()))
    }
}

/// All unstable pairs, ordered by lhs position of the left element and then
/// of the right element.
pub fn unstable_pairs(id: &Identity) -> Result<Vec<UnstablePair>, IdentityError> {
    require_balanced(id)?;
    let occ_u = id.lhs.occurrences();
    let pos_v = id.rhs.positions();
    let in_v: Vec<usize> = occ_u.iter().map(|o| pos_v[o]).collect();
    let mut out = Vec::new();
    for p in 0..occ_u.len() {
        for q in p + 1..occ_u.len() {
            if in_v[q] < in_v[p] {
                out.push(UnstablePair {
                    left: occ_u[p],
                    right: occ_u[q],
                    left_pos: p,
                    right_pos: q,
                    critical: q == p + 1,
                });
            }
        }
    }
    Ok(out)
}

/// The leftmost unstable pair that is adjacent in the lhs; `None` exactly
/// when the identity is trivial.
pub fn find_critical_pair(id: &Identity) -> Result<Option<UnstablePair>, IdentityError> {
    require_balanced(id)?;
    let occ_u = id.lhs.occurrences();
    let pos_v = id.rhs.positions();
    Ok((0..occ_u.len().saturating_sub(1)).find_map(|p| {
        (pos_v[&occ_u[p + 1]] < pos_v[&occ_u[p]]).then(|| UnstablePair {
            left: occ_u[p],
            right: occ_u[p + 1],
            left_pos: p,
            right_pos: p + 1,
            critical: true,
        })
    }))
}

/// A subset of `{σ1, σμ, σ2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SigmaSet {
    pub sigma_1: bool,
    pub sigma_mu: bool,
    pub sigma_2: bool,
}

impl SigmaSet {
    pub const FULL: SigmaSet = SigmaSet { sigma_1: true, sigma_mu: true, sigma_2: true };
    pub const EMPTY: SigmaSet = SigmaSet { sigma_1: false, sigma_mu: false, sigma_2: false };

    pub fn new(sigma_1: bool, sigma_mu: bool, sigma_2: bool) -> SigmaSet {
        SigmaSet { sigma_1, sigma_mu, sigma_2 }
    }

    /// All eight subsets.
    pub fn all() -> Vec<SigmaSet> {
        (0..8u8).map(|b| SigmaSet::new(b & 1 != 0, b & 2 != 0, b & 4 != 0)).collect()
    }

    /// The named identities in this subset.
    pub fn identities(&self) -> Vec<super::NamedIdentity> {
        use super::named;
        let mut out = Vec::new();
        if self.sigma_1 {
            out.push(named::sigma_1());
        }
        if self.sigma_mu {
            out.push(named::sigma_mu());
        }
        if self.sigma_2 {
            out.push(named::sigma_2());
        }
        out
    }
}

impl fmt::Display for SigmaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.sigma_1, "σ1"), (self.sigma_mu, "σμ"), (self.sigma_2, "σ2")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, n)| *n)
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairType {
    Good,
    Bad,
}

/// Whether an adjacent swap of two occurrences with the given first/last
/// status is an instance of some member of `sigma`.
///
/// `σ1` swaps two occurrences that are both followed by later occurrences of
/// their variables, `σ2` two that are both preceded by earlier ones, and `σμ`
/// a non-first occurrence with a non-last one. The empty set swaps nothing.
pub fn pair_is_good(c: (bool, bool), d: (bool, bool), sigma: SigmaSet) -> bool {
    let ((c_first, c_last), (d_first, d_last)) = (c, d);
    (sigma.sigma_1 && !c_last && !d_last)
        || (sigma.sigma_2 && !c_first && !d_first)
        || (sigma.sigma_mu && ((!c_first && !d_last) || (!c_last && !d_first)))
}

/// Good/bad classification of a pair of occurrences of distinct non-linear
/// variables of `u`.
pub fn sigma_type(u: &Word, c: OccRef, d: OccRef, sigma: SigmaSet) -> Result<PairType, IdentityError> {
    let invalid = |why: &str| Err(IdentityError::InvalidPair(format!("{{{c}, {d}}} in `{u}`: {why}")));
    if c.var == d.var {
        return invalid("occurrences of the same variable");
    }
    let (Some(pc), Some(pd)) = (u.position_of(c), u.position_of(d)) else {
        return invalid("occurrence not present");
    };
    if u.occ(c.var) < 2 || u.occ(d.var) < 2 {
        return invalid("linear variable");
    }
    let flags = u.first_last_flags();
    Ok(if pair_is_good(flags[pc], flags[pd], sigma) { PairType::Good } else { PairType::Bad })
}

/// Block-balanced, and every `sigma`-bad pair of occurrences of distinct
/// non-linear variables is stable.
pub fn blbal1_condition(id: &Identity, sigma: SigmaSet) -> bool {
    if !is_block_balanced(id) {
        return false;
    }
    let flags = id.lhs.first_last_flags();
    let counts: HashMap<_, _> = id.lhs.counts();
    unstable_pairs(id).expect("block-balanced implies balanced").iter().all(|p| {
        p.left.var == p.right.var
            || counts[&p.left.var] < 2
            || counts[&p.right.var] < 2
            || pair_is_good(flags[p.left_pos], flags[p.right_pos], sigma)
    })
}
