use itertools::Itertools;
use serde::Serialize;

use super::check::find_counterexample;
use super::{FiniteMonoid, MonoidError};
use crate::identity::Identity;
use crate::word::{blocks, Var, Word};

/// Outcome of a bounded isoterm search. `widened` records that the
/// candidate alphabet included one variable outside the probed word, which
/// is done for groups since they may satisfy identities changing content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsotermVerdict {
    NotIsoterm { witness: Identity, widened: bool },
    IsotermUpTo { bound: usize, widened: bool },
}

impl IsotermVerdict {
    pub fn is_isoterm(&self) -> bool {
        matches!(self, IsotermVerdict::IsotermUpTo { .. })
    }
}

/// Assignments whose count stays below this get their lhs values cached.
const PRECOMPUTE_LIMIT: usize = 1 << 22;
/// How many recent refuting assignments are tried first on each candidate.
const REFUTER_CACHE: usize = 32;

/// Searches all `v ≠ u` of length at most `bound`, in shortlex order over
/// the content of `u`, for one with `m ⊨ u ≈ v`.
pub fn is_isoterm_bounded(m: &FiniteMonoid, u: &Word, bound: usize) -> Result<IsotermVerdict, MonoidError> {
    if bound < u.len() {
        return Err(MonoidError::BoundTooSmall { bound, len: u.len() });
    }
    let mut alphabet = u.content();
    let widened = m.is_group();
    if widened {
        alphabet.push(Var::fresh("z", &alphabet));
    }
    let k = alphabet.len();
    let n = m.size();
    let u_idx: Vec<usize> = u.letters().iter().map(|x| alphabet.iter().position(|v| v == x).unwrap()).collect();
    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);

    let eval = |w: &[usize], values: &[usize]| w.iter().fold(m.one(), |acc, &i| m.column(values[i])[acc] as usize);
    let decode = |mut a: usize, values: &mut Vec<usize>| {
        for i in (0..k).rev() {
            values[i] = a % n;
            a /= n;
        }
    };
    let u_values: Option<Vec<u32>> = (total <= PRECOMPUTE_LIMIT).then(|| {
        let mut values = vec![0; k];
        (0..total)
            .map(|a| {
                decode(a, &mut values);
                eval(&u_idx, &values) as u32
            })
            .collect()
    });

    let mut refuters: Vec<Vec<usize>> = Vec::new();
    for len in 0..=bound {
        let count = k.checked_pow(len as u32).expect("candidate space fits in memory addressing");
        for code in 0..count {
            let mut v_idx = vec![0; len];
            let mut c = code;
            for slot in v_idx.iter_mut().rev() {
                *slot = c % k.max(1);
                c /= k.max(1);
            }
            if v_idx == u_idx {
                continue;
            }
            // Fast path: assignments that refuted earlier candidates.
            if let Some(pos) = refuters.iter().position(|a| eval(&u_idx, a) != eval(&v_idx, a)) {
                let hit = refuters.remove(pos);
                refuters.insert(0, hit);
                continue;
            }
            let refuted = match &u_values {
                Some(table) => {
                    let mut values = vec![0; k];
                    (0..total).find(|&a| {
                        decode(a, &mut values);
                        eval(&v_idx, &values) != table[a] as usize
                    })
                    .map(|a| {
                        decode(a, &mut values);
                        values
                    })
                }
                None => {
                    let vw: Word = v_idx.iter().map(|&i| alphabet[i]).collect();
                    find_counterexample(m, &Identity::new(u.clone(), vw))
                        .map(|a| alphabet.iter().map(|x| a.get(*x).unwrap_or(m.one())).collect())
                }
            };
            match refuted {
                Some(values) => {
                    refuters.insert(0, values);
                    refuters.truncate(REFUTER_CACHE);
                }
                None => {
                    let witness = Identity::new(u.clone(), v_idx.iter().map(|&i| alphabet[i]).collect());
                    return Ok(IsotermVerdict::NotIsoterm { witness, widened });
                }
            }
        }
    }
    Ok(IsotermVerdict::IsotermUpTo { bound, widened })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BUnstableVerdict {
    pub unstable: bool,
    /// A satisfied block-balanced `u ≈ v` with `u(x,y) ≠ v(x,y)`.
    pub witness: Option<Identity>,
}

/// Distinct permutations of `letters` in lexicographic order of positions
/// in the sorted multiset.
fn multiset_permutations(letters: &[Var]) -> Vec<Vec<Var>> {
    let mut items: Vec<Var> = letters.to_vec();
    items.sort();
    let mut out = vec![items.clone()];
    loop {
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
            return out;
        };
        let j = (i..items.len()).rev().find(|&j| items[i - 1] < items[j]).expect("exists");
        items.swap(i - 1, j);
        items[i..].reverse();
        out.push(items.clone());
    }
}

/// Whether `m` satisfies a block-balanced `u ≈ v` changing the relative
/// order of `x` and `y`. Candidates keep the linear letters of `u` and
/// permute the letters inside each block.
pub fn is_b_unstable(m: &FiniteMonoid, u: &Word, x: Var, y: Var) -> Result<BUnstableVerdict, MonoidError> {
    for z in [x, y] {
        if u.occ(z) < 2 {
            return Err(MonoidError::NamedVariableLinear(z.name().to_string()));
        }
    }
    let none = BUnstableVerdict { unstable: false, witness: None };
    if x == y {
        return Ok(none);
    }
    let keep = [x, y].into_iter().collect();
    let target = u.restrict_to(&keep);
    let decomposition = blocks(u);
    let choices: Vec<Vec<Vec<Var>>> = decomposition
        .segments
        .iter()
        .map(|s| match s {
            crate::word::Segment::Separator { occurrence, .. } => vec![vec![occurrence.var]],
            crate::word::Segment::Block { letters, .. } => multiset_permutations(letters.letters()),
        })
        .collect();
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let v: Word = pick.into_iter().flatten().copied().collect();
        if v.restrict_to(&keep) == target {
            continue;
        }
        let candidate = Identity::new(u.clone(), v);
        if find_counterexample(m, &candidate).is_none() {
            return Ok(BUnstableVerdict { unstable: true, witness: Some(candidate) });
        }
    }
    Ok(none)
}
