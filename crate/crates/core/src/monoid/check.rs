use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::FiniteMonoid;
use crate::identity::Identity;
use crate::word::{Var, Word};

/// Values assigned to variables, in the order the variables were enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub values: Vec<(Var, usize)>,
}

impl Assignment {
    pub fn get(&self, x: Var) -> Option<usize> {
        self.values.iter().find(|(v, _)| *v == x).map(|(_, e)| *e)
    }

    /// Renders `x ↦ label` pairs.
    pub fn describe(&self, m: &FiniteMonoid) -> BTreeMap<String, String> {
        self.values.iter().map(|(v, e)| (v.name().to_string(), m.label(*e).to_string())).collect()
    }
}

/// The value of `word` under `assign`; variables without a value are sent to
/// the identity element.
pub fn evaluate(m: &FiniteMonoid, word: &Word, assign: &HashMap<Var, usize>) -> usize {
    word.letters()
        .iter()
        .fold(m.one(), |acc, x| m.mul(acc, assign.get(x).copied().unwrap_or(m.one())))
}

/// Mixed-radix enumeration over `k` variables: the first ranges over
/// `first` (orbit representatives), the rest over all elements, with the
/// last variable varying fastest.
pub(crate) struct Odometer {
    digits: Vec<usize>,
    first: Vec<usize>,
    size: usize,
    started: bool,
}

impl Odometer {
    pub(crate) fn new(k: usize, first: Vec<usize>, size: usize) -> Odometer {
        Odometer { digits: vec![0; k], first, size, started: false }
    }

    /// Current values: position 0 is an index into `first`.
    pub(crate) fn value(&self, i: usize) -> usize {
        if i == 0 {
            self.first[self.digits[0]]
        } else {
            self.digits[i]
        }
    }

    /// Advances; returns the lowest position whose value changed, or `None`
    /// once exhausted.
    pub(crate) fn advance(&mut self) -> Option<usize> {
        let k = self.digits.len();
        if !self.started {
            self.started = true;
            return (k > 0 && !self.first.is_empty()).then_some(0);
        }
        for i in (0..k).rev() {
            let radix = if i == 0 { self.first.len() } else { self.size };
            self.digits[i] += 1;
            if self.digits[i] < radix {
                return Some(i);
            }
            self.digits[i] = 0;
        }
        None
    }
}

fn compile(word: &Word, vars: &[Var]) -> Vec<usize> {
    word.letters().iter().map(|x| vars.iter().position(|v| v == x).expect("variable in content")).collect()
}

/// The first assignment (in enumeration order) under which the two sides of
/// `id` differ. Registered symmetries restrict the first variable to orbit
/// representatives, which loses no counterexample.
pub fn find_counterexample(m: &FiniteMonoid, id: &Identity) -> Option<Assignment> {
    if id.is_trivial() {
        return None;
    }
    let vars = id.content();
    let (lhs, rhs) = (compile(&id.lhs, &vars), compile(&id.rhs, &vars));
    let mut odo = Odometer::new(vars.len(), m.orbit_representatives(), m.size());
    let mut values = vec![m.one(); vars.len()];
    if vars.is_empty() {
        return None;
    }
    while let Some(changed) = odo.advance() {
        for (i, v) in values.iter_mut().enumerate().skip(changed) {
            *v = odo.value(i);
        }
        let eval = |w: &[usize]| w.iter().fold(m.one(), |acc, &i| m.column(values[i])[acc] as usize);
        if eval(&lhs) != eval(&rhs) {
            return Some(Assignment { values: vars.iter().copied().zip(values.iter().copied()).collect() });
        }
    }
    None
}

pub fn satisfies(m: &FiniteMonoid, id: &Identity) -> bool {
    find_counterexample(m, id).is_none()
}

/// The index of the first identity `m` fails, with a counterexample.
pub fn satisfies_all<'a>(
    m: &FiniteMonoid,
    ids: impl IntoIterator<Item = &'a Identity>,
) -> Result<(), (usize, Assignment)> {
    for (i, id) in ids.into_iter().enumerate() {
        if let Some(a) = find_counterexample(m, id) {
            return Err((i, a));
        }
    }
    Ok(())
}

/// Partitions `words` by the equivalence "`m` satisfies `u ≈ v`".
///
/// Returns a class number per word; classes are numbered in order of their
/// first member. All words are evaluated together on a shared prefix trie and
/// classes are split lazily, so each assignment costs one pass over the trie.
pub fn equational_classes(m: &FiniteMonoid, words: &[Word]) -> Vec<usize> {
    let mut vars: Vec<Var> = Vec::new();
    for w in words {
        for &x in w.letters() {
            if !vars.contains(&x) {
                vars.push(x);
            }
        }
    }
    // Trie node 0 is the empty word; children are created after parents.
    let mut parent = vec![0usize];
    let mut letter = vec![0usize];
    let mut children: HashMap<(usize, usize), usize> = HashMap::new();
    let node_of: Vec<usize> = words
        .iter()
        .map(|w| {
            w.letters().iter().fold(0, |node, x| {
                let l = vars.iter().position(|v| v == x).expect("collected");
                *children.entry((node, l)).or_insert_with(|| {
                    parent.push(node);
                    letter.push(l);
                    parent.len() - 1
                })
            })
        })
        .collect();

    let mut classes: Vec<Vec<usize>> = vec![(0..words.len()).collect()];
    if vars.is_empty() || words.len() < 2 {
        return vec![0; words.len()];
    }
    let mut value = vec![m.one() as u32; parent.len()];
    let mut odo = Odometer::new(vars.len(), m.orbit_representatives(), m.size());
    let mut assign = vec![m.one(); vars.len()];
    while let Some(changed) = odo.advance() {
        for (i, a) in assign.iter_mut().enumerate().skip(changed) {
            *a = odo.value(i);
        }
        let columns: Vec<&[u32]> = assign.iter().map(|&a| m.column(a)).collect();
        for node in 1..parent.len() {
            value[node] = columns[letter[node]][value[parent[node]] as usize];
        }
        let mut split_off = Vec::new();
        for class in classes.iter_mut().filter(|c| c.len() > 1) {
            let v0 = value[node_of[class[0]]];
            if class.iter().all(|&i| value[node_of[i]] == v0) {
                continue;
            }
            let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
            for &i in class.iter() {
                let v = value[node_of[i]];
                match groups.iter_mut().find(|(gv, _)| *gv == v) {
                    Some((_, g)) => g.push(i),
                    None => groups.push((v, vec![i])),
                }
            }
            let mut groups = groups.into_iter().map(|(_, g)| g);
            *class = groups.next().expect("nonempty class");
            split_off.extend(groups);
        }
        classes.extend(split_off);
        if classes.len() == words.len() {
            break;
        }
    }
    classes.sort_by_key(|c| c[0]);
    let mut out = vec![0; words.len()];
    for (k, class) in classes.iter().enumerate() {
        for &i in class {
            out[i] = k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{id, named};
    use crate::monoid::{build_a01, build_reflexive_relations, build_sw};
    use crate::word::w;

    #[test]
    fn satisfaction_examples() {
        let a01 = build_a01();
        assert!(satisfies(&a01, &named::middle_erase().identity));
        assert!(satisfies(&a01, &named::sigma_1().identity));
        assert!(!satisfies(&a01, &id("xy == yx")));
        assert!(satisfies(&a01, &id("x t y == x t y")));
        let sab = build_sw(&[w("ab")]).unwrap();
        assert!(satisfies(&sab, &id("x x t == t x x")));
        assert!(satisfies(&sab, &id("x x t == x t x")));
        let dif = build_sw(&[w("a a t1 a a b b t2 b")]).unwrap();
        assert!(satisfies(&dif, &id("x^3 y^2 == y^2 x^3")));
    }

    #[test]
    fn counterexample_is_real() {
        let m = build_a01();
        let i = id("x y == y x");
        let a = find_counterexample(&m, &i).unwrap();
        let map: HashMap<Var, usize> = a.values.iter().copied().collect();
        assert_ne!(evaluate(&m, &i.lhs, &map), evaluate(&m, &i.rhs, &map));
    }

    #[test]
    fn classes_match_pairwise_checks() {
        let s3 = build_reflexive_relations(3).unwrap();
        let words: Vec<Word> = ["xy", "yx", "xyx", "xxy", "xyy", "yxy", "xyxy", "yxyx", "x", "xx"]
            .iter()
            .map(|s| w(s))
            .collect();
        let classes = equational_classes(&s3, &words);
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                let same = satisfies(&s3, &Identity::new(u.clone(), v.clone()));
                assert_eq!(classes[i] == classes[j], same, "{u} vs {v}");
            }
        }
    }
}
