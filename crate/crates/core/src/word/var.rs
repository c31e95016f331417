use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An interned variable symbol.
///
/// Symbols are process-global: two `Var`s compare equal exactly when their
/// names are equal. The derived ordering follows interning order and is only
/// meant for use as a set/map key; anything that needs a reproducible order
/// should order by position in a word or by [`Var::name`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| RwLock::new(Interner::default()))
}

impl Var {
    /// Interns `name` and returns its symbol. The caller is responsible for
    /// passing a valid identifier; see [`is_identifier`].
    pub fn new(name: &str) -> Var {
        if let Some(&id) = interner().read().expect("interner poisoned").ids.get(name) {
            return Var(id);
        }
        let mut table = interner().write().expect("interner poisoned");
        if let Some(&id) = table.ids.get(name) {
            return Var(id);
        }
        let id = u32::try_from(table.names.len()).expect("too many variables");
        let shared: Arc<str> = Arc::from(name);
        table.names.push(shared.clone());
        table.ids.insert(shared, id);
        Var(id)
    }

    pub fn name(self) -> Arc<str> {
        interner().read().expect("interner poisoned").names[self.0 as usize].clone()
    }

    /// The `i`-th symbol of the fixed enumeration used for canonical renaming.
    pub fn canonical(i: usize) -> Var {
        const NAMES: [&str; 10] = ["x", "y", "z", "p", "q", "r", "s", "u", "v", "w"];
        match NAMES.get(i) {
            Some(name) => Var::new(name),
            None => Var::new(&format!("x{i}")),
        }
    }

    /// A symbol guaranteed not to occur in `avoid`, built from `stem` plus digits.
    pub fn fresh(stem: &str, avoid: &[Var]) -> Var {
        (0..)
            .map(|i| Var::new(&format!("{stem}{i}")))
            .find(|v| !avoid.contains(v))
            .expect("unbounded search")
    }
}

/// Identifier grammar for variable names: a letter or underscore followed by
/// letters, digits or underscores.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        if !is_identifier(&name) {
            return Err(serde::de::Error::custom(format!("invalid variable name `{name}`")));
        }
        Ok(Var::new(&name))
    }
}
