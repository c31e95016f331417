//! The named identities that the derivation procedures and checkers use.

use super::{id, NamedIdentity};

fn named(name: &str, text: &str) -> NamedIdentity {
    NamedIdentity::new(name, id(text))
}

pub fn sigma_1() -> NamedIdentity {
    named("σ1", "x y t1 x t2 y == y x t1 x t2 y")
}

pub fn sigma_mu() -> NamedIdentity {
    named("σμ", "x t1 x y t2 y == x t1 y x t2 y")
}

pub fn sigma_2() -> NamedIdentity {
    named("σ2", "x t1 y t2 x y == x t1 y t2 y x")
}

/// Moves a completed square `xx` one letter to the left past a
/// non-last occurrence.
pub fn square_shift() -> NamedIdentity {
    named("yxxty", "y x x t y == x x y t y")
}

/// Collapses a middle occurrence between two others.
pub fn middle_erase() -> NamedIdentity {
    named("xtxtx", "x t1 x t2 x == x t1 t2 x")
}

/// Duplicates an occurrence that has neighbours of the same variable on
/// both sides.
pub fn duplication() -> NamedIdentity {
    named("dup", "x t1 x t2 x == x t1 x x t2 x")
}

/// Inserts an occurrence of `x` in front of `y` when `y` is followed by `xx`.
pub fn insertion() -> NamedIdentity {
    named("ins", "x t1 y x x t2 y == x t1 x y x x t2 y")
}

/// Mirror image of [`insertion`].
pub fn insertion_dual() -> NamedIdentity {
    named("ins*", "y t1 x x y t2 x == y t1 x x y x t2 x")
}

pub fn j3_sigma() -> Vec<NamedIdentity> {
    vec![
        named("Σ1", "x y x y t1 x t2 y == y x y x t1 x t2 y"),
        named("Σ2", "x t1 y t2 x y x y == x t1 y t2 y x y x"),
    ]
}

pub fn j3_delta() -> Vec<NamedIdentity> {
    vec![
        named("Δ1", "x t1 y t2 x y t3 x t4 y == x t1 y t2 y x t3 x t4 y"),
        named("Δ2", "x t1 y t2 x y t3 y t4 x == x t1 y t2 y x t3 y t4 x"),
    ]
}

/// The finite basis of the Simon congruence of level 3.
pub fn j3_basis() -> Vec<NamedIdentity> {
    let mut basis = vec![duplication(), insertion(), insertion_dual()];
    basis.extend(j3_sigma());
    basis.extend(j3_delta());
    basis
}

pub fn xy_cubed() -> NamedIdentity {
    named("(xy)^3", "(x y)^3 == (y x)^3")
}

/// Identities used to probe hypotheses of the finite-basis criteria for
/// monoids whose identities are closed under the compaction rules.
pub fn abtab_omega() -> Vec<NamedIdentity> {
    vec![
        named("t1xt2xt3x", "t1 x t2 x t3 x == x x x t1 t2 t3"),
        named("x3=x4", "x x x == x x x x"),
        sigma_mu(),
        square_shift(),
    ]
}
