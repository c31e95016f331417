//! Computing with equational theories of finite monoids.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: words over interned variables, blocks, compactness and
//!   scattered subwords;
//! * [`identity`]: identities, structural properties and unstable pairs;
//! * [`monoid`]: finite monoids given by tables, brute-force satisfaction,
//!   bounded isoterm search;
//! * [`derivation`]: rewriting with deletion-closed identity systems,
//!   bounded search and constructive derivation procedures;
//! * [`fb`]: the finite-basis decision procedure for products with the
//!   five-element monoid `A0^1` and checkers for related criteria.

pub mod derivation;
pub mod fb;
pub mod identity;
pub mod monoid;
pub mod word;

pub use identity::{Identity, NamedIdentity};
pub use word::{OccRef, Var, Word};
