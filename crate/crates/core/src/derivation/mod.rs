//! Rewriting with identity sets closed under deleting variables: the
//! closure itself, single-step rewriting, bounded proof search, the
//! measure-decreasing drivers and the constructive derivation procedures.

mod axil;
mod blbal;
mod compact;
mod driver;
mod j3;
mod matcher;
mod search;
mod steps;
mod system;
mod trace;

use thiserror::Error;

pub use axil::{axil_transform, dual_axil_transform, AxilDirection};
pub use blbal::{
    derive_blbal, derive_block_balanced, derive_from_two_variable, derive_p12_block_balanced, swap_step,
    LastPairTypes,
};
pub use compact::compact_normal_form;
pub use driver::{measure_decreasing_derive, typed_derive, Derivation, Measure, StepResult, TypeAssignment};
pub use j3::{derive_j3, j3_system};
pub use search::{certify, derivable, find_step};
pub use steps::instance_step;
pub use system::{delta_closure, restrict_rule, rewrite_neighbors, RewriteSystem};
pub use trace::{mirror_name, Direction, Step, Trace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("identity `{0}` is not block-balanced")]
    NotBlockBalanced(String),
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error("word `{0}` is not 2-limited")]
    NotTwoLimited(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("identity `{0}` does not hold in J3")]
    NotInJ3(String),
    #[error("step rule failed to decrease the measure: {before} -> {after} at `{identity}`")]
    StepRuleFailedToDecrease { identity: String, before: String, after: String },
    #[error("step `{rule}` does not match `{word}` at {position} (expected `{expected}`)")]
    ReplayMismatch { rule: String, position: usize, word: String, expected: String },
    #[error("malformed step: {0}")]
    BadStep(String),
    #[error("step {index} uses `{rule}`, which is not in the rewrite system")]
    StepNotAdmitted { index: usize, rule: String },
    #[error("derivation stalled: {0}")]
    Stalled(String),
    #[error("invalid trace file: {0}")]
    Format(String),
}
