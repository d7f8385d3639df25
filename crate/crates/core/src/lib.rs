//! Finite permutation groups at desk scale: fixed point ratios of
//! p-elements, Sylow numbers, minimal coverings of the p-elements by proper
//! subgroups, and noncommuting-graph invariants.
//!
//! Points are 1-based and products apply the left factor first. All ratios
//! are exact rationals.

pub mod actions;
pub mod arith;
pub mod bits;
pub mod catalog;
pub mod config;
pub mod covering;
pub mod error;
pub mod expr;
pub mod field;
pub mod graphs;
pub mod group;
pub mod perm;
pub mod ratio;
pub mod report;
pub mod sylow;

pub use config::Caps;
pub use error::{Error, Result};
pub use group::{PermGroup, Quotient, SubgroupLattice};
pub use perm::Permutation;
pub use ratio::ExactRatio;
pub use covering::{Cover, CoverNumber};
pub use expr::GroupExpr;
pub use graphs::Graph;
pub use report::{run_check, CheckId, CheckOptions, VerificationReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/fixed-points.md")]
    mod fixed_points {}
    #[doc = include_str!("../../../book/src/sylow.md")]
    mod sylow {}
    #[doc = include_str!("../../../book/src/covering.md")]
    mod covering {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
}
