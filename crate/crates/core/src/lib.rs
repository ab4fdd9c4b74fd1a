//! Exact dual partitions of finite abelian group products.
//!
//! The crate computes left and right dual partitions by exact character sums
//! over cyclotomic integers, decides reflexivity of partitions induced by
//! weighted poset metrics and combinatorial (covering) metrics, evaluates the
//! Krawtchouk-polynomial criteria for the uniform covering `P(k, Ω)`, and
//! checks MacWilliams identities and the MacWilliams extension property over
//! prime fields.
//!
//! Module map:
//!
//! * [`exactarith`] cyclotomic integers, sparse rational polynomials, binomial
//!   factor matching.
//! * [`groups`] products of cyclic groups, supports, the standard pairing.
//! * [`posets`] ideals, levels, automorphisms, the unique decomposition property.
//! * [`metrics`] weighted poset weights and covering weights.
//! * [`partitions`] induced partitions, dual partitions, reflexivity and the
//!   equivalence checkers.
//! * [`krawtchouk`] exact Krawtchouk polynomials, root isolation, verdicts.
//! * [`macwilliams`] linear codes over prime fields, `inv`/`orb`, MEP witnesses.

pub mod config;
pub mod error;
pub mod exactarith;
pub mod groups;
pub mod krawtchouk;
pub mod macwilliams;
pub mod metrics;
pub mod partitions;
pub mod posets;
pub mod subset;

pub use config::Budget;
pub use error::{Error, Result};
pub use exactarith::{CycInt, Degree, SparsePoly};
pub use groups::{GroupElement, GroupProduct};
pub use metrics::{Covering, CoveringMetric, WeightFunction};
pub use partitions::{ClassLabel, Partition};
pub use posets::Poset;
pub use subset::Subset;
