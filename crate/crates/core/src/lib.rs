//! Exact combinatorics of fixed point data for circle actions on closed
//! oriented 4-manifolds: invariants, the construction grammar, a realizability
//! decider, a multigraph view and bounded enumeration.

pub mod cli;
pub mod data;
pub mod decider;
pub mod enumeration;
pub mod error;
pub mod invariants;
pub mod multigraph;
pub mod ops4;

pub use data::{FixedPointData, FixedPointDatum, Sign};
pub use decider::{decide, Decision, Obstruction};
pub use error::{Error, Result};
pub use ops4::{ConstructionStep, ConstructionTrace};
