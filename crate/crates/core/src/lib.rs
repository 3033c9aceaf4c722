//! Exact ℓ-distance-balance analysis for generalized Petersen graphs.
//!
//! [`petersen::distance_profile`] gives every pairwise distance of GP(n,k)
//! from two BFS runs; [`balance`] builds per-ℓ verdicts on top of it, and
//! [`formulas`] checks the closed-form tables for k = 3, 4 against that oracle.

pub mod balance;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod petersen;
pub mod report;

pub use balance::{full_report, BalanceReport, EllVerdict, ThresholdResult, Witness};
pub use error::{Error, Result};
pub use graph::{Graph, Verdict, WCount};
pub use petersen::{build_gp, distance_profile, DistanceProfile, GpParams, GpVertex, VertexKind};
