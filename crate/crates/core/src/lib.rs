//! Exact optimization toolkit for resource-constrained multi-project
//! scheduling with alternative activity chains and time flexibility.
//!
//! The library is organized around four subsystems:
//!
//! - [`network`]: the activity-on-node data model with AND/OR/OUT
//!   flexibility types, route enumeration, and the meta-node
//!   transformation that prepares a network for interval-based solving.
//! - [`instance`]: deterministic benchmark instance generation
//!   (single- and multi-project, two demand patterns, four resource
//!   strengths) and instance file I/O.
//! - [`solver`]: an exact branch-and-bound search over optional interval
//!   variables with constraint propagation, supporting three objectives
//!   (makespan, time balance, resource balance) and three due-date
//!   scenarios.
//! - [`oracle`]: ground truth — a time-indexed schedule validator and an
//!   exhaustive solver for desk-scale instances, independent of the
//!   branch-and-bound code path.

pub mod ids;
pub mod instance;
pub mod network;
pub mod oracle;
pub mod schedule;
pub mod solver;

pub use ids::{ActivityId, LotId, ResourceId, Time};
pub use instance::{GeneratorParams, Instance, ProblemClass, Resource};
pub use network::{Activity, ActivityKind, CpNetwork, Network};
pub use schedule::{Schedule, ScheduleEntry, ScheduleMetrics};
pub use solver::{
    Objective, Scenario, SolveResult, SolverConfig, SolverStatus,
};
