//! Small identifier newtypes shared across the crate.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Discrete time, in integer time units (minutes in the industry case).
pub type Time = i64;

/// Identifier of an activity (node) in an activity-on-node network.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ActivityId(pub u32);

/// Identifier of a renewable or non-renewable resource.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ResourceId(pub u32);

/// Identifier of a lot (project / customer order).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct LotId(pub u32);

impl fmt::Display for ActivityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for LotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ActivityId {
    fn from(v: u32) -> Self {
        ActivityId(v)
    }
}

impl From<u32> for ResourceId {
    fn from(v: u32) -> Self {
        ResourceId(v)
    }
}

impl From<u32> for LotId {
    fn from(v: u32) -> Self {
        LotId(v)
    }
}
