//! Benchmark instances: resources, generation parameters, and file I/O.

mod generate;
mod io;
pub mod samples;

pub use generate::{
    compute_capacities, generate_ac_instance, generate_actf_instance, generate_case_instance,
    generate_due_dates, generate_max_durations, parallel_lot_estimate, AcMode, CapacityError,
};
pub use io::{read_instance, write_instance, FormatError, INSTANCE_FORMAT};

use crate::ids::{ActivityId, LotId, ResourceId, Time};
use crate::network::{enumerate_routes, Network, RouteError};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Problem class an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemClass {
    /// Single-project, alternative chains, fixed durations, idle allowed.
    RcpspAc,
    /// Multi-project variant of the above.
    RcmpspAc,
    /// Multi-project, alternative chains, flexible durations, no idle
    /// within a lot, due dates per lot.
    RcmpspActf,
}

impl ProblemClass {
    pub fn is_multi_project(self) -> bool {
        !matches!(self, ProblemClass::RcpspAc)
    }

    pub fn has_time_flexibility(self) -> bool {
        matches!(self, ProblemClass::RcmpspActf)
    }
}

/// Demand pattern of generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemandPattern {
    /// Real-world: every activity demands exactly one resource, quantity 1.
    Rw,
    /// Random: every activity demands every resource, quantity in [1, 10).
    Rand,
}

/// A renewable or non-renewable resource.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resource {
    pub id: ResourceId,
    pub capacity: i64,
    /// Member of the balancing set R*.
    pub balanced: bool,
    pub renewable: bool,
}

impl Resource {
    pub fn renewable(id: u32, capacity: i64) -> Self {
        Resource {
            id: ResourceId(id),
            capacity,
            balanced: false,
            renewable: true,
        }
    }

    pub fn balanced(mut self) -> Self {
        self.balanced = true;
        self
    }

    pub fn non_renewable(mut self) -> Self {
        self.renewable = false;
        self
    }
}

/// A complete problem instance with generator provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub class: ProblemClass,
    pub pattern: Option<DemandPattern>,
    /// Resource strength used at generation time (numerator, denominator).
    pub resource_strength: Option<(i64, i64)>,
    pub seed: u64,
    horizon: Time,
    resources: Vec<Resource>,
    network: Network,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("network is invalid: {0}")]
    InvalidNetwork(String),
    #[error("activity {activity} demands unknown resource {resource}")]
    UnknownResource {
        activity: ActivityId,
        resource: ResourceId,
    },
    #[error("due date {due} of activity {activity} exceeds horizon {horizon}")]
    DueBeyondHorizon {
        activity: ActivityId,
        due: Time,
        horizon: Time,
    },
    #[error("horizon must be positive, got {0}")]
    NonPositiveHorizon(Time),
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        class: ProblemClass,
        network: Network,
        resources: Vec<Resource>,
        horizon: Time,
    ) -> Self {
        Instance {
            name: name.into(),
            class,
            pattern: None,
            resource_strength: None,
            seed: 0,
            horizon,
            resources,
            network,
        }
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn resources(&self) -> &[Resource] {
        &self.resources
    }

    pub fn resource(&self, id: ResourceId) -> Option<&Resource> {
        self.resources.iter().find(|r| r.id == id)
    }

    pub fn horizon(&self) -> Time {
        self.horizon
    }

    /// The balancing set R*.
    pub fn balanced_resources(&self) -> Vec<ResourceId> {
        self.resources
            .iter()
            .filter(|r| r.balanced)
            .map(|r| r.id)
            .collect()
    }

    /// Instance-level consistency: valid network, known resources,
    /// due dates within the horizon.
    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.horizon <= 0 {
            return Err(InstanceError::NonPositiveHorizon(self.horizon));
        }
        let diags = crate::network::validate_network(&self.network);
        if let Some(d) = diags.first() {
            return Err(InstanceError::InvalidNetwork(d.to_string()));
        }
        for a in self.network.activities() {
            for &rid in a.demands.keys() {
                if self.resource(rid).is_none() {
                    return Err(InstanceError::UnknownResource {
                        activity: a.id,
                        resource: rid,
                    });
                }
            }
            if let Some(due) = a.due_date {
                if due > self.horizon {
                    return Err(InstanceError::DueBeyondHorizon {
                        activity: a.id,
                        due,
                        horizon: self.horizon,
                    });
                }
            }
        }
        Ok(())
    }

    /// Count of non-dummy, non-meta activities.
    pub fn real_activity_count(&self) -> usize {
        self.network
            .activities()
            .filter(|a| !a.kind.is_dummy() && !a.kind.is_meta())
            .count()
    }
}

/// Parameters steering instance generation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub lot_count: u32,
    pub pattern: DemandPattern,
    /// Resource strength as an exact rational (numerator, denominator) in [0, 1].
    pub resource_strength: (i64, i64),
    pub seed: u64,
    /// Inclusive slack range for maximum durations.
    pub slack_range: (Time, Time),
    /// Half-open range `[lo, hi)` for minimum durations.
    pub min_duration_range: (Time, Time),
    /// Half-open range `[lo, hi)` for demands of the random pattern.
    pub demand_range: (i64, i64),
    /// Route templates to sample from; indices into the built-in pool.
    pub route_pool: Vec<Vec<ActivityType>>,
    /// Number of alternative routes per lot is drawn from this inclusive range.
    pub routes_per_lot: (u32, u32),
    /// Optional release stagger: lot l is released at `l * stagger`.
    pub release_stagger: Time,
}

impl GeneratorParams {
    pub fn new(lot_count: u32, pattern: DemandPattern, rs: (i64, i64), seed: u64) -> Self {
        GeneratorParams {
            lot_count,
            pattern,
            resource_strength: rs,
            seed,
            slack_range: (10, 20),
            min_duration_range: (1, 5),
            demand_range: (1, 10),
            route_pool: default_route_pool(),
            routes_per_lot: (1, 3),
            release_stagger: 0,
        }
    }

    pub fn resource_strength_ratio(&self) -> Rational64 {
        Rational64::new(self.resource_strength.0, self.resource_strength.1)
    }
}

/// Activity palette of the multi-project instances. Production and
/// relocation have fixed durations, all other types are flexible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivityType {
    Production,
    Cooling,
    Processing,
    Relocation,
    Storaging,
    VehicleRelocation,
    Delivery,
}

impl ActivityType {
    pub fn is_fixed_duration(self) -> bool {
        matches!(self, ActivityType::Production | ActivityType::Relocation)
    }

    pub fn code(self) -> u32 {
        match self {
            ActivityType::Production => 0,
            ActivityType::Cooling => 1,
            ActivityType::Processing => 2,
            ActivityType::Relocation => 3,
            ActivityType::Storaging => 4,
            ActivityType::VehicleRelocation => 5,
            ActivityType::Delivery => 6,
        }
    }
}

/// The built-in library of route shapes (middle activities between the
/// production start and the delivery).
pub fn default_route_pool() -> Vec<Vec<ActivityType>> {
    use ActivityType::*;
    vec![
        vec![Cooling, Storaging, Processing, Storaging, VehicleRelocation, Storaging],
        vec![Processing, Storaging, Relocation, Cooling, Storaging, VehicleRelocation, Storaging],
        vec![Cooling, Relocation, Storaging, Processing, Storaging, VehicleRelocation, Storaging],
        vec![Storaging, Processing, Storaging, Relocation, Processing, Storaging, VehicleRelocation, Storaging],
        vec![Cooling, Storaging, Relocation, Processing, Storaging, Cooling, Storaging, VehicleRelocation],
        vec![Processing, Cooling, Storaging, Relocation, Storaging, Processing, VehicleRelocation, Storaging],
    ]
}

/// Resource factor: the average share of resources demanded per non-dummy
/// activity. 1.0 when every activity demands every resource, 1/|R| when
/// every activity demands exactly one.
pub fn resource_factor(inst: &Instance) -> Rational64 {
    let acts: Vec<_> = inst
        .network()
        .activities()
        .filter(|a| !a.kind.is_dummy() && !a.kind.is_meta())
        .collect();
    let n_res = inst.resources().len() as i64;
    let n_act = acts.len() as i64;
    if n_res == 0 || n_act == 0 {
        return Rational64::new(0, 1);
    }
    let used: i64 = acts
        .iter()
        .map(|a| a.demands.values().filter(|&&q| q > 0).count() as i64)
        .sum();
    Rational64::new(used, n_act * n_res)
}

/// Completion time of `lot` in an earliest schedule: the minimum over the
/// lot's routes of the sum of minimum durations, resource constraints
/// ignored.
pub fn earliest_completion(net: &Network, lot: LotId) -> Result<Time, RouteError> {
    let routes = enumerate_routes(net, lot)?;
    Ok(routes
        .iter()
        .map(|chain| {
            chain
                .iter()
                .filter_map(|id| net.activity(*id))
                .map(|a| a.min_duration)
                .sum::<Time>()
        })
        .min()
        .unwrap_or(0))
}

/// Demand table keyed by (activity, resource), used by capacity computation.
pub type DemandTable = BTreeMap<ActivityId, BTreeMap<ResourceId, i64>>;

#[cfg(test)]
mod tests;
