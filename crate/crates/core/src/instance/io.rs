//! Instance file format: versioned, human-readable JSON.

use super::{DemandPattern, Instance, ProblemClass, Resource};
use crate::ids::{ActivityId, LotId, ResourceId, Time};
use crate::network::{Activity, ActivityKind, Network};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

pub const INSTANCE_FORMAT: &str = "flexplan-instance/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag {found:?}, expected {expected:?}")]
    UnsupportedFormat { found: String, expected: String },
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    format: String,
    name: String,
    class: ProblemClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pattern: Option<DemandPattern>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    resource_strength: Option<(i64, i64)>,
    seed: u64,
    horizon: Time,
    lot_count: u32,
    resources: Vec<ResourceRecord>,
    activities: Vec<ActivityRecord>,
    relations: Vec<RelationRecord>,
}

#[derive(Serialize, Deserialize)]
struct ResourceRecord {
    id: u32,
    capacity: i64,
    balanced: bool,
    renewable: bool,
}

#[derive(Serialize, Deserialize)]
struct ActivityRecord {
    id: u32,
    kind: ActivityKind,
    min_duration: Time,
    max_duration: Time,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    demands: Vec<(u32, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    due_date: Option<Time>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lot: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct RelationRecord {
    from: u32,
    groups: Vec<Vec<u32>>,
}

/// Serialize an instance to its canonical textual form. The output is
/// byte-stable: field order, demand order and relation order are all fixed.
pub fn instance_to_string(inst: &Instance) -> String {
    let net = inst.network();
    let file = InstanceFile {
        format: INSTANCE_FORMAT.to_string(),
        name: inst.name.clone(),
        class: inst.class,
        pattern: inst.pattern,
        resource_strength: inst.resource_strength,
        seed: inst.seed,
        horizon: inst.horizon(),
        lot_count: net.lot_count(),
        resources: inst
            .resources()
            .iter()
            .map(|r| ResourceRecord {
                id: r.id.0,
                capacity: r.capacity,
                balanced: r.balanced,
                renewable: r.renewable,
            })
            .collect(),
        activities: net
            .activities()
            .map(|a| ActivityRecord {
                id: a.id.0,
                kind: a.kind,
                min_duration: a.min_duration,
                max_duration: a.max_duration,
                demands: a.demands.iter().map(|(r, q)| (r.0, *q)).collect(),
                due_date: a.due_date,
                lot: a.lot.map(|l| l.0),
            })
            .collect(),
        relations: net
            .relations()
            .iter()
            .filter(|(_, groups)| !groups.is_empty())
            .map(|(from, groups)| RelationRecord {
                from: from.0,
                groups: groups
                    .iter()
                    .map(|g| g.iter().map(|t| t.0).collect())
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("instances serialize");
    s.push('\n');
    s
}

pub fn write_instance(inst: &Instance, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, instance_to_string(inst))?;
    Ok(())
}

pub fn instance_from_str(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.format != INSTANCE_FORMAT {
        return Err(FormatError::UnsupportedFormat {
            found: file.format,
            expected: INSTANCE_FORMAT.to_string(),
        });
    }
    let activities: Vec<Activity> = file
        .activities
        .into_iter()
        .map(|r| Activity {
            id: ActivityId(r.id),
            kind: r.kind,
            min_duration: r.min_duration,
            max_duration: r.max_duration,
            demands: r
                .demands
                .into_iter()
                .map(|(rid, q)| (ResourceId(rid), q))
                .collect::<BTreeMap<_, _>>(),
            due_date: r.due_date,
            lot: r.lot.map(LotId),
        })
        .collect();
    let relations: Vec<(ActivityId, Vec<Vec<ActivityId>>)> = file
        .relations
        .into_iter()
        .map(|r| {
            (
                ActivityId(r.from),
                r.groups
                    .into_iter()
                    .map(|g| g.into_iter().map(ActivityId).collect())
                    .collect(),
            )
        })
        .collect();
    let network = Network::new(activities, relations, file.lot_count);
    let resources = file
        .resources
        .into_iter()
        .map(|r| Resource {
            id: ResourceId(r.id),
            capacity: r.capacity,
            balanced: r.balanced,
            renewable: r.renewable,
        })
        .collect();
    let mut inst = Instance::new(file.name, file.class, network, resources, file.horizon);
    inst.pattern = file.pattern;
    inst.resource_strength = file.resource_strength;
    inst.seed = file.seed;
    Ok(inst)
}

pub fn read_instance(path: &Path) -> Result<Instance, FormatError> {
    instance_from_str(&std::fs::read_to_string(path)?)
}
