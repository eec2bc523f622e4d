//! Schedules and their derived metrics.

use crate::ids::{ActivityId, ResourceId, Time};
use crate::instance::Instance;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Raw decisions for one activity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub present: bool,
    pub start: Time,
    pub end: Time,
}

impl ScheduleEntry {
    pub fn absent() -> Self {
        ScheduleEntry {
            present: false,
            start: 0,
            end: 0,
        }
    }

    pub fn present(start: Time, end: Time) -> Self {
        ScheduleEntry {
            present: true,
            start,
            end,
        }
    }

    pub fn length(&self) -> Time {
        self.end - self.start
    }
}

/// Per-activity presence and `[start, end)` intervals. May contain entries
/// for meta activities; consumers that work on the original network ignore
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Schedule {
    pub entries: BTreeMap<ActivityId, ScheduleEntry>,
}

impl Schedule {
    pub fn entry(&self, id: ActivityId) -> Option<&ScheduleEntry> {
        self.entries.get(&id)
    }

    pub fn is_present(&self, id: ActivityId) -> bool {
        self.entries.get(&id).is_some_and(|e| e.present)
    }

    pub fn set(&mut self, id: ActivityId, entry: ScheduleEntry) {
        self.entries.insert(id, entry);
    }

    /// Derived metrics; recomputable from the raw fields at any time.
    pub fn metrics(&self, inst: &Instance) -> ScheduleMetrics {
        ScheduleMetrics::compute(inst, self)
    }
}

/// Quantities derived from a schedule: makespan, duration buffers, and
/// per-resource usage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleMetrics {
    /// End of the sink activity.
    pub makespan: Time,
    /// Buffer (length - min_duration) per present real activity.
    pub buffers: BTreeMap<ActivityId, Time>,
    /// Largest buffer over present real activities.
    pub largest_buffer: Time,
    /// Smallest buffer over present real activities.
    pub smallest_buffer: Time,
    /// Peak concurrent usage per resource.
    pub peak_usage: BTreeMap<ResourceId, i64>,
    /// Time-indexed usage profile per resource over `[0, horizon)`.
    pub usage_profiles: BTreeMap<ResourceId, Vec<i64>>,
}

impl ScheduleMetrics {
    pub fn compute(inst: &Instance, sched: &Schedule) -> ScheduleMetrics {
        let net = inst.network();
        let makespan = net
            .sink()
            .and_then(|s| sched.entry(s))
            .filter(|e| e.present)
            .map(|e| e.end)
            .unwrap_or(0);

        let mut buffers = BTreeMap::new();
        for a in net.activities() {
            if a.kind.is_meta() {
                continue;
            }
            if let Some(e) = sched.entry(a.id) {
                if e.present {
                    buffers.insert(a.id, e.length() - a.min_duration);
                }
            }
        }
        let largest_buffer = buffers.values().copied().max().unwrap_or(0);
        let smallest_buffer = buffers.values().copied().min().unwrap_or(0);

        let horizon = inst.horizon().max(0) as usize;
        let mut usage_profiles: BTreeMap<ResourceId, Vec<i64>> = inst
            .resources()
            .iter()
            .map(|r| (r.id, vec![0i64; horizon + 1]))
            .collect();
        for a in net.activities() {
            if a.kind.is_meta() {
                continue;
            }
            let Some(e) = sched.entry(a.id) else { continue };
            if !e.present {
                continue;
            }
            for (&rid, &qty) in &a.demands {
                if let Some(profile) = usage_profiles.get_mut(&rid) {
                    let from = e.start.clamp(0, horizon as Time) as usize;
                    let to = e.end.clamp(0, horizon as Time) as usize;
                    for slot in profile.iter_mut().take(to).skip(from) {
                        *slot += qty;
                    }
                }
            }
        }
        let peak_usage = usage_profiles
            .iter()
            .map(|(&rid, profile)| (rid, profile.iter().copied().max().unwrap_or(0)))
            .collect();

        ScheduleMetrics {
            makespan,
            buffers,
            largest_buffer,
            smallest_buffer,
            peak_usage,
            usage_profiles,
        }
    }
}
