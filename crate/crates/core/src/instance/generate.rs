//! Deterministic benchmark instance generation.
//!
//! All sampling flows from a single seeded ChaCha8 stream with a documented
//! consumption order (lot loop outer, activity loop inner), so identical
//! parameters always produce byte-identical instances:
//!
//! 1. per lot: route count, template indices, then per activity (start,
//!    route members in route order, delivery) the minimum-duration draw
//!    followed by the demand draws;
//! 2. per lot: due-date offset, then slack.
//!
//! Capacities, horizons and earliest completions are derived without
//! consuming randomness.

use super::{
    ActivityType, DemandPattern, DemandTable, GeneratorParams, Instance, ProblemClass, Resource,
};
use crate::ids::{ActivityId, LotId, ResourceId, Time};
use crate::network::{Activity, ActivityKind, Network};
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CapacityError {
    #[error("resource {0} is not demanded by any activity")]
    UndemandedResource(ResourceId),
    #[error("capacity of resource {0} computed to 0")]
    ZeroCapacity(ResourceId),
}

/// Due dates per lot: earliest completion plus a uniform draw from
/// `[t_l, 2*t_l]`, shifted by the lot's release when releases are staggered.
/// The result therefore lies in `[2*t_l, 3*t_l]` for the default release 0.
pub fn generate_due_dates(
    params: &GeneratorParams,
    earliest: &BTreeMap<LotId, Time>,
    rng: &mut ChaCha8Rng,
) -> BTreeMap<LotId, Time> {
    let mut dues = BTreeMap::new();
    for (&lot, &t) in earliest {
        let offset = if t > 0 { rng.gen_range(t..=2 * t) } else { 0 };
        let release = params.release_stagger * lot.0 as Time;
        dues.insert(lot, release + t + offset);
    }
    dues
}

/// Maximum durations: flexible activities of lot `l` get
/// `b_j = d_l - t_l + s_l`; fixed activities keep `b_j = a_j`.
pub fn generate_max_durations(
    dues: &BTreeMap<LotId, Time>,
    earliest: &BTreeMap<LotId, Time>,
    slack: &BTreeMap<LotId, Time>,
    net: &Network,
    flexible: &BTreeSet<ActivityId>,
) -> BTreeMap<ActivityId, Time> {
    let mut out = BTreeMap::new();
    for a in net.activities() {
        if a.kind.is_dummy() || a.kind.is_meta() {
            continue;
        }
        let Some(lot) = a.lot else { continue };
        let b = if flexible.contains(&a.id) {
            dues[&lot] - earliest[&lot] + slack.get(&lot).copied().unwrap_or(0)
        } else {
            a.min_duration
        };
        out.insert(a.id, b.max(a.min_duration));
    }
    out
}

/// Average number of lots whose `[release, due)` intervals run concurrently:
/// total interval length divided by the overall span, clamped to at least 1.
pub fn parallel_lot_estimate(
    releases: &BTreeMap<LotId, Time>,
    dues: &BTreeMap<LotId, Time>,
) -> Rational64 {
    let total: Time = dues
        .iter()
        .map(|(lot, &d)| (d - releases.get(lot).copied().unwrap_or(0)).max(0))
        .sum();
    let span = dues.values().copied().max().unwrap_or(0)
        - releases.values().copied().min().unwrap_or(0);
    if span <= 0 || total <= 0 {
        return Rational64::new(1, 1);
    }
    Rational64::new(total, span).max(Rational64::new(1, 1))
}

fn ceil_rational(r: Rational64) -> i64 {
    r.ceil().to_integer()
}

fn round_half_up(r: Rational64) -> i64 {
    (r + Rational64::new(1, 2)).floor().to_integer()
}

/// Feasible resource availabilities.
///
/// `C_min` is the largest single-activity demand, `C_max` the peak of the
/// earliest-start schedule (passed in by the caller), `C_lower` the rounded-up
/// product of `C_min` and the parallel-lot estimate, `C_upper = C_lower +
/// C_max`, and the availability interpolates between the two bounds with the
/// resource strength. Real-world instances use twice `C_min` for resources
/// outside the balancing set.
pub fn compute_capacities(
    demands: &DemandTable,
    ess_peak: &BTreeMap<ResourceId, i64>,
    resource_strength: (i64, i64),
    l_par: Rational64,
    pattern: DemandPattern,
    balanced: &BTreeSet<ResourceId>,
    resource_ids: &[ResourceId],
) -> Result<BTreeMap<ResourceId, i64>, CapacityError> {
    let rs = Rational64::new(resource_strength.0, resource_strength.1);
    let mut out = BTreeMap::new();
    for &rid in resource_ids {
        let c_min = demands
            .values()
            .filter_map(|d| d.get(&rid))
            .copied()
            .max()
            .ok_or(CapacityError::UndemandedResource(rid))?;
        let capacity = if pattern == DemandPattern::Rw && !balanced.contains(&rid) {
            2 * c_min
        } else {
            let c_max = ess_peak.get(&rid).copied().unwrap_or(c_min);
            let c_lower = ceil_rational(Rational64::new(c_min, 1) * l_par);
            let c_upper = c_lower + c_max;
            c_lower + round_half_up(rs * Rational64::new(c_upper - c_lower, 1))
        };
        if capacity <= 0 {
            return Err(CapacityError::ZeroCapacity(rid));
        }
        out.insert(rid, capacity);
    }
    Ok(out)
}

/// Earliest-start schedule with every activity present at minimum duration
/// and no-idle chaining along arcs; returns the peak usage per resource.
pub(crate) fn earliest_start_peaks(
    net: &Network,
    releases: &BTreeMap<LotId, Time>,
) -> BTreeMap<ResourceId, i64> {
    let Some(order) = net.topological_order() else {
        return BTreeMap::new();
    };
    let mut start: BTreeMap<ActivityId, Time> = BTreeMap::new();
    let preds = net.predecessors();
    for id in order {
        let a = net.activity(id).unwrap();
        let release = a
            .lot
            .and_then(|l| releases.get(&l).copied())
            .unwrap_or(0);
        let est = preds
            .get(&id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
            .iter()
            .map(|p| {
                let pa = net.activity(*p).unwrap();
                start.get(p).copied().unwrap_or(0) + pa.min_duration
            })
            .max()
            .unwrap_or(0)
            .max(release);
        start.insert(id, est);
    }

    let mut peaks = BTreeMap::new();
    let horizon = start
        .iter()
        .map(|(id, s)| s + net.activity(*id).unwrap().min_duration)
        .max()
        .unwrap_or(0);
    let mut profile = vec![0i64; horizon as usize + 1];
    let mut rids = BTreeSet::new();
    for a in net.activities() {
        rids.extend(a.demands.keys().copied());
    }
    for rid in rids {
        profile.iter_mut().for_each(|v| *v = 0);
        for a in net.activities() {
            let Some(&q) = a.demands.get(&rid) else { continue };
            let s = start[&a.id];
            for t in s..s + a.min_duration {
                profile[t as usize] += q;
            }
        }
        peaks.insert(rid, profile.iter().copied().max().unwrap_or(0));
    }
    peaks
}

const RW_RESOURCE_COUNT: u32 = 9;

/// Map an activity type to its real-world resource. Storaging and processing
/// alternate between two equivalent locations so every resource is used.
fn rw_resource(ty: ActivityType, storage_count: &mut u32, processing_count: &mut u32) -> u32 {
    match ty {
        ActivityType::Production => 0,
        ActivityType::Cooling => 1,
        ActivityType::Processing => {
            *processing_count += 1;
            if *processing_count % 2 == 1 {
                2
            } else {
                8
            }
        }
        ActivityType::Relocation => 3,
        ActivityType::Storaging => {
            *storage_count += 1;
            if *storage_count % 2 == 1 {
                4
            } else {
                7
            }
        }
        ActivityType::VehicleRelocation => 5,
        ActivityType::Delivery => 6,
    }
}

struct LotDraft {
    start: ActivityId,
    routes: Vec<Vec<ActivityId>>,
    delivery: ActivityId,
}

/// Generate a multi-project instance with alternative chains and time
/// flexibility. Deterministic: identical parameters give identical output.
pub fn generate_actf_instance(params: &GeneratorParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let pool = &params.route_pool;

    let mut activities: Vec<Activity> = vec![Activity::new(0, ActivityKind::Source, 0, 0)];
    let mut relations: Vec<(ActivityId, Vec<Vec<ActivityId>>)> = Vec::new();
    let mut flexible: BTreeSet<ActivityId> = BTreeSet::new();
    let mut drafts: Vec<LotDraft> = Vec::new();
    let mut next_id: u32 = 1;
    let mut storage_count = 0;
    let mut processing_count = 0;

    let mut sample_activity = |rng: &mut ChaCha8Rng,
                               id: u32,
                               ty: ActivityType,
                               kind: ActivityKind,
                               lot: u32,
                               storage_count: &mut u32,
                               processing_count: &mut u32|
     -> Activity {
        let a_j = rng.gen_range(params.min_duration_range.0..params.min_duration_range.1);
        let mut act = Activity::new(id, kind, a_j, a_j).with_lot(lot);
        if ty == ActivityType::Delivery {
            // Placeholder due; assigned after earliest completions are known.
            act.due_date = Some(0);
        }
        match params.pattern {
            DemandPattern::Rw => {
                let r = rw_resource(ty, storage_count, processing_count);
                act.demands.insert(ResourceId(r), 1);
            }
            DemandPattern::Rand => {
                for r in 0..RW_RESOURCE_COUNT {
                    let q = rng.gen_range(params.demand_range.0..params.demand_range.1);
                    act.demands.insert(ResourceId(r), q);
                }
            }
        }
        act
    };

    for lot in 0..params.lot_count {
        let (lo, hi) = params.routes_per_lot;
        let route_count = rng.gen_range(lo..=hi).min(pool.len() as u32);
        // Partial Fisher-Yates draw of distinct template indices.
        let mut indices: Vec<usize> = (0..pool.len()).collect();
        for i in 0..route_count as usize {
            let j = rng.gen_range(i..indices.len());
            indices.swap(i, j);
        }
        let chosen = &indices[..route_count as usize];

        let start_id = next_id;
        next_id += 1;
        let start_kind = if route_count >= 2 {
            ActivityKind::Or
        } else {
            ActivityKind::And
        };
        activities.push(sample_activity(
            &mut rng,
            start_id,
            ActivityType::Production,
            start_kind,
            lot,
            &mut storage_count,
            &mut processing_count,
        ));

        let mut routes = Vec::new();
        let mut route_bodies: Vec<Vec<(ActivityId, ActivityType)>> = Vec::new();
        for &tpl in chosen {
            let mut ids = Vec::new();
            let mut body = Vec::new();
            for &ty in &pool[tpl] {
                let id = next_id;
                next_id += 1;
                let act = sample_activity(
                    &mut rng,
                    id,
                    ty,
                    ActivityKind::And,
                    lot,
                    &mut storage_count,
                    &mut processing_count,
                );
                if !ty.is_fixed_duration() {
                    flexible.insert(act.id);
                }
                body.push((act.id, ty));
                ids.push(act.id);
                activities.push(act);
            }
            routes.push(ids);
            route_bodies.push(body);
        }

        let delivery_id = next_id;
        next_id += 1;
        let delivery = sample_activity(
            &mut rng,
            delivery_id,
            ActivityType::Delivery,
            ActivityKind::Out,
            lot,
            &mut storage_count,
            &mut processing_count,
        );
        flexible.insert(delivery.id);
        activities.push(delivery);

        // Wire the lot: start -> (route chains) -> delivery.
        let groups: Vec<Vec<ActivityId>> = routes.iter().map(|r| vec![r[0]]).collect();
        relations.push((ActivityId(start_id), groups));
        for route in &routes {
            for pair in route.windows(2) {
                relations.push((pair[0], vec![vec![pair[1]]]));
            }
            relations.push((
                *route.last().unwrap(),
                vec![vec![ActivityId(delivery_id)]],
            ));
        }
        drafts.push(LotDraft {
            start: ActivityId(start_id),
            routes,
            delivery: ActivityId(delivery_id),
        });
        let _ = route_bodies;
    }

    let sink_id = next_id;
    activities.push(Activity::new(sink_id, ActivityKind::Sink, 0, 0));
    relations.push((
        ActivityId(0),
        vec![drafts.iter().map(|d| d.start).collect()],
    ));
    for d in &drafts {
        relations.push((d.delivery, vec![vec![ActivityId(sink_id)]]));
    }

    let draft_net = Network::new(activities.clone(), relations.clone(), params.lot_count);

    // Phase 2: earliest completions (no randomness).
    let mut earliest = BTreeMap::new();
    for lot in 0..params.lot_count {
        let t = super::earliest_completion(&draft_net, LotId(lot))
            .expect("generated lot has routes");
        earliest.insert(LotId(lot), t);
    }

    // Phase 3: due dates (lot loop), then slacks (lot loop).
    let dues = generate_due_dates(params, &earliest, &mut rng);
    let mut slack = BTreeMap::new();
    for lot in 0..params.lot_count {
        let s = rng.gen_range(params.slack_range.0..=params.slack_range.1);
        slack.insert(LotId(lot), s);
    }

    // Phase 4: maximum durations (release-free dues) and final due dates.
    let dues_rel: BTreeMap<LotId, Time> = dues
        .iter()
        .map(|(l, d)| (*l, d - params.release_stagger * l.0 as Time))
        .collect();
    let max_durations =
        generate_max_durations(&dues_rel, &earliest, &slack, &draft_net, &flexible);
    for act in activities.iter_mut() {
        if let Some(&b) = max_durations.get(&act.id) {
            act.max_duration = b;
        }
        if act.kind == ActivityKind::Out {
            let lot = act.lot.expect("delivery has a lot");
            act.due_date = Some(dues[&lot]);
        }
    }

    // Phase 5: capacities and horizon.
    let releases: BTreeMap<LotId, Time> = (0..params.lot_count)
        .map(|l| (LotId(l), params.release_stagger * l as Time))
        .collect();
    let l_par = parallel_lot_estimate(&releases, &dues);
    let net = Network::new(activities, relations, params.lot_count);
    let ess_peak = earliest_start_peaks(&net, &releases);
    let demands: DemandTable = net
        .activities()
        .filter(|a| !a.demands.is_empty())
        .map(|a| (a.id, a.demands.clone()))
        .collect();
    let balanced: BTreeSet<ResourceId> = [ResourceId(4), ResourceId(7)].into();
    let resource_ids: Vec<ResourceId> = (0..RW_RESOURCE_COUNT).map(ResourceId).collect();
    let capacities = compute_capacities(
        &demands,
        &ess_peak,
        params.resource_strength,
        l_par,
        params.pattern,
        &balanced,
        &resource_ids,
    )
    .expect("generated instances demand every resource");

    let resources: Vec<Resource> = resource_ids
        .iter()
        .map(|&rid| Resource {
            id: rid,
            capacity: capacities[&rid],
            balanced: balanced.contains(&rid),
            renewable: true,
        })
        .collect();

    let horizon = dues.values().copied().max().unwrap_or(0)
        + earliest
            .iter()
            .map(|(l, &t)| t + slack[l])
            .max()
            .unwrap_or(0);

    let mut inst = Instance::new(
        actf_instance_name(params),
        ProblemClass::RcmpspActf,
        net,
        resources,
        horizon.max(1),
    );
    inst.pattern = Some(params.pattern);
    inst.resource_strength = Some(params.resource_strength);
    inst.seed = params.seed;
    inst
}

pub fn actf_instance_name(params: &GeneratorParams) -> String {
    let rs_pct = (params.resource_strength.0 * 100) / params.resource_strength.1;
    format!(
        "actf_l{:03}_{}_rs{:03}_s{:02}",
        params.lot_count,
        match params.pattern {
            DemandPattern::Rw => "rw",
            DemandPattern::Rand => "rand",
        },
        rs_pct,
        params.seed
    )
}

/// Composition mode for the alternative-chain benchmark structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcMode {
    /// Copies chained one after another (single-project problem).
    Single,
    /// Copies in parallel between shared dummy source and sink.
    Multi,
}

use serde::{Deserialize, Serialize};

/// Copy-local structure of the 30-node base project: (node, kind-is-or,
/// successor relation groups).
const AC_BASE: [(u32, bool, &[&[u32]]); 30] = [
    (1, false, &[&[2]]),
    (2, true, &[&[3], &[10]]),
    (3, false, &[&[4]]),
    (4, true, &[&[5], &[7]]),
    (5, false, &[&[6]]),
    (6, false, &[&[9]]),
    (7, false, &[&[8]]),
    (8, false, &[&[9]]),
    (9, false, &[&[16]]),
    (10, false, &[&[11]]),
    (11, true, &[&[12], &[13]]),
    (12, false, &[&[15]]),
    (13, false, &[&[14]]),
    (14, false, &[&[15]]),
    (15, false, &[&[16]]),
    (16, false, &[&[17]]),
    (17, true, &[&[18], &[21]]),
    (18, false, &[&[19]]),
    (19, false, &[&[20]]),
    (20, false, &[&[24]]),
    (21, true, &[&[22], &[23]]),
    (22, false, &[&[25]]),
    (23, false, &[&[25]]),
    (24, false, &[&[26]]),
    (25, false, &[&[24]]),
    (26, false, &[&[27]]),
    (27, false, &[&[28]]),
    (28, false, &[&[29]]),
    (29, false, &[&[30]]),
    (30, false, &[]),
];

const AC_RESOURCE_COUNT: u32 = 4;

/// Benchmark instances for the fixed-duration alternative-chain problems:
/// a 30-node base structure with five nested OR nodes, replicated
/// `multiplier` times, chained in sequence (single) or arranged in parallel
/// (multi). Both modes share the same resource capacities, so the parallel
/// arrangement is tighter.
pub fn generate_ac_instance(multiplier: u32, mode: AcMode, seed: u64) -> Instance {
    assert!(multiplier >= 1, "multiplier must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut activities = vec![Activity::new(0, ActivityKind::Source, 0, 0)];
    let mut relations: Vec<(ActivityId, Vec<Vec<ActivityId>>)> = Vec::new();
    let sink_id = multiplier * 30 + 1;

    for copy in 0..multiplier {
        let offset = copy * 30;
        for &(local, is_or, groups) in AC_BASE.iter() {
            let id = offset + local;
            let d = rng.gen_range(1..10);
            let kind = if is_or { ActivityKind::Or } else { ActivityKind::And };
            let mut act = Activity::new(id, kind, d, d).with_lot(copy);
            for r in 0..AC_RESOURCE_COUNT {
                let q = rng.gen_range(0..5);
                if q > 0 {
                    act.demands.insert(ResourceId(r), q);
                }
            }
            activities.push(act);
            let mut mapped: Vec<Vec<ActivityId>> = groups
                .iter()
                .map(|g| g.iter().map(|&n| ActivityId(offset + n)).collect())
                .collect();
            if local == 30 {
                let next = match mode {
                    AcMode::Single if copy + 1 < multiplier => ActivityId(offset + 30 + 1),
                    _ => ActivityId(sink_id),
                };
                mapped = vec![vec![next]];
            }
            relations.push((ActivityId(id), mapped));
        }
    }
    activities.push(Activity::new(sink_id, ActivityKind::Sink, 0, 0));
    let source_targets: Vec<ActivityId> = match mode {
        AcMode::Single => vec![ActivityId(1)],
        AcMode::Multi => (0..multiplier).map(|c| ActivityId(c * 30 + 1)).collect(),
    };
    relations.push((ActivityId(0), vec![source_targets]));

    let net = Network::new(activities, relations, multiplier);

    // Capacities derive from the first copy only, so all multipliers and
    // both modes of one seed share them.
    let resource_ids: Vec<ResourceId> = (0..AC_RESOURCE_COUNT).map(ResourceId).collect();
    let copy0: BTreeSet<ActivityId> = (1..=30).map(ActivityId).collect();
    let copy0_net = Network::new(
        net.activities()
            .filter(|a| copy0.contains(&a.id) || a.kind.is_dummy())
            .cloned()
            .map(|mut a| {
                if a.id == ActivityId(sink_id) {
                    a.id = ActivityId(31);
                }
                a
            })
            .collect::<Vec<_>>(),
        net.relations()
            .iter()
            .filter(|(id, _)| copy0.contains(id) || id.0 == 0)
            .map(|(id, gs)| {
                let gs = gs
                    .iter()
                    .map(|g| {
                        g.iter()
                            .map(|&t| if copy0.contains(&t) { t } else { ActivityId(31) })
                            .collect()
                    })
                    .collect();
                (*id, gs)
            })
            .collect::<Vec<_>>(),
        1,
    );
    let peaks = earliest_start_peaks(&copy0_net, &BTreeMap::new());
    let global_c_min: BTreeMap<ResourceId, i64> = resource_ids
        .iter()
        .map(|&rid| {
            let m = net
                .activities()
                .filter_map(|a| a.demands.get(&rid))
                .copied()
                .max()
                .unwrap_or(1);
            (rid, m)
        })
        .collect();
    let resources: Vec<Resource> = resource_ids
        .iter()
        .map(|&rid| {
            let c_min = global_c_min[&rid];
            let peak = peaks.get(&rid).copied().unwrap_or(c_min).max(c_min);
            let capacity = c_min.max(c_min + round_half_up(Rational64::new(peak - c_min, 2)));
            Resource {
                id: rid,
                capacity,
                balanced: false,
                renewable: true,
            }
        })
        .collect();

    let horizon: Time = net
        .activities()
        .map(|a| a.min_duration)
        .sum::<Time>()
        + 10;

    let mode_tag = match mode {
        AcMode::Single => "single",
        AcMode::Multi => "multi",
    };
    let mut inst = Instance::new(
        format!("ac_{mode_tag}_x{multiplier}_s{seed:02}"),
        if mode == AcMode::Single {
            ProblemClass::RcpspAc
        } else {
            ProblemClass::RcmpspAc
        },
        net,
        resources,
        horizon,
    );
    inst.seed = seed;
    inst
}

/// Synthetic industry-scale case: 50 lots, real-world demand pattern over
/// eight resources with fixed capacities [10,10,30,10,50,240,220,80], a
/// 4088-unit horizon, and a 21/23/6 split of lots with 3/2/1 route
/// alternatives.
pub fn generate_case_instance(seed: u64) -> Instance {
    use ActivityType::*;
    let case_pool: Vec<Vec<ActivityType>> = vec![
        vec![Cooling, Storaging, VehicleRelocation, Storaging],
        vec![Processing, Storaging, Relocation, Storaging],
        vec![Cooling, Relocation, Storaging, Processing],
        vec![Storaging, Processing, Storaging],
        vec![Cooling, Storaging, Processing, VehicleRelocation, Storaging],
        vec![Processing, Storaging, Cooling, Storaging],
    ];
    let capacities: [i64; 8] = [10, 10, 30, 10, 50, 240, 220, 80];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let lot_count: u32 = 50;
    let route_counts = |lot: u32| -> u32 {
        if lot < 21 {
            3
        } else if lot < 44 {
            2
        } else {
            1
        }
    };

    let case_resource = |ty: ActivityType, storage_count: &mut u32| -> u32 {
        match ty {
            Production => 1,
            Cooling => 2,
            Processing => 4,
            Relocation => 0,
            Storaging => {
                *storage_count += 1;
                if *storage_count % 2 == 1 {
                    5
                } else {
                    7
                }
            }
            VehicleRelocation => 3,
            Delivery => 6,
        }
    };

    let mut activities = vec![Activity::new(0, ActivityKind::Source, 0, 0)];
    let mut relations: Vec<(ActivityId, Vec<Vec<ActivityId>>)> = Vec::new();
    let mut flexible = BTreeSet::new();
    let mut drafts = Vec::new();
    let mut next_id: u32 = 1;
    let mut storage_count = 0;

    for lot in 0..lot_count {
        let route_count = route_counts(lot);
        let mut indices: Vec<usize> = (0..case_pool.len()).collect();
        for i in 0..route_count as usize {
            let j = rng.gen_range(i..indices.len());
            indices.swap(i, j);
        }

        let start_id = next_id;
        next_id += 1;
        let kind = if route_count >= 2 {
            ActivityKind::Or
        } else {
            ActivityKind::And
        };
        let a = rng.gen_range(5..30);
        let mut start = Activity::new(start_id, kind, a, a).with_lot(lot);
        start
            .demands
            .insert(ResourceId(case_resource(Production, &mut storage_count)), 1);
        activities.push(start);

        let mut routes = Vec::new();
        for &tpl in &indices[..route_count as usize] {
            let mut ids = Vec::new();
            for &ty in &case_pool[tpl] {
                let id = next_id;
                next_id += 1;
                let a = if ty.is_fixed_duration() {
                    rng.gen_range(5..30)
                } else {
                    rng.gen_range(10..60)
                };
                let mut act = Activity::new(id, ActivityKind::And, a, a).with_lot(lot);
                act.demands
                    .insert(ResourceId(case_resource(ty, &mut storage_count)), 1);
                if !ty.is_fixed_duration() {
                    flexible.insert(act.id);
                }
                ids.push(act.id);
                activities.push(act);
            }
            routes.push(ids);
        }

        let delivery_id = next_id;
        next_id += 1;
        let a = rng.gen_range(10..60);
        let mut delivery = Activity::new(delivery_id, ActivityKind::Out, a, a)
            .with_lot(lot)
            .with_due(0);
        delivery
            .demands
            .insert(ResourceId(case_resource(Delivery, &mut storage_count)), 1);
        flexible.insert(delivery.id);
        activities.push(delivery);

        let groups: Vec<Vec<ActivityId>> = routes.iter().map(|r| vec![r[0]]).collect();
        relations.push((ActivityId(start_id), groups));
        for route in &routes {
            for pair in route.windows(2) {
                relations.push((pair[0], vec![vec![pair[1]]]));
            }
            relations.push((*route.last().unwrap(), vec![vec![ActivityId(delivery_id)]]));
        }
        drafts.push((ActivityId(start_id), ActivityId(delivery_id)));
    }

    let sink_id = next_id;
    activities.push(Activity::new(sink_id, ActivityKind::Sink, 0, 0));
    relations.push((
        ActivityId(0),
        vec![drafts.iter().map(|d| d.0).collect()],
    ));
    for d in &drafts {
        relations.push((d.1, vec![vec![ActivityId(sink_id)]]));
    }

    let draft_net = Network::new(activities.clone(), relations.clone(), lot_count);
    let mut earliest = BTreeMap::new();
    for lot in 0..lot_count {
        earliest.insert(
            LotId(lot),
            super::earliest_completion(&draft_net, LotId(lot)).expect("case lot has routes"),
        );
    }
    let mut dues = BTreeMap::new();
    let mut slack = BTreeMap::new();
    for lot in 0..lot_count {
        let lot = LotId(lot);
        let t = earliest[&lot];
        let offset = if t > 0 { rng.gen_range(t..=2 * t) } else { 0 };
        dues.insert(lot, t + offset);
        slack.insert(lot, rng.gen_range(30..=120));
    }
    let max_durations = generate_max_durations(&dues, &earliest, &slack, &draft_net, &flexible);
    for act in activities.iter_mut() {
        if let Some(&b) = max_durations.get(&act.id) {
            act.max_duration = b;
        }
        if act.kind == ActivityKind::Out {
            act.due_date = Some(dues[&act.lot.unwrap()]);
        }
    }

    let net = Network::new(activities, relations, lot_count);
    let resources: Vec<Resource> = capacities
        .iter()
        .enumerate()
        .map(|(i, &c)| Resource {
            id: ResourceId(i as u32),
            capacity: c,
            balanced: i == 5 || i == 7,
            renewable: true,
        })
        .collect();

    let mut inst = Instance::new(
        format!("case_l050_rw_s{seed:02}"),
        ProblemClass::RcmpspActf,
        net,
        resources,
        4088,
    );
    inst.pattern = Some(DemandPattern::Rw);
    inst.seed = seed;
    inst
}
