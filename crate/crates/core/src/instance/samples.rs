//! Small hand-built instances used in tests, docs and CLI demos.

use super::{Instance, ProblemClass, Resource};
use crate::ids::ResourceId;
use crate::network::{Activity, ActivityKind, Network};

/// Two lots sharing two unit-pair resources, one OR choice between two
/// serial routes per lot. Nodes 0..=14: lot 0 is 1..=6 (delivery 6, due 10),
/// lot 1 is 7..=13 (delivery 13, due 12), sink 14, horizon 20.
pub fn two_lot_toy() -> Instance {
    let mut acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::Or, 2, 2).with_lot(0),
        Activity::new(2, ActivityKind::And, 1, 8).with_lot(0),
        Activity::new(3, ActivityKind::And, 1, 8).with_lot(0),
        Activity::new(4, ActivityKind::And, 2, 8).with_lot(0),
        Activity::new(5, ActivityKind::And, 1, 8).with_lot(0),
        Activity::new(6, ActivityKind::Out, 1, 8).with_lot(0).with_due(10),
        Activity::new(7, ActivityKind::Or, 1, 1).with_lot(1),
        Activity::new(8, ActivityKind::And, 2, 9).with_lot(1),
        Activity::new(9, ActivityKind::And, 1, 9).with_lot(1),
        Activity::new(10, ActivityKind::And, 1, 9).with_lot(1),
        Activity::new(11, ActivityKind::And, 1, 9).with_lot(1),
        Activity::new(12, ActivityKind::And, 1, 9).with_lot(1),
        Activity::new(13, ActivityKind::Out, 1, 9).with_lot(1).with_due(12),
        Activity::new(14, ActivityKind::Sink, 0, 0),
    ];
    for a in acts.iter_mut() {
        if !a.kind.is_dummy() {
            a.demands.insert(ResourceId(a.id.0 % 2), 1);
        }
    }
    let id = crate::ids::ActivityId;
    let relations = vec![
        (id(0), vec![vec![id(1), id(7)]]),
        (id(1), vec![vec![id(2)], vec![id(4)]]),
        (id(2), vec![vec![id(3)]]),
        (id(3), vec![vec![id(6)]]),
        (id(4), vec![vec![id(5)]]),
        (id(5), vec![vec![id(6)]]),
        (id(6), vec![vec![id(14)]]),
        (id(7), vec![vec![id(8)], vec![id(10)]]),
        (id(8), vec![vec![id(9)]]),
        (id(9), vec![vec![id(13)]]),
        (id(10), vec![vec![id(11)]]),
        (id(11), vec![vec![id(12)]]),
        (id(12), vec![vec![id(13)]]),
        (id(13), vec![vec![id(14)]]),
    ];
    let net = Network::new(acts, relations, 2);
    let resources = vec![
        Resource::renewable(0, 2).balanced(),
        Resource::renewable(1, 2).balanced(),
    ];
    let mut inst = Instance::new("toy_two_lots", ProblemClass::RcmpspActf, net, resources, 20);
    inst.seed = 0;
    inst
}

/// A lot whose only activity chain demands more of a resource than it has:
/// infeasible at the root.
pub fn infeasible_toy() -> Instance {
    let id = crate::ids::ActivityId;
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::And, 2, 2)
            .with_lot(0)
            .with_demand(0, 3),
        Activity::new(2, ActivityKind::Out, 1, 4)
            .with_lot(0)
            .with_due(6)
            .with_demand(0, 1),
        Activity::new(3, ActivityKind::Sink, 0, 0),
    ];
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(2)]]),
        (id(2), vec![vec![id(3)]]),
    ];
    let net = Network::new(acts, relations, 1);
    let resources = vec![Resource::renewable(0, 2).balanced()];
    Instance::new("toy_infeasible", ProblemClass::RcmpspActf, net, resources, 12)
}

/// Single lot, one fixed route, no resource conflicts; the optimum is the
/// chain of minimum durations placed against the due date.
pub fn single_chain_toy() -> Instance {
    let id = crate::ids::ActivityId;
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::And, 2, 2)
            .with_lot(0)
            .with_demand(0, 1),
        Activity::new(2, ActivityKind::And, 3, 6)
            .with_lot(0)
            .with_demand(0, 1),
        Activity::new(3, ActivityKind::Out, 1, 5)
            .with_lot(0)
            .with_due(12)
            .with_demand(0, 1),
        Activity::new(4, ActivityKind::Sink, 0, 0),
    ];
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(2)]]),
        (id(2), vec![vec![id(3)]]),
        (id(3), vec![vec![id(4)]]),
    ];
    let net = Network::new(acts, relations, 1);
    let resources = vec![Resource::renewable(0, 2).balanced()];
    Instance::new("toy_single_chain", ProblemClass::RcmpspActf, net, resources, 24)
}
