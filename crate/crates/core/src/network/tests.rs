use super::*;
use crate::ids::{ActivityId, LotId};

fn id(v: u32) -> ActivityId {
    ActivityId(v)
}

/// Two-lot AND/OR/OUT network: nodes 0..=14, lots 0 and 1, one OR choice
/// between two serial routes per lot.
fn two_lot_network() -> Network {
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
            a.demands.insert(crate::ids::ResourceId(a.id.0 % 2), 1);
        }
    }
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
    Network::new(acts, relations, 2)
}

/// Nested-alternative network with a common end node: source 0, OR node 1
/// with relations entered at 2 and 3, nested OR node 3 with relations
/// entered at 6 and 7, all merging in the sink 14.
fn nested_network() -> Network {
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::Or, 1, 1).with_lot(0),
        Activity::new(2, ActivityKind::And, 2, 2).with_lot(0),
        Activity::new(3, ActivityKind::Or, 1, 1).with_lot(0),
        Activity::new(4, ActivityKind::And, 2, 2).with_lot(0),
        Activity::new(5, ActivityKind::And, 1, 1).with_lot(0),
        Activity::new(6, ActivityKind::And, 3, 3).with_lot(0),
        Activity::new(7, ActivityKind::And, 1, 1).with_lot(0),
        Activity::new(8, ActivityKind::And, 2, 2).with_lot(0),
        Activity::new(14, ActivityKind::Sink, 0, 0),
    ];
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(2)], vec![id(3)]]),
        (id(2), vec![vec![id(4)]]),
        (id(4), vec![vec![id(5)]]),
        (id(5), vec![vec![id(14)]]),
        (id(3), vec![vec![id(6)], vec![id(7)]]),
        (id(6), vec![vec![id(14)]]),
        (id(7), vec![vec![id(8)]]),
        (id(8), vec![vec![id(14)]]),
    ];
    Network::new(acts, relations, 1)
}

#[test]
fn two_lot_network_is_valid() {
    assert_eq!(validate_network(&two_lot_network()), vec![]);
}

#[test]
fn nested_network_is_valid() {
    assert_eq!(validate_network(&nested_network()), vec![]);
}

#[test]
fn self_loop_is_a_cycle() {
    let mut net = two_lot_network();
    let mut relations: Vec<_> = net
        .relations()
        .iter()
        .map(|(k, v)| (*k, v.clone()))
        .collect();
    for (from, groups) in relations.iter_mut() {
        if *from == id(5) {
            groups[0].push(id(5));
        }
    }
    net = Network::new(
        net.activities().cloned().collect::<Vec<_>>(),
        relations,
        2,
    );
    let diags = validate_network(&net);
    assert!(
        diags.iter().any(|d| matches!(d, Diagnostic::Cycle { .. })),
        "expected cycle diagnostic, got {diags:?}"
    );
    assert!(diags.iter().any(|d| d.to_string().starts_with("cycle")));
}

#[test]
fn disconnected_node_is_unreachable() {
    let mut acts: Vec<_> = two_lot_network().activities().cloned().collect();
    acts.push(Activity::new(20, ActivityKind::And, 1, 2).with_lot(0));
    let net = Network::new(
        acts,
        two_lot_network()
            .relations()
            .iter()
            .map(|(k, v)| (*k, v.clone())),
        2,
    );
    let diags = validate_network(&net);
    assert!(diags.contains(&Diagnostic::Unreachable { id: id(20) }));
    assert!(diags.iter().any(|d| d.to_string() == "unreachable: 20"));
}

#[test]
fn transform_assigns_meta_ids_after_largest_real_id() {
    let cp = to_cp_network(&nested_network()).unwrap();
    // Alt nodes first in ascending OR order, then span nodes.
    let alt_ids: Vec<_> = cp.alts().iter().map(|a| a.meta).collect();
    assert_eq!(alt_ids, vec![id(9), id(10)]);
    assert!(cp.cp_adjacency().contains(&(id(1), id(9))));
    assert!(cp.cp_adjacency().contains(&(id(3), id(10))));
    let spans: Vec<_> = cp.span_sets().keys().copied().collect();
    assert_eq!(spans, vec![id(11), id(12), id(13)]);
    assert_eq!(cp.meta_set().len(), 5);
}

#[test]
fn transform_populates_alternative_and_span_sets() {
    let cp = to_cp_network(&nested_network()).unwrap();
    let s9: Vec<_> = cp.alt_starts()[&id(9)].iter().copied().collect();
    assert_eq!(s9, vec![id(2), id(3)]);
    let s10: Vec<_> = cp.alt_starts()[&id(10)].iter().copied().collect();
    assert_eq!(s10, vec![id(6), id(7)]);
    let g11: Vec<_> = cp.span_sets()[&id(11)].iter().copied().collect();
    assert_eq!(g11, vec![id(2), id(4), id(5)]);
    let g12: Vec<_> = cp.span_sets()[&id(12)].iter().copied().collect();
    assert_eq!(g12, vec![id(3), id(6), id(7), id(8)]);
    let g13: Vec<_> = cp.span_sets()[&id(13)].iter().copied().collect();
    assert_eq!(g13, vec![id(7), id(8)]);
    // Ends of the outer alternative: last members of both relations.
    let e9: Vec<_> = cp.alt_ends()[&id(9)].iter().copied().collect();
    assert_eq!(e9, vec![id(5), id(6), id(8)]);
}

#[test]
fn transform_moves_entry_and_closing_arcs() {
    let cp = to_cp_network(&nested_network()).unwrap();
    let adj = cp.cp_adjacency();
    for removed in [(1, 2), (1, 3), (3, 6), (3, 7), (5, 14), (6, 14), (8, 14)] {
        assert!(
            !adj.contains(&(id(removed.0), id(removed.1))),
            "arc {removed:?} should have been replaced"
        );
    }
    // Outermost alternative closes against the common end node; the nested
    // one is covered by the enclosing span.
    assert!(adj.contains(&(id(9), id(14))));
    assert!(!adj.contains(&(id(10), id(14))));
    for kept in [(0, 1), (2, 4), (4, 5), (7, 8)] {
        assert!(adj.contains(&(id(kept.0), id(kept.1))));
    }
}

#[test]
fn pure_and_chain_has_no_meta_nodes() {
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::And, 1, 2).with_lot(0),
        Activity::new(2, ActivityKind::And, 1, 2).with_lot(0),
        Activity::new(3, ActivityKind::Sink, 0, 0),
    ];
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(2)]]),
        (id(2), vec![vec![id(3)]]),
    ];
    let net = Network::new(acts, relations, 1);
    let cp = to_cp_network(&net).unwrap();
    assert!(cp.meta_set().is_empty());
    let arcs: BTreeSet<_> = net.arcs().into_iter().collect();
    assert_eq!(cp.cp_adjacency(), &arcs);
}

#[test]
fn meta_count_matches_or_nodes_with_choices() {
    let cp = to_cp_network(&two_lot_network()).unwrap();
    assert_eq!(cp.alts().len(), 2);
    // Relations are two-member chains, so every relation gets a span.
    assert_eq!(cp.span_sets().len(), 4);
    // Meta ids start after the largest real id (13), skipping the sink (14).
    let alt_ids: Vec<_> = cp.alts().iter().map(|a| a.meta).collect();
    assert_eq!(alt_ids, vec![id(15), id(16)]);
}

#[test]
fn routes_of_two_lot_network() {
    let net = two_lot_network();
    let lot0 = enumerate_routes(&net, LotId(0)).unwrap();
    assert_eq!(
        lot0,
        vec![
            vec![id(1), id(2), id(3), id(6)],
            vec![id(1), id(4), id(5), id(6)],
        ]
    );
    let lot1 = enumerate_routes(&net, LotId(1)).unwrap();
    assert_eq!(lot1.len(), 2);
    assert!(lot1.iter().all(|c| c.ends_with(&[id(13)])));
}

#[test]
fn fixed_route_lot_has_one_chain() {
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::And, 1, 2).with_lot(0),
        Activity::new(2, ActivityKind::And, 1, 2).with_lot(0),
        Activity::new(3, ActivityKind::Out, 1, 2).with_lot(0).with_due(4),
        Activity::new(4, ActivityKind::Sink, 0, 0),
    ];
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(2)]]),
        (id(2), vec![vec![id(3)]]),
        (id(3), vec![vec![id(4)]]),
    ];
    let net = Network::new(acts, relations, 1);
    assert_eq!(validate_network(&net), vec![]);
    let routes = enumerate_routes(&net, LotId(0)).unwrap();
    assert_eq!(routes, vec![vec![id(1), id(2), id(3)]]);
}

#[test]
fn one_or_with_k_relations_yields_k_chains() {
    for k in 2..=4u32 {
        let mut acts = vec![
            Activity::new(0, ActivityKind::Source, 0, 0),
            Activity::new(1, ActivityKind::Or, 1, 1).with_lot(0),
        ];
        let mut relations = vec![(id(0), vec![vec![id(1)]])];
        let delivery = 2 + k;
        let mut groups = Vec::new();
        for m in 0..k {
            let mid = 2 + m;
            acts.push(Activity::new(mid, ActivityKind::And, 1, 3).with_lot(0));
            relations.push((id(mid), vec![vec![id(delivery)]]));
            groups.push(vec![id(mid)]);
        }
        relations.push((id(1), groups));
        acts.push(
            Activity::new(delivery, ActivityKind::Out, 1, 3)
                .with_lot(0)
                .with_due(4),
        );
        acts.push(Activity::new(delivery + 1, ActivityKind::Sink, 0, 0));
        relations.push((id(delivery), vec![vec![id(delivery + 1)]]));
        let net = Network::new(acts, relations, 1);
        assert_eq!(validate_network(&net), vec![]);
        let routes = enumerate_routes(&net, LotId(0)).unwrap();
        assert_eq!(routes.len(), k as usize);
    }
}

#[test]
fn route_preservation_under_transformation() {
    for net in [two_lot_network(), nested_network()] {
        let cp = to_cp_network(&net).unwrap();
        for lot in 0..net.lot_count() {
            let original = enumerate_routes(&net, LotId(lot)).unwrap();
            let stripped = enumerate_routes_cp(&cp, LotId(lot)).unwrap();
            assert_eq!(original, stripped, "lot {lot} routes changed");
        }
    }
}

#[test]
fn transform_is_idempotent_on_non_meta_projection() {
    for net in [two_lot_network(), nested_network()] {
        let cp = to_cp_network(&net).unwrap();
        let projected = cp.strip_meta();
        assert_eq!(projected, net);
        let cp2 = to_cp_network(&projected).unwrap();
        assert_eq!(cp2, cp);
    }
}

#[test]
fn empty_relation_is_rejected() {
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::Or, 1, 1).with_lot(0),
        Activity::new(2, ActivityKind::And, 1, 2).with_lot(0),
        Activity::new(3, ActivityKind::Sink, 0, 0),
    ];
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(2)], vec![]]),
        (id(2), vec![vec![id(3)]]),
    ];
    let net = Network::new(acts, relations, 1);
    assert!(matches!(
        to_cp_network(&net),
        Err(TransformError::EmptyRelation { or }) if or == id(1)
    ));
}

#[test]
fn out_without_incoming_arc_is_flagged() {
    let acts = vec![
        Activity::new(0, ActivityKind::Source, 0, 0),
        Activity::new(1, ActivityKind::And, 1, 2).with_lot(0),
        Activity::new(2, ActivityKind::Out, 1, 2).with_lot(0).with_due(3),
        Activity::new(3, ActivityKind::Sink, 0, 0),
    ];
    // 2 has an outgoing arc to the sink but nothing feeds it.
    let relations = vec![
        (id(0), vec![vec![id(1)]]),
        (id(1), vec![vec![id(3)]]),
        (id(2), vec![vec![id(3)]]),
    ];
    let net = Network::new(acts, relations, 1);
    let diags = validate_network(&net);
    assert!(diags.contains(&Diagnostic::OutWithoutPredecessor { id: id(2) }));
}

use std::collections::BTreeSet;
