//! Route (alternative activity chain) enumeration.

use super::{ActivityKind, CpNetwork, Network};
use crate::ids::{ActivityId, LotId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RouteError {
    #[error("lot {0} has no activities")]
    UnknownLot(LotId),
    #[error("lot {0} has no unique entry activity")]
    AmbiguousEntry(LotId),
    #[error("lot {0} has more than one delivery activity")]
    AmbiguousDelivery(LotId),
    #[error("lot {0} has a route that does not reach its delivery activity")]
    NoPathToDelivery(LotId),
}

/// Enumerate all complete routes of `lot`: maximal chains respecting AND
/// expansion and one-of-OR selection, starting at the lot's entry activity
/// and ending at its delivery activity when the lot has one.
///
/// Each chain lists its activities in topological order; the list of chains
/// is sorted lexicographically by activity id, so the result is
/// deterministic.
pub fn enumerate_routes(
    net: &Network,
    lot: LotId,
) -> Result<Vec<Vec<ActivityId>>, RouteError> {
    let members: BTreeSet<ActivityId> = net.lot_members(lot).into_iter().collect();
    if members.is_empty() {
        return Err(RouteError::UnknownLot(lot));
    }
    let entry = lot_entry(net, lot, &members)?;
    let delivery = lot_delivery(net, lot, &members)?;
    let topo_index = topo_indices(net);

    let mut chains = Vec::new();
    let mut selected = BTreeSet::new();
    selected.insert(entry);
    expand(net, &members, selected, vec![entry], &mut chains);

    let mut out = Vec::with_capacity(chains.len());
    for chain in chains {
        if let Some(delivery) = delivery {
            if !chain.contains(&delivery) {
                return Err(RouteError::NoPathToDelivery(lot));
            }
        }
        let mut ids: Vec<ActivityId> = chain.into_iter().collect();
        ids.sort_by_key(|id| topo_index.get(id).copied().unwrap_or(usize::MAX));
        out.push(ids);
    }
    out.sort();
    Ok(out)
}

fn expand(
    net: &Network,
    members: &BTreeSet<ActivityId>,
    mut selected: BTreeSet<ActivityId>,
    mut pending: Vec<ActivityId>,
    out: &mut Vec<BTreeSet<ActivityId>>,
) {
    while let Some(u) = pending.pop() {
        let groups = net.relation_groups(u);
        let kind = net.activity(u).map(|a| a.kind);
        if kind == Some(ActivityKind::Or) && groups.len() >= 2 {
            for group in groups {
                let mut sel = selected.clone();
                let mut pend = pending.clone();
                for &succ in group {
                    if members.contains(&succ) && sel.insert(succ) {
                        pend.push(succ);
                    }
                }
                expand(net, members, sel, pend, out);
            }
            return;
        }
        for group in groups {
            for &succ in group {
                if members.contains(&succ) && selected.insert(succ) {
                    pending.push(succ);
                }
            }
        }
    }
    out.push(selected);
}

/// Enumerate routes on the transformed network and strip the meta nodes from
/// every chain. Used to check route preservation of the transformation.
pub fn enumerate_routes_cp(
    cp: &CpNetwork,
    lot: LotId,
) -> Result<Vec<Vec<ActivityId>>, RouteError> {
    let original = cp.strip_meta();
    let members: BTreeSet<ActivityId> = original.lot_members(lot).into_iter().collect();
    if members.is_empty() {
        return Err(RouteError::UnknownLot(lot));
    }
    let entry = lot_entry(&original, lot, &members)?;
    let delivery = lot_delivery(&original, lot, &members)?;
    let topo_index = topo_indices(&original);

    let mut succs: BTreeMap<ActivityId, Vec<ActivityId>> = BTreeMap::new();
    for &(i, j) in cp.cp_adjacency() {
        succs.entry(i).or_default().push(j);
    }

    let mut chains = Vec::new();
    let mut selected = BTreeSet::new();
    selected.insert(entry);
    expand_cp(cp, &succs, &members, selected, vec![entry], &mut chains);

    let mut out = Vec::with_capacity(chains.len());
    for chain in chains {
        if let Some(delivery) = delivery {
            if !chain.contains(&delivery) {
                return Err(RouteError::NoPathToDelivery(lot));
            }
        }
        let mut ids: Vec<ActivityId> = chain
            .into_iter()
            .filter(|id| !cp.meta_set().contains(id))
            .collect();
        ids.sort_by_key(|id| topo_index.get(id).copied().unwrap_or(usize::MAX));
        out.push(ids);
    }
    out.sort();
    Ok(out)
}

fn expand_cp(
    cp: &CpNetwork,
    succs: &BTreeMap<ActivityId, Vec<ActivityId>>,
    members: &BTreeSet<ActivityId>,
    mut selected: BTreeSet<ActivityId>,
    mut pending: Vec<ActivityId>,
    out: &mut Vec<BTreeSet<ActivityId>>,
) {
    let in_scope = |id: ActivityId| members.contains(&id) || cp.meta_set().contains(&id);
    while let Some(u) = pending.pop() {
        if let Some(children) = cp.alt_children(u) {
            // One-of-many selection; the closing arc is shared by all branches.
            let after: Vec<ActivityId> = succs
                .get(&u)
                .map(Vec::as_slice)
                .unwrap_or(&[])
                .iter()
                .copied()
                .filter(|&v| in_scope(v))
                .collect();
            for child in children {
                let mut sel = selected.clone();
                let mut pend = pending.clone();
                for &v in after.iter().chain(std::iter::once(&child)) {
                    if sel.insert(v) {
                        pend.push(v);
                    }
                }
                expand_cp(cp, succs, members, sel, pend, out);
            }
            return;
        }
        // A span selects its entry; the remaining members follow along the
        // kept internal arcs and any nested alternatives.
        if let Some(span_entry) = cp.span_entry(u) {
            if selected.insert(span_entry) {
                pending.push(span_entry);
            }
            continue;
        }
        for &v in succs.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if in_scope(v) && selected.insert(v) {
                pending.push(v);
            }
        }
    }
    out.push(selected);
}

fn lot_entry(
    net: &Network,
    lot: LotId,
    members: &BTreeSet<ActivityId>,
) -> Result<ActivityId, RouteError> {
    let preds = net.predecessors();
    let mut entries = members.iter().copied().filter(|id| {
        preds
            .get(id)
            .map(Vec::as_slice)
            .unwrap_or(&[])
            .iter()
            .all(|p| !members.contains(p))
    });
    match (entries.next(), entries.next()) {
        (Some(e), None) => Ok(e),
        _ => Err(RouteError::AmbiguousEntry(lot)),
    }
}

fn lot_delivery(
    net: &Network,
    lot: LotId,
    members: &BTreeSet<ActivityId>,
) -> Result<Option<ActivityId>, RouteError> {
    let mut deliveries = members
        .iter()
        .copied()
        .filter(|&id| net.activity(id).map(|a| a.kind) == Some(ActivityKind::Out));
    match (deliveries.next(), deliveries.next()) {
        (Some(d), None) => Ok(Some(d)),
        (None, _) => Ok(None),
        _ => Err(RouteError::AmbiguousDelivery(lot)),
    }
}

fn topo_indices(net: &Network) -> BTreeMap<ActivityId, usize> {
    net.topological_order()
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(k, id)| (id, k))
        .collect()
}
