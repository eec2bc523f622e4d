//! Meta-node transformation preparing a network for interval-based solving.
//!
//! Every OR activity with two or more successor relations is linked to one
//! zero-length META_ALT node encoding the one-of-many selection; every
//! relation with two or more member activities is covered by one META_SPAN
//! node that stands for the whole relation block. The OR's entry arcs and the
//! relation's closing arcs into the common end node are replaced by
//! `(or, meta_alt)` and, where presence classes permit, `(meta_alt, join)`
//! arcs; arcs internal to a relation are kept.

use super::{Activity, ActivityKind, Diagnostic, Network, validate_network};
use crate::ids::{ActivityId, LotId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("network is not valid: {0:?}")]
    InvalidNetwork(Vec<Diagnostic>),
    #[error("or node {or} has a successor relation of length 0")]
    EmptyRelation { or: ActivityId },
}

/// One successor relation of a transformed OR node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInfo {
    /// First activity of the relation (the direct successor of the OR node).
    pub entry: ActivityId,
    /// All activities of the relation, entry included.
    pub members: BTreeSet<ActivityId>,
    /// Members whose completion closes the relation block.
    pub lasts: BTreeSet<ActivityId>,
    /// META_SPAN node covering the relation; present iff `members.len() >= 2`.
    pub span: Option<ActivityId>,
}

/// Transformation data for one OR node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltInfo {
    pub or_node: ActivityId,
    pub meta: ActivityId,
    pub join: ActivityId,
    pub relations: Vec<RelationInfo>,
}

/// The meta-node-transformed network consumed by the solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpNetwork {
    base: Network,
    cp_adjacency: BTreeSet<(ActivityId, ActivityId)>,
    alt_starts: BTreeMap<ActivityId, BTreeSet<ActivityId>>,
    alt_ends: BTreeMap<ActivityId, BTreeSet<ActivityId>>,
    span_sets: BTreeMap<ActivityId, BTreeSet<ActivityId>>,
    meta_set: BTreeSet<ActivityId>,
    alts: Vec<AltInfo>,
}

impl CpNetwork {
    /// The underlying network, augmented with the meta activities.
    pub fn base(&self) -> &Network {
        &self.base
    }

    pub fn cp_adjacency(&self) -> &BTreeSet<(ActivityId, ActivityId)> {
        &self.cp_adjacency
    }

    /// Alternative start activities S: per META_ALT node, the first
    /// activity of each of its successor relations.
    pub fn alt_starts(&self) -> &BTreeMap<ActivityId, BTreeSet<ActivityId>> {
        &self.alt_starts
    }

    /// Alternative end activities E: per META_ALT node, the activities whose
    /// completion closes one of its relations.
    pub fn alt_ends(&self) -> &BTreeMap<ActivityId, BTreeSet<ActivityId>> {
        &self.alt_ends
    }

    /// Span sets G: per META_SPAN node, all member activities of the
    /// relation it covers.
    pub fn span_sets(&self) -> &BTreeMap<ActivityId, BTreeSet<ActivityId>> {
        &self.span_sets
    }

    /// The set M of all meta activities.
    pub fn meta_set(&self) -> &BTreeSet<ActivityId> {
        &self.meta_set
    }

    /// Per-OR transformation details, in ascending OR-node order.
    pub fn alts(&self) -> &[AltInfo] {
        &self.alts
    }

    /// Children of a META_ALT node in relation order: the relation's span
    /// node when one exists, otherwise its single member.
    pub fn alt_children(&self, meta: ActivityId) -> Option<Vec<ActivityId>> {
        self.alts.iter().find(|a| a.meta == meta).map(|a| {
            a.relations
                .iter()
                .map(|r| r.span.unwrap_or(r.entry))
                .collect()
        })
    }

    /// The entry member of a META_SPAN node's relation.
    pub fn span_entry(&self, span: ActivityId) -> Option<ActivityId> {
        self.alts.iter().find_map(|a| {
            a.relations
                .iter()
                .find(|r| r.span == Some(span))
                .map(|r| r.entry)
        })
    }

    /// The original network: the base with all meta activities removed.
    pub fn strip_meta(&self) -> Network {
        Network::new(
            self.base
                .activities()
                .filter(|a| !a.kind.is_meta())
                .cloned()
                .collect::<Vec<_>>(),
            self.base
                .relations()
                .iter()
                .map(|(id, groups)| (*id, groups.clone())),
            self.base.lot_count(),
        )
    }
}

/// Analyze the successor relations of OR node `or`.
///
/// Returns per-relation `(entry, members, lasts)` plus the unique common end
/// node (join), or a description of the shape violation.
pub(super) fn relation_shape(net: &Network, or: ActivityId) -> Result<ShapeData, String> {
    let groups = net.relation_groups(or);
    let mut entries = Vec::with_capacity(groups.len());
    for group in groups {
        match group.as_slice() {
            [entry] => entries.push(*entry),
            [] => return Err("relation of length 0".to_string()),
            _ => return Err("relation with multiple entry activities".to_string()),
        }
    }

    let reaches: Vec<BTreeSet<ActivityId>> =
        entries.iter().map(|&e| net.reachable_from(e)).collect();
    let mut shared = BTreeSet::new();
    for (k, reach) in reaches.iter().enumerate() {
        for &id in reach {
            if reaches
                .iter()
                .enumerate()
                .any(|(k2, r2)| k2 != k && r2.contains(&id))
            {
                shared.insert(id);
            }
        }
    }

    let mut relations = Vec::with_capacity(entries.len());
    for (&entry, reach) in entries.iter().zip(&reaches) {
        let members: BTreeSet<ActivityId> =
            reach.difference(&shared).copied().collect();
        if members.is_empty() {
            return Err(format!("relation with entry {entry} has no exclusive members"));
        }
        if !members.contains(&entry) {
            return Err(format!("entry {entry} is shared between relations"));
        }
        relations.push((entry, members));
    }

    // The join is the unique shared node that member arcs feed into.
    let mut joins = BTreeSet::new();
    for (_, members) in &relations {
        for &u in members {
            for v in net.direct_successors(u) {
                if shared.contains(&v) {
                    joins.insert(v);
                }
            }
        }
    }
    let join = match joins.len() {
        1 => *joins.iter().next().unwrap(),
        0 => return Err("relations never merge in a common end node".to_string()),
        _ => {
            return Err(format!(
                "relations merge in {} distinct end nodes",
                joins.len()
            ))
        }
    };

    // Members must not be entered from outside their own relation.
    let preds = net.predecessors();
    for (_, members) in &relations {
        for &u in members {
            for &p in preds.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if p != or && !members.contains(&p) {
                    return Err(format!("member {u} has predecessor {p} outside its relation"));
                }
            }
        }
    }

    let relations = relations
        .into_iter()
        .map(|(entry, members)| {
            let lasts: BTreeSet<ActivityId> = members
                .iter()
                .copied()
                .filter(|&u| net.direct_successors(u).any(|v| v == join))
                .collect();
            (entry, members, lasts)
        })
        .collect();

    Ok(ShapeData { relations, join })
}

pub(super) struct ShapeData {
    /// Per relation: entry, members, lasts.
    pub relations: Vec<(ActivityId, BTreeSet<ActivityId>, BTreeSet<ActivityId>)>,
    pub join: ActivityId,
}

/// Transform `net` into its meta-node form.
///
/// Meta ids are assigned contiguously after the largest real activity id
/// (skipping any id already in use), all META_ALT nodes before all META_SPAN
/// nodes, in ascending OR-node order.
pub fn to_cp_network(net: &Network) -> Result<CpNetwork, TransformError> {
    let diags = validate_network(net);
    if !diags.is_empty() {
        if diags
            .iter()
            .any(|d| matches!(d, Diagnostic::EmptyRelation { .. }))
        {
            let or = diags
                .iter()
                .find_map(|d| match d {
                    Diagnostic::EmptyRelation { id } => Some(*id),
                    _ => None,
                })
                .unwrap();
            return Err(TransformError::EmptyRelation { or });
        }
        return Err(TransformError::InvalidNetwork(diags));
    }

    let or_nodes: Vec<ActivityId> = net
        .activities()
        .filter(|a| a.kind == ActivityKind::Or && net.relation_groups(a.id).len() >= 2)
        .map(|a| a.id)
        .collect();

    let mut shapes = BTreeMap::new();
    for &or in &or_nodes {
        // validate_network already vetted the shape.
        let shape = relation_shape(net, or).expect("validated relation shape");
        shapes.insert(or, shape);
    }

    let used: BTreeSet<ActivityId> = net.ids().collect();
    let max_real = net
        .activities()
        .filter(|a| !a.kind.is_dummy())
        .map(|a| a.id.0)
        .max()
        .unwrap_or(0);
    let mut next_id = max_real + 1;
    let mut fresh_id = move |used: &BTreeSet<ActivityId>| {
        while used.contains(&ActivityId(next_id)) {
            next_id += 1;
        }
        let id = ActivityId(next_id);
        next_id += 1;
        id
    };

    let mut taken = used.clone();
    let mut alt_ids = BTreeMap::new();
    for &or in &or_nodes {
        let id = fresh_id(&taken);
        taken.insert(id);
        alt_ids.insert(or, id);
    }
    let mut span_ids: BTreeMap<(ActivityId, usize), ActivityId> = BTreeMap::new();
    for &or in &or_nodes {
        for (k, (_, members, _)) in shapes[&or].relations.iter().enumerate() {
            if members.len() >= 2 {
                let id = fresh_id(&taken);
                taken.insert(id);
                span_ids.insert((or, k), id);
            }
        }
    }

    // Innermost enclosing relation per OR node, for closing-arc placement.
    let enclosing_members = |or: ActivityId| -> Option<&BTreeSet<ActivityId>> {
        shapes
            .values()
            .flat_map(|s| s.relations.iter())
            .filter(|(_, members, _)| members.contains(&or))
            .map(|(_, members, _)| members)
            .min_by_key(|members| members.len())
    };

    let mut cp_adjacency: BTreeSet<(ActivityId, ActivityId)> = net.arcs().into_iter().collect();
    let mut alt_starts = BTreeMap::new();
    let mut alt_ends = BTreeMap::new();
    let mut span_sets = BTreeMap::new();
    let mut alts = Vec::new();

    for &or in &or_nodes {
        let shape = &shapes[&or];
        let meta = alt_ids[&or];
        let join = shape.join;

        let mut starts = BTreeSet::new();
        let mut ends = BTreeSet::new();
        let mut relations = Vec::new();
        for (k, (entry, members, lasts)) in shape.relations.iter().enumerate() {
            starts.insert(*entry);
            ends.extend(lasts.iter().copied());
            cp_adjacency.remove(&(or, *entry));
            for &u in members {
                cp_adjacency.remove(&(u, join));
            }
            let span = span_ids.get(&(or, k)).copied();
            if let Some(span) = span {
                span_sets.insert(span, members.clone());
            }
            relations.push(RelationInfo {
                entry: *entry,
                members: members.clone(),
                lasts: lasts.clone(),
                span,
            });
        }

        cp_adjacency.insert((or, meta));
        // The closing arc carries presence equality, so it is only placed
        // when the join lives in the same presence class as the OR node:
        // either both are outside every relation, or the join belongs to the
        // same enclosing relation. Otherwise the enclosing span already
        // covers the block's end.
        let closes = match enclosing_members(or) {
            None => true,
            Some(members) => members.contains(&join),
        };
        if closes {
            cp_adjacency.insert((meta, join));
        }

        alt_starts.insert(meta, starts);
        alt_ends.insert(meta, ends);
        alts.push(AltInfo {
            or_node: or,
            meta,
            join,
            relations,
        });
    }

    let mut activities: Vec<Activity> = net.activities().cloned().collect();
    let mut meta_set = BTreeSet::new();
    for (&or, &meta) in &alt_ids {
        let _ = or;
        activities.push(meta_activity(meta, ActivityKind::MetaAlt));
        meta_set.insert(meta);
    }
    for &span in span_ids.values() {
        activities.push(meta_activity(span, ActivityKind::MetaSpan));
        meta_set.insert(span);
    }

    let base = Network::new(
        activities,
        net.relations().iter().map(|(id, g)| (*id, g.clone())),
        net.lot_count(),
    );

    Ok(CpNetwork {
        base,
        cp_adjacency,
        alt_starts,
        alt_ends,
        span_sets,
        meta_set,
        alts,
    })
}

fn meta_activity(id: ActivityId, kind: ActivityKind) -> Activity {
    Activity {
        id,
        kind,
        min_duration: 0,
        max_duration: 0,
        demands: BTreeMap::new(),
        due_date: None,
        lot: None::<LotId>,
    }
}
