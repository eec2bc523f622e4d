//! Activity-on-node networks with AND/OR/OUT flexibility types.
//!
//! A [`Network`] is a directed acyclic graph of [`Activity`] nodes between a
//! dummy source and a dummy sink. Successor arcs are stored as *grouped
//! relation bundles*: an OR activity carries one group per alternative
//! successor relation and selecting the activity means selecting exactly one
//! of its groups, while every other activity carries at most one group whose
//! arcs are all implied. Route selection is therefore over relations, not
//! over raw arcs.

mod routes;
mod transform;

pub use routes::{enumerate_routes, enumerate_routes_cp, RouteError};
pub use transform::{to_cp_network, CpNetwork, TransformError};

use crate::ids::{ActivityId, LotId, ResourceId, Time};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Flexibility type of an activity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivityKind {
    /// All successor relations must be selected when the activity is.
    And,
    /// Exactly one successor relation must be selected when the activity is.
    Or,
    /// Delivery activity of a lot; exactly one predecessor route feeds it.
    Out,
    /// Dummy start of the whole production process.
    Source,
    /// Dummy end of the whole production process.
    Sink,
    /// Dummy node encoding a one-of-many route selection.
    MetaAlt,
    /// Dummy node spanning all members of one successor relation.
    MetaSpan,
}

impl ActivityKind {
    pub fn is_meta(self) -> bool {
        matches!(self, ActivityKind::MetaAlt | ActivityKind::MetaSpan)
    }

    pub fn is_dummy(self) -> bool {
        matches!(self, ActivityKind::Source | ActivityKind::Sink)
    }
}

impl fmt::Display for ActivityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ActivityKind::And => "and",
            ActivityKind::Or => "or",
            ActivityKind::Out => "out",
            ActivityKind::Source => "source",
            ActivityKind::Sink => "sink",
            ActivityKind::MetaAlt => "meta_alt",
            ActivityKind::MetaSpan => "meta_span",
        };
        f.write_str(s)
    }
}

/// One node of the activity-on-node network.
///
/// Fixed-duration activities are encoded as `min_duration == max_duration`.
/// Dummy and meta nodes have zero durations and no demands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activity {
    pub id: ActivityId,
    pub kind: ActivityKind,
    /// Minimum allowed processing time.
    pub min_duration: Time,
    /// Maximum allowed processing time.
    pub max_duration: Time,
    /// Demand per resource; entries are strictly positive.
    pub demands: BTreeMap<ResourceId, i64>,
    /// Delivery time; present exactly for OUT activities.
    pub due_date: Option<Time>,
    /// Owning lot; absent for source, sink and meta nodes.
    pub lot: Option<LotId>,
}

impl Activity {
    /// A real (non-dummy, non-meta) production activity.
    pub fn new(id: u32, kind: ActivityKind, min_duration: Time, max_duration: Time) -> Self {
        Activity {
            id: ActivityId(id),
            kind,
            min_duration,
            max_duration,
            demands: BTreeMap::new(),
            due_date: None,
            lot: None,
        }
    }

    pub fn with_lot(mut self, lot: u32) -> Self {
        self.lot = Some(LotId(lot));
        self
    }

    pub fn with_due(mut self, due: Time) -> Self {
        self.due_date = Some(due);
        self
    }

    pub fn with_demand(mut self, resource: u32, quantity: i64) -> Self {
        self.demands.insert(ResourceId(resource), quantity);
        self
    }

    pub fn is_fixed_duration(&self) -> bool {
        self.min_duration == self.max_duration
    }
}

/// AND/OR/OUT precedence graph with grouped successor relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Network {
    activities: BTreeMap<ActivityId, Activity>,
    /// Grouped successor bundles per activity. OR activities may have several
    /// groups (one per alternative relation); all other kinds at most one.
    relations: BTreeMap<ActivityId, Vec<Vec<ActivityId>>>,
    lot_count: u32,
}

impl Network {
    pub fn new(
        activities: impl IntoIterator<Item = Activity>,
        relations: impl IntoIterator<Item = (ActivityId, Vec<Vec<ActivityId>>)>,
        lot_count: u32,
    ) -> Self {
        Network {
            activities: activities.into_iter().map(|a| (a.id, a)).collect(),
            relations: relations.into_iter().collect(),
            lot_count,
        }
    }

    pub fn activities(&self) -> impl Iterator<Item = &Activity> {
        self.activities.values()
    }

    pub fn activity(&self, id: ActivityId) -> Option<&Activity> {
        self.activities.get(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = ActivityId> + '_ {
        self.activities.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.activities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.activities.is_empty()
    }

    pub fn lot_count(&self) -> u32 {
        self.lot_count
    }

    /// Successor relation groups of `id` (empty slice for the sink).
    pub fn relation_groups(&self, id: ActivityId) -> &[Vec<ActivityId>] {
        self.relations.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn relations(&self) -> &BTreeMap<ActivityId, Vec<Vec<ActivityId>>> {
        &self.relations
    }

    /// The unique SOURCE activity, if exactly one exists.
    pub fn source(&self) -> Option<ActivityId> {
        self.unique_of_kind(ActivityKind::Source)
    }

    /// The unique SINK activity, if exactly one exists.
    pub fn sink(&self) -> Option<ActivityId> {
        self.unique_of_kind(ActivityKind::Sink)
    }

    fn unique_of_kind(&self, kind: ActivityKind) -> Option<ActivityId> {
        let mut found = None;
        for a in self.activities.values() {
            if a.kind == kind {
                if found.is_some() {
                    return None;
                }
                found = Some(a.id);
            }
        }
        found
    }

    /// Delivery activities (the set L).
    pub fn delivery_set(&self) -> BTreeSet<ActivityId> {
        self.activities
            .values()
            .filter(|a| a.kind == ActivityKind::Out)
            .map(|a| a.id)
            .collect()
    }

    /// All direct successors of `id`, over all relation groups.
    pub fn direct_successors(&self, id: ActivityId) -> impl Iterator<Item = ActivityId> + '_ {
        self.relation_groups(id).iter().flatten().copied()
    }

    /// All arcs (i, j) implied by the relation groups.
    pub fn arcs(&self) -> Vec<(ActivityId, ActivityId)> {
        let mut arcs = Vec::new();
        for (&from, groups) in &self.relations {
            for group in groups {
                for &to in group {
                    arcs.push((from, to));
                }
            }
        }
        arcs
    }

    /// Predecessor lists per activity.
    pub fn predecessors(&self) -> BTreeMap<ActivityId, Vec<ActivityId>> {
        let mut preds: BTreeMap<ActivityId, Vec<ActivityId>> =
            self.ids().map(|id| (id, Vec::new())).collect();
        for (from, to) in self.arcs() {
            if let Some(v) = preds.get_mut(&to) {
                v.push(from);
            }
        }
        preds
    }

    /// Topological order of all activities; `None` if the graph has a cycle
    /// or an arc references a missing activity.
    pub fn topological_order(&self) -> Option<Vec<ActivityId>> {
        let mut indegree: BTreeMap<ActivityId, usize> = self.ids().map(|id| (id, 0)).collect();
        for (_, to) in self.arcs() {
            *indegree.get_mut(&to)? += 1;
        }
        let mut queue: VecDeque<ActivityId> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&id, _)| id)
            .collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(id) = queue.pop_front() {
            order.push(id);
            for succ in self.direct_successors(id) {
                let d = indegree.get_mut(&succ)?;
                *d -= 1;
                if *d == 0 {
                    queue.push_back(succ);
                }
            }
        }
        (order.len() == self.len()).then_some(order)
    }

    /// Activities reachable from `start` along relation arcs.
    pub fn reachable_from(&self, start: ActivityId) -> BTreeSet<ActivityId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            for succ in self.direct_successors(id) {
                if !seen.contains(&succ) {
                    stack.push(succ);
                }
            }
        }
        seen
    }

    /// Members of lot `lot`, in ascending id order.
    pub fn lot_members(&self, lot: LotId) -> Vec<ActivityId> {
        self.activities
            .values()
            .filter(|a| a.lot == Some(lot))
            .map(|a| a.id)
            .collect()
    }
}

/// A violated network invariant, naming the offending activities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// The precedence graph contains a cycle through these activities.
    Cycle { ids: Vec<ActivityId> },
    /// An arc or group references an activity that does not exist.
    UnknownActivity { from: ActivityId, to: ActivityId },
    /// Not exactly one SOURCE activity.
    SourceCount { count: usize },
    /// Not exactly one SINK activity.
    SinkCount { count: usize },
    /// Activity is not reachable from the source.
    Unreachable { id: ActivityId },
    /// Activity cannot reach the sink.
    DeadEnd { id: ActivityId },
    /// OUT activity without any incoming arc.
    OutWithoutPredecessor { id: ActivityId },
    /// min_duration > max_duration or negative durations.
    DurationBounds { id: ActivityId },
    /// Dummy or meta node with nonzero duration or demands.
    DummyNotZero { id: ActivityId },
    /// due_date present but kind is not OUT, or vice versa.
    DueDateKindMismatch { id: ActivityId },
    /// Source, sink or meta node carries a lot tag, or a real activity lacks one.
    LotTagging { id: ActivityId },
    /// Lot id out of range `0..lot_count`.
    LotRange { id: ActivityId, lot: LotId },
    /// Non-OR activity with more than one successor relation group.
    MultipleGroups { id: ActivityId },
    /// Relation group with no members.
    EmptyRelation { id: ActivityId },
    /// OR relation group with more than one direct successor.
    MultiEntryRelation { id: ActivityId },
    /// Alternative relations of an OR node do not form disjoint subtrees
    /// merging in a single common end node.
    NonTreeRelations { id: ActivityId, detail: String },
    /// Meta nodes are produced by the transformation and are not valid input.
    MetaInInput { id: ActivityId },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Cycle { ids } => {
                write!(f, "cycle: ")?;
                for (k, id) in ids.iter().enumerate() {
                    if k > 0 {
                        write!(f, " -> ")?;
                    }
                    write!(f, "{id}")?;
                }
                Ok(())
            }
            Diagnostic::UnknownActivity { from, to } => {
                write!(f, "unknown activity: arc ({from}, {to})")
            }
            Diagnostic::SourceCount { count } => write!(f, "source count: {count}"),
            Diagnostic::SinkCount { count } => write!(f, "sink count: {count}"),
            Diagnostic::Unreachable { id } => write!(f, "unreachable: {id}"),
            Diagnostic::DeadEnd { id } => write!(f, "dead end: {id}"),
            Diagnostic::OutWithoutPredecessor { id } => {
                write!(f, "out without predecessor: {id}")
            }
            Diagnostic::DurationBounds { id } => write!(f, "duration bounds: {id}"),
            Diagnostic::DummyNotZero { id } => write!(f, "dummy not zero: {id}"),
            Diagnostic::DueDateKindMismatch { id } => {
                write!(f, "due date/kind mismatch: {id}")
            }
            Diagnostic::LotTagging { id } => write!(f, "lot tagging: {id}"),
            Diagnostic::LotRange { id, lot } => write!(f, "lot out of range: {id} (lot {lot})"),
            Diagnostic::MultipleGroups { id } => write!(f, "multiple groups on non-OR: {id}"),
            Diagnostic::EmptyRelation { id } => write!(f, "empty relation: {id}"),
            Diagnostic::MultiEntryRelation { id } => {
                write!(f, "multi-entry relation: {id}")
            }
            Diagnostic::NonTreeRelations { id, detail } => {
                write!(f, "non-tree relations at {id}: {detail}")
            }
            Diagnostic::MetaInInput { id } => write!(f, "meta node in input: {id}"),
        }
    }
}

/// Check every structural invariant of `net`.
///
/// Returns an empty list iff the network is well formed. Each entry names the
/// violated invariant and the activities involved.
pub fn validate_network(net: &Network) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    // Arc endpoints must exist before any graph traversal makes sense.
    let mut endpoints_ok = true;
    for (from, to) in net.arcs() {
        if net.activity(to).is_none() || net.activity(from).is_none() {
            out.push(Diagnostic::UnknownActivity { from, to });
            endpoints_ok = false;
        }
    }
    if !endpoints_ok {
        return out;
    }

    for a in net.activities() {
        if a.kind.is_meta() {
            out.push(Diagnostic::MetaInInput { id: a.id });
        }
        if a.min_duration < 0 || a.min_duration > a.max_duration {
            out.push(Diagnostic::DurationBounds { id: a.id });
        }
        if (a.kind.is_dummy() || a.kind.is_meta())
            && (a.min_duration != 0 || a.max_duration != 0 || !a.demands.is_empty())
        {
            out.push(Diagnostic::DummyNotZero { id: a.id });
        }
        if (a.kind == ActivityKind::Out) != a.due_date.is_some() {
            out.push(Diagnostic::DueDateKindMismatch { id: a.id });
        }
        let needs_lot = !(a.kind.is_dummy() || a.kind.is_meta());
        if needs_lot != a.lot.is_some() {
            out.push(Diagnostic::LotTagging { id: a.id });
        }
        if let Some(lot) = a.lot {
            if lot.0 >= net.lot_count {
                out.push(Diagnostic::LotRange { id: a.id, lot });
            }
        }
        let groups = net.relation_groups(a.id);
        if a.kind != ActivityKind::Or && groups.len() > 1 {
            out.push(Diagnostic::MultipleGroups { id: a.id });
        }
        for group in groups {
            if group.is_empty() {
                out.push(Diagnostic::EmptyRelation { id: a.id });
            }
            if a.kind == ActivityKind::Or && groups.len() >= 2 && group.len() > 1 {
                out.push(Diagnostic::MultiEntryRelation { id: a.id });
            }
        }
    }

    let sources = net
        .activities()
        .filter(|a| a.kind == ActivityKind::Source)
        .count();
    if sources != 1 {
        out.push(Diagnostic::SourceCount { count: sources });
    }
    let sinks = net
        .activities()
        .filter(|a| a.kind == ActivityKind::Sink)
        .count();
    if sinks != 1 {
        out.push(Diagnostic::SinkCount { count: sinks });
    }

    match net.topological_order() {
        Some(_) => {}
        None => {
            out.push(Diagnostic::Cycle {
                ids: find_cycle(net),
            });
            // Reachability and relation-shape checks assume a DAG.
            return out;
        }
    }

    if let (Some(source), Some(sink)) = (net.source(), net.sink()) {
        let from_source = net.reachable_from(source);
        for id in net.ids() {
            if !from_source.contains(&id) {
                out.push(Diagnostic::Unreachable { id });
            }
        }
        let to_sink = reaches(net, sink);
        for id in net.ids() {
            if !to_sink.contains(&id) {
                out.push(Diagnostic::DeadEnd { id });
            }
        }
    }

    let preds = net.predecessors();
    for a in net.activities() {
        if a.kind == ActivityKind::Out && preds.get(&a.id).is_none_or(Vec::is_empty) {
            out.push(Diagnostic::OutWithoutPredecessor { id: a.id });
        }
    }

    // Alternative relations must form disjoint subtrees with a unique join.
    for a in net.activities() {
        if a.kind == ActivityKind::Or && net.relation_groups(a.id).len() >= 2 {
            if let Err(detail) = transform::relation_shape(net, a.id) {
                out.push(Diagnostic::NonTreeRelations { id: a.id, detail });
            }
        }
    }

    out
}

/// Activities from which `target` is reachable (including itself).
fn reaches(net: &Network, target: ActivityId) -> BTreeSet<ActivityId> {
    let preds = net.predecessors();
    let mut seen = BTreeSet::new();
    let mut stack = vec![target];
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        if let Some(ps) = preds.get(&id) {
            for &p in ps {
                if !seen.contains(&p) {
                    stack.push(p);
                }
            }
        }
    }
    seen
}

/// Locate one cycle for diagnostics (graph known to be cyclic).
fn find_cycle(net: &Network) -> Vec<ActivityId> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color: BTreeMap<ActivityId, Color> =
        net.ids().map(|id| (id, Color::White)).collect();
    let mut parent: BTreeMap<ActivityId, ActivityId> = BTreeMap::new();

    fn dfs(
        net: &Network,
        u: ActivityId,
        color: &mut BTreeMap<ActivityId, Color>,
        parent: &mut BTreeMap<ActivityId, ActivityId>,
    ) -> Option<(ActivityId, ActivityId)> {
        color.insert(u, Color::Gray);
        for v in net.direct_successors(u) {
            match color.get(&v) {
                Some(Color::White) => {
                    parent.insert(v, u);
                    if let Some(found) = dfs(net, v, color, parent) {
                        return Some(found);
                    }
                }
                Some(Color::Gray) => return Some((u, v)),
                _ => {}
            }
        }
        color.insert(u, Color::Black);
        None
    }

    for id in net.ids().collect::<Vec<_>>() {
        if color[&id] == Color::White {
            if let Some((back_from, back_to)) = dfs(net, id, &mut color, &mut parent) {
                let mut cycle = vec![back_to];
                let mut cur = back_from;
                while cur != back_to {
                    cycle.push(cur);
                    match parent.get(&cur) {
                        Some(&p) => cur = p,
                        None => break,
                    }
                }
                cycle.push(back_to);
                cycle.reverse();
                return cycle;
            }
        }
    }
    Vec::new()
}

#[cfg(test)]
mod tests;
