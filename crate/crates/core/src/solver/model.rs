//! Compiled constraint model: the instance's transformed network flattened
//! into index-addressed tables the propagator works on.

use crate::ids::{ActivityId, ResourceId, Time};
use crate::instance::{Instance, ProblemClass};
use crate::network::{to_cp_network, ActivityKind, CpNetwork};
use crate::solver::{ConfigError, SolverConfig};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    /// end(i) = start(j): no idle between chained activities of one lot.
    EndAtStart,
    /// end(i) <= start(j): idle allowed.
    EndBeforeStart,
}

#[derive(Debug, Clone, Copy)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub kind: ArcKind,
}

#[derive(Debug, Clone)]
pub struct AltCon {
    pub meta: usize,
    /// One child per relation: the relation's span node or single member.
    pub children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SpanCon {
    pub span: usize,
    pub members: Vec<usize>,
    /// The relation's first activity; present iff the block is active.
    pub entry: usize,
}

#[derive(Debug, Clone)]
pub struct ModelAct {
    pub id: ActivityId,
    pub kind: ActivityKind,
    pub min_duration: Time,
    pub max_duration: Time,
    pub demands: Vec<(usize, i64)>,
    pub due: Option<Time>,
}

#[derive(Debug, Clone)]
pub struct ModelResource {
    pub id: ResourceId,
    pub capacity: i64,
    pub balanced: bool,
    pub renewable: bool,
}

/// Index-addressed view of one instance under one problem class.
pub struct Model {
    pub acts: Vec<ModelAct>,
    pub index: BTreeMap<ActivityId, usize>,
    pub arcs: Vec<Arc>,
    pub alternatives: Vec<AltCon>,
    pub spans: Vec<SpanCon>,
    pub resources: Vec<ModelResource>,
    /// Per resource: (activity index, quantity) with quantity > 0.
    pub usage: Vec<Vec<(usize, i64)>>,
    pub source: usize,
    pub sink: usize,
    pub deliveries: Vec<usize>,
    pub horizon: Time,
    pub class: ProblemClass,
    pub cp: CpNetwork,
}

impl Model {
    pub fn compile(inst: &Instance, cfg: &SolverConfig) -> Result<Model, ConfigError> {
        inst.validate()
            .map_err(|e| ConfigError::MalformedInstance(e.to_string()))?;
        let cp = to_cp_network(inst.network())
            .map_err(|e| ConfigError::MalformedInstance(e.to_string()))?;
        let net = cp.base();

        let mut ids: Vec<ActivityId> = net.ids().collect();
        ids.sort();
        let index: BTreeMap<ActivityId, usize> =
            ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();

        let resources: Vec<ModelResource> = inst
            .resources()
            .iter()
            .map(|r| ModelResource {
                id: r.id,
                capacity: r.capacity,
                balanced: r.balanced,
                renewable: r.renewable,
            })
            .collect();
        let rindex: BTreeMap<ResourceId, usize> = resources
            .iter()
            .enumerate()
            .map(|(k, r)| (r.id, k))
            .collect();

        let acts: Vec<ModelAct> = ids
            .iter()
            .map(|&id| {
                let a = net.activity(id).unwrap();
                ModelAct {
                    id,
                    kind: a.kind,
                    min_duration: a.min_duration,
                    max_duration: a.max_duration,
                    demands: a
                        .demands
                        .iter()
                        .filter(|(_, &q)| q > 0)
                        .map(|(rid, &q)| (rindex[rid], q))
                        .collect(),
                    due: a.due_date,
                }
            })
            .collect();

        let source = index[&net.source().expect("validated network has a source")];
        let sink = index[&net.sink().expect("validated network has a sink")];
        let deliveries: Vec<usize> = acts
            .iter()
            .enumerate()
            .filter(|(_, a)| a.kind == ActivityKind::Out)
            .map(|(k, _)| k)
            .collect();

        // Arc kinds: fixed-duration classes allow idle everywhere; the
        // flexible class forbids idle inside lots but allows it at the
        // source and sink boundaries.
        let chained = inst.class.has_time_flexibility();
        let arcs: Vec<Arc> = cp
            .cp_adjacency()
            .iter()
            .map(|&(i, j)| {
                let from = index[&i];
                let to = index[&j];
                let kind = if chained && from != source && to != sink {
                    ArcKind::EndAtStart
                } else {
                    ArcKind::EndBeforeStart
                };
                Arc { from, to, kind }
            })
            .collect();

        let mut alternatives = Vec::new();
        let mut spans = Vec::new();
        for alt in cp.alts() {
            let children = alt
                .relations
                .iter()
                .map(|r| index[&r.span.unwrap_or(r.entry)])
                .collect();
            alternatives.push(AltCon {
                meta: index[&alt.meta],
                children,
            });
            for rel in &alt.relations {
                if let Some(span) = rel.span {
                    spans.push(SpanCon {
                        span: index[&span],
                        members: rel.members.iter().map(|m| index[m]).collect(),
                        entry: index[&rel.entry],
                    });
                }
            }
        }

        let mut usage: Vec<Vec<(usize, i64)>> = vec![Vec::new(); resources.len()];
        for (k, a) in acts.iter().enumerate() {
            for &(r, q) in &a.demands {
                usage[r].push((k, q));
            }
        }

        let _ = cfg;
        Ok(Model {
            acts,
            index,
            arcs,
            alternatives,
            spans,
            resources,
            usage,
            source,
            sink,
            deliveries,
            horizon: inst.horizon(),
            class: inst.class,
            cp,
        })
    }

    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_meta(&self, idx: usize) -> bool {
        self.acts[idx].kind.is_meta()
    }

    pub fn is_real(&self, idx: usize) -> bool {
        let k = self.acts[idx].kind;
        !k.is_meta() && !k.is_dummy()
    }
}
