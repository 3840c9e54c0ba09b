use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::{Signed, Zero};

use super::{ConnectionSchedule, DemandFunction, EdgeRef, RoutePath, RoutingScheme, Slot};
use crate::error::{OrnError, Result};
use crate::rational::{one, Rational};

/// A finite nonnegative weighting of paths.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Flow {
    weights: BTreeMap<RoutePath, Rational>,
}

impl Flow {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight` to `path`. Zero weights are dropped.
    pub fn add_path(&mut self, path: RoutePath, weight: Rational) -> Result<()> {
        if weight.is_negative() {
            return Err(OrnError::InvalidParameter(format!(
                "negative flow weight {weight}"
            )));
        }
        if weight.is_zero() {
            return Ok(());
        }
        *self.weights.entry(path).or_default() += weight;
        Ok(())
    }

    /// Pointwise sum of two flows.
    pub fn merged(&self, other: &Flow) -> Flow {
        let mut out = self.clone();
        for (p, w) in &other.weights {
            *out.weights.entry(p.clone()).or_default() += *w;
        }
        out
    }

    pub fn weight(&self, path: &RoutePath) -> Rational {
        self.weights.get(path).copied().unwrap_or_default()
    }

    pub fn paths(&self) -> impl Iterator<Item = (&RoutePath, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    pub fn max_latency(&self) -> Option<usize> {
        self.weights.keys().map(RoutePath::latency).max()
    }

    /// Load on every physical edge touched by the flow.
    pub fn edge_loads(&self, schedule: &ConnectionSchedule) -> BTreeMap<EdgeRef, Rational> {
        let mut loads: BTreeMap<EdgeRef, Rational> = BTreeMap::new();
        for (path, w) in &self.weights {
            path.for_each_edge(schedule, |e| *loads.entry(e).or_default() += *w);
        }
        loads
    }
}

/// Amount of flow crossing one physical edge.
pub fn edge_flow(flow: &Flow, schedule: &ConnectionSchedule, edge: EdgeRef) -> Rational {
    let mut total = Rational::zero();
    for (path, w) in flow.paths() {
        path.for_each_edge(schedule, |e| {
            if e == edge {
                total += *w;
            }
        });
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Most loaded edge; `None` for a flow that uses no physical edge.
    pub worst_edge: Option<EdgeRef>,
    pub worst_load: Rational,
}

/// A flow is feasible when every physical edge carries at most one unit.
pub fn is_feasible(flow: &Flow, schedule: &ConnectionSchedule) -> FeasibilityReport {
    let loads = flow.edge_loads(schedule);
    let mut worst: Option<(EdgeRef, Rational)> = None;
    for (e, load) in loads {
        if worst.as_ref().is_none_or(|(_, w)| load > *w) {
            worst = Some((e, load));
        }
    }
    let (worst_edge, worst_load) = match worst {
        Some((e, l)) => (Some(e), l),
        None => (None, Rational::zero()),
    };
    FeasibilityReport {
        feasible: worst_load <= one(),
        worst_edge,
        worst_load,
    }
}

/// Sums `D(t, a, b) * R[a, b, t]` over origination slots in `window`.
pub fn induce_flow<S: RoutingScheme + ?Sized>(
    scheme: &S,
    demand: &DemandFunction,
    window: Range<Slot>,
) -> Result<Flow> {
    let length = (window.end - window.start).max(0) as usize;
    if length < scheme.period() {
        return Err(OrnError::WindowTooShort {
            window: length,
            period: scheme.period(),
        });
    }
    let n = scheme.node_count();
    if demand.node_count() != n {
        return Err(OrnError::DimensionMismatch(format!(
            "demand has {} nodes, scheme has {n}",
            demand.node_count()
        )));
    }
    let mut flow = Flow::new();
    for t in window {
        let matrix = demand.at(t);
        for a in 0..n {
            for b in 0..n {
                let d = matrix.get(a, b);
                if d.is_zero() {
                    continue;
                }
                for (path, w) in scheme.paths(a, b, t) {
                    flow.add_path(path, d * w)?;
                }
            }
        }
    }
    Ok(flow)
}
