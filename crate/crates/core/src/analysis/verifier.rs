use num_traits::Zero;
use rayon::prelude::*;

use super::matching::max_weight_perfect_matching;
use super::{check_nodes, lcm};
use crate::error::{OrnError, Result};
use crate::model::{ConnectionSchedule, EdgeRef, NodeId, RoutingScheme, Slot};
use crate::rational::Rational;

/// Traversal mass `w[a][b]` of one physical edge class: the total weight, over
/// origination slots in one period, of `(a, b)` paths crossing any edge
/// `(sender, slot + k P)`, counted with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeightMatrix {
    /// Representative edge, `slot` in `[0, P)`.
    pub edge: EdgeRef,
    /// `P = lcm(scheme period, schedule period)`.
    pub period: usize,
    pub weights: Vec<Vec<Rational>>,
}

/// Worst-case throughput of a scheme: `rate * matching_value = 1`, with the
/// maximum attained on `witness_edge` by the permutation demand
/// `a -> witness_permutation[a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputCertificate {
    pub rate: Rational,
    pub witness_edge: EdgeRef,
    pub witness_permutation: Vec<NodeId>,
    pub matching_value: Rational,
    pub period: usize,
}

fn analysis_period<S: RoutingScheme + ?Sized>(scheme: &S, schedule: &ConnectionSchedule) -> Result<usize> {
    check_nodes(scheme.node_count(), schedule.node_count())?;
    Ok(lcm(scheme.period(), schedule.period()))
}

/// `w` for a single edge, rejecting paths longer than `latency_cap`.
pub fn edge_weights<S: RoutingScheme + ?Sized>(
    scheme: &S,
    schedule: &ConnectionSchedule,
    edge: EdgeRef,
    latency_cap: usize,
) -> Result<EdgeWeightMatrix> {
    let period = analysis_period(scheme, schedule)?;
    let n = schedule.node_count();
    let class_slot = edge.slot.rem_euclid(period as Slot);
    let mut weights = vec![vec![Rational::zero(); n]; n];
    for t in 0..period as Slot {
        for a in 0..n {
            for b in 0..n {
                for (path, w) in scheme.paths(a, b, t) {
                    if path.latency() > latency_cap {
                        return Err(OrnError::LatencyCapExceeded {
                            latency: path.latency(),
                            cap: latency_cap,
                        });
                    }
                    path.for_each_edge(schedule, |e| {
                        if e.sender == edge.sender && e.slot.rem_euclid(period as Slot) == class_slot {
                            weights[a][b] += w;
                        }
                    });
                }
            }
        }
    }
    Ok(EdgeWeightMatrix {
        edge: EdgeRef::new(edge.sender, class_slot),
        period,
        weights,
    })
}

/// `w` for every edge class, ordered by `(slot, sender)`.
pub fn all_edge_weights<S: RoutingScheme + ?Sized>(
    scheme: &S,
    schedule: &ConnectionSchedule,
) -> Result<Vec<EdgeWeightMatrix>> {
    let period = analysis_period(scheme, schedule)?;
    let n = schedule.node_count();
    let cap = scheme.max_latency();
    let classes = n * period;
    // row a of every class matrix depends only on requests from a
    let rows: Vec<Vec<Vec<Rational>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut rows = vec![vec![Rational::zero(); n]; classes];
            for t in 0..period as Slot {
                for b in 0..n {
                    for (path, w) in scheme.paths(a, b, t) {
                        if path.latency() > cap {
                            return Err(OrnError::LatencyCapExceeded {
                                latency: path.latency(),
                                cap,
                            });
                        }
                        path.for_each_edge(schedule, |e| {
                            let k = e.slot.rem_euclid(period as Slot) as usize;
                            rows[k * n + e.sender][b] += w;
                        });
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok((0..classes)
        .map(|class| EdgeWeightMatrix {
            edge: EdgeRef::new(class % n, (class / n) as Slot),
            period,
            weights: rows.iter().map(|r| r[class].clone()).collect(),
        })
        .collect())
}

/// Exact guaranteed throughput `r*`: a scheme guarantees rate `r` iff
/// `r <= r*`.
pub fn guaranteed_throughput<S: RoutingScheme + ?Sized>(
    scheme: &S,
    schedule: &ConnectionSchedule,
) -> Result<ThroughputCertificate> {
    let matrices = all_edge_weights(scheme, schedule)?;
    let period = analysis_period(scheme, schedule)?;
    let matchings = matrices
        .par_iter()
        .map(|m| max_weight_perfect_matching(&m.weights).map(|res| (m.edge, res)))
        .collect::<Result<Vec<_>>>()?;
    // first edge in (slot, sender) order among the maxima
    let (edge, best) = matchings
        .into_iter()
        .reduce(|acc, cur| if cur.1.value > acc.1.value { cur } else { acc })
        .ok_or_else(|| OrnError::InvalidParameter("no edges to verify".into()))?;
    if best.value.is_zero() {
        return Err(OrnError::InvalidParameter(
            "scheme routes no flow over physical edges; throughput is unbounded".into(),
        ));
    }
    Ok(ThroughputCertificate {
        rate: best.value.recip(),
        witness_edge: edge,
        witness_permutation: best.assignment,
        matching_value: best.value,
        period,
    })
}
