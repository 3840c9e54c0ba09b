use num_traits::{One, Signed};

use super::{ConnectionSchedule, NodeId, RoutePath, Slot};
use crate::error::{OrnError, Result};
use crate::rational::Rational;

/// Weighted paths forming one unit of flow for a single `(a, b, t)` request.
pub type PathDistribution = Vec<(RoutePath, Rational)>;

/// An oblivious routing scheme with period `T`.
///
/// Implementors provide [`RoutingScheme::base_paths`] for origination slots in
/// `[0, T)`; [`RoutingScheme::paths`] extends it to the whole timeline by
/// shifting.
pub trait RoutingScheme: Sync {
    fn node_count(&self) -> usize;

    fn period(&self) -> usize;

    /// Upper bound on the latency of every emitted path.
    fn max_latency(&self) -> usize;

    fn base_paths(&self, a: NodeId, b: NodeId, t: usize) -> PathDistribution;

    fn paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        let period = self.period() as Slot;
        let base = t.rem_euclid(period);
        let shift = t - base;
        let mut dist = self.base_paths(a, b, base as usize);
        if shift != 0 {
            for (p, _) in dist.iter_mut() {
                *p = p.shifted(shift);
            }
        }
        dist
    }
}

/// A routing scheme given as an explicit table, indexed `[t][a][b]`.
#[derive(Debug, Clone)]
pub struct TabulatedScheme {
    node_count: usize,
    max_latency: usize,
    table: Vec<Vec<Vec<PathDistribution>>>,
}

impl TabulatedScheme {
    pub fn new(node_count: usize, table: Vec<Vec<Vec<PathDistribution>>>) -> Result<Self> {
        if table.is_empty() {
            return Err(OrnError::InvalidParameter("scheme period must be at least 1".into()));
        }
        for row in &table {
            if row.len() != node_count || row.iter().any(|r| r.len() != node_count) {
                return Err(OrnError::DimensionMismatch(format!(
                    "routing table rows must be {node_count} x {node_count}"
                )));
            }
        }
        let max_latency = table
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .map(|(p, _)| p.latency())
            .max()
            .unwrap_or(0);
        Ok(Self {
            node_count,
            max_latency,
            table,
        })
    }

    /// Tabulates any scheme over one period.
    pub fn from_scheme<S: RoutingScheme + ?Sized>(scheme: &S) -> Self {
        let n = scheme.node_count();
        let table = (0..scheme.period())
            .map(|t| {
                (0..n)
                    .map(|a| (0..n).map(|b| scheme.base_paths(a, b, t)).collect())
                    .collect()
            })
            .collect();
        Self {
            node_count: n,
            max_latency: scheme.max_latency(),
            table,
        }
    }
}

impl RoutingScheme for TabulatedScheme {
    fn node_count(&self) -> usize {
        self.node_count
    }

    fn period(&self) -> usize {
        self.table.len()
    }

    fn max_latency(&self) -> usize {
        self.max_latency
    }

    fn base_paths(&self, a: NodeId, b: NodeId, t: usize) -> PathDistribution {
        self.table[t][a][b].clone()
    }
}

/// Checks the support, unit-flow and latency conditions for every request in
/// one period.
pub fn validate_scheme<S: RoutingScheme + ?Sized>(
    scheme: &S,
    schedule: &ConnectionSchedule,
) -> Result<()> {
    let n = scheme.node_count();
    if n != schedule.node_count() {
        return Err(OrnError::DimensionMismatch(format!(
            "scheme has {n} nodes, schedule has {}",
            schedule.node_count()
        )));
    }
    for t in 0..scheme.period() {
        for a in 0..n {
            for b in 0..n {
                let dist = scheme.base_paths(a, b, t);
                let mut total = Rational::default();
                for (path, w) in &dist {
                    if w.is_negative() {
                        return Err(OrnError::InvalidParameter(format!(
                            "negative weight on request ({a}, {b}, {t})"
                        )));
                    }
                    let origin = path.origin();
                    let end = path.endpoint(schedule);
                    if origin.node != a || origin.slot != t as Slot || end.node != b {
                        return Err(OrnError::InvalidParameter(format!(
                            "path {path} does not route ({a}, {b}, {t})"
                        )));
                    }
                    if path.latency() > scheme.max_latency() {
                        return Err(OrnError::LatencyCapExceeded {
                            latency: path.latency(),
                            cap: scheme.max_latency(),
                        });
                    }
                    total += *w;
                }
                if !total.is_one() {
                    return Err(OrnError::InvalidParameter(format!(
                        "request ({a}, {b}, {t}) carries {total} units, expected 1"
                    )));
                }
            }
        }
    }
    Ok(())
}
