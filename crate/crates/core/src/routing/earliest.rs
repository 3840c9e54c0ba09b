use super::{SemiPath, SemiPathKind};
use crate::error::{OrnError, Result};
use crate::model::{
    ConnectionSchedule, NodeId, PathDistribution, RoutePath, RoutingScheme, Slot, Step, VirtualNode,
};
use crate::rational::Rational;

/// VLB over earliest-arrival semi-paths, for schedules without a dedicated
/// scheme (primitive-root, unrolled, explicit).
///
/// Each semi-path reaches the target timeline as early as possible, breaking
/// ties by fewer hops and then by lower predecessor node. The second stage
/// starts where the first arrives.
#[derive(Debug, Clone)]
pub struct EarliestArrivalRouting {
    schedule: ConnectionSchedule,
    /// Steps indexed `[t mod T][a][c]`.
    steps: Vec<Vec<Vec<Vec<Step>>>>,
    max_semi: usize,
}

impl EarliestArrivalRouting {
    pub fn new(schedule: &ConnectionSchedule) -> Result<Self> {
        let n = schedule.node_count();
        let period = schedule.period();
        let mut steps = Vec::with_capacity(period);
        let mut max_semi = 0;
        for t in 0..period {
            let mut per_source = Vec::with_capacity(n);
            for a in 0..n {
                let row = earliest_tree(schedule, a, t as Slot)?;
                max_semi = max_semi.max(row.iter().map(Vec::len).max().unwrap_or(0));
                per_source.push(row);
            }
            steps.push(per_source);
        }
        Ok(Self {
            schedule: schedule.clone(),
            steps,
            max_semi,
        })
    }

    pub fn semi_path(&self, a: NodeId, c: NodeId, t: Slot) -> SemiPath {
        let k = self.schedule.slot_index(t);
        SemiPath {
            path: RoutePath::new(VirtualNode::new(a, t), self.steps[k][a][c].clone()),
            kind: SemiPathKind::EarliestArrival,
        }
    }

    pub fn full_paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        let n = self.schedule.node_count();
        let weight = Rational::new(1, n as i128);
        (0..n)
            .map(|c| {
                let mut path = self.semi_path(a, c, t).path;
                let arrival = t + path.latency() as Slot;
                path.extend_from(&self.semi_path(c, b, arrival).path);
                (path, weight)
            })
            .collect()
    }
}

/// Earliest-arrival steps from `(a, t)` to every node.
fn earliest_tree(schedule: &ConnectionSchedule, a: NodeId, t: Slot) -> Result<Vec<Vec<Step>>> {
    let n = schedule.node_count();
    let limit = n * schedule.period();
    let mut paths: Vec<Option<Vec<Step>>> = vec![None; n];
    paths[a] = Some(Vec::new());
    let mut reached = 1;
    let mut elapsed = 0;
    while reached < n {
        if elapsed >= limit {
            return Err(OrnError::InvalidSchedule(format!(
                "node {a} cannot reach every node from slot {t}"
            )));
        }
        let slot = t + elapsed as Slot;
        // best arrival per unreached target this slot: (hops, predecessor)
        let mut arrivals: Vec<Option<(usize, NodeId)>> = vec![None; n];
        for (node, p) in paths.iter().enumerate() {
            let Some(p) = p else { continue };
            let to = schedule.target(node, slot);
            if paths[to].is_some() {
                continue;
            }
            let hops = p.iter().filter(|&&s| s == Step::Physical).count() + 1;
            if arrivals[to].is_none_or(|(h, _)| hops < h) {
                arrivals[to] = Some((hops, node));
            }
        }
        for (to, arrival) in arrivals.into_iter().enumerate() {
            let Some((_, pred)) = arrival else { continue };
            let mut steps = paths[pred].clone().expect("predecessor is reached");
            steps.resize(elapsed, Step::Virtual);
            steps.push(Step::Physical);
            paths[to] = Some(steps);
            reached += 1;
        }
        elapsed += 1;
    }
    Ok(paths.into_iter().map(|p| p.expect("all reached")).collect())
}

impl RoutingScheme for EarliestArrivalRouting {
    fn node_count(&self) -> usize {
        self.schedule.node_count()
    }

    fn period(&self) -> usize {
        self.schedule.period()
    }

    fn max_latency(&self) -> usize {
        2 * self.max_semi
    }

    fn base_paths(&self, a: NodeId, b: NodeId, t: usize) -> PathDistribution {
        self.full_paths(a, b, t as Slot)
    }

    fn paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        self.full_paths(a, b, t)
    }
}
