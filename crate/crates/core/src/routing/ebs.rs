use super::{SemiPath, SemiPathKind};
use crate::error::{OrnError, Result};
use crate::model::{
    ConnectionSchedule, NodeId, PathDistribution, RoutePath, RoutingScheme, ScheduleFamily, Slot,
    Step, VirtualNode,
};
use crate::rational::Rational;
use crate::schedules::{Coordinates, EbsParams, PhaseStructure};

/// EBS routing: greedy Hamming-distance semi-paths composed by VLB.
#[derive(Debug, Clone)]
pub struct EbsRouting {
    params: EbsParams,
    coords: Coordinates,
    phases: PhaseStructure,
    period: usize,
    /// Semi-path steps indexed by `[t mod period][b - a]`; the greedy walk is
    /// translation invariant.
    steps: Vec<Vec<Vec<Step>>>,
}

impl EbsRouting {
    pub fn new(schedule: &ConnectionSchedule) -> Result<Self> {
        let ScheduleFamily::Ebs {
            params,
            phase_repeat,
        } = schedule.family()
        else {
            return Err(OrnError::InvalidParameter(format!(
                "EBS routing needs an EBS schedule, got {}",
                schedule.family().name()
            )));
        };
        let coords = params.coordinates();
        let phases = params.phase_structure(*phase_repeat);
        let period = schedule.period();
        let mut router = Self {
            params: *params,
            coords,
            phases,
            period,
            steps: Vec::new(),
        };
        router.steps = (0..period)
            .map(|t| {
                (0..coords.node_count())
                    .map(|d| router.greedy_steps(0, d, t as Slot))
                    .collect()
            })
            .collect();
        Ok(router)
    }

    pub fn params(&self) -> &EbsParams {
        &self.params
    }

    /// Slots from a semi-path start to the start of the second stage.
    pub fn epoch(&self) -> usize {
        self.period
    }

    /// Runs the greedy rule from `(a, t)`: take the physical edge whenever it
    /// sets one more coordinate to `b`'s value, and only in phases allowed by
    /// the phase-repeat restriction.
    fn greedy_steps(&self, a: NodeId, b: NodeId, t: Slot) -> Vec<Step> {
        let n = self.coords.base();
        let repeat = self.phases.repeat as i64;
        let first_full = self.phases.phase_of(self.phases.next_boundary(t));
        let mut cur = a;
        let mut slot = t;
        let mut steps = Vec::new();
        while cur != b {
            assert!(
                steps.len() <= 2 * self.period + self.phases.phase_len,
                "greedy semi-path failed to converge"
            );
            let phase = self.phases.phase_of(slot);
            let allowed = (phase - first_full).rem_euclid(repeat) == 0;
            let coord = self.phases.vector_index(phase);
            let scale = (slot.rem_euclid(self.phases.phase_len as Slot) + 1) as usize;
            let have = self.coords.digit(cur, coord);
            let want = self.coords.digit(b, coord);
            if allowed && have != want && (have + scale) % n == want {
                let mut e = vec![0; self.coords.dims()];
                e[coord] = 1;
                cur = self.coords.add_scaled(cur, &e, scale);
                steps.push(Step::Physical);
            } else {
                steps.push(Step::Virtual);
            }
            slot += 1;
        }
        steps
    }

    /// Greedy semi-path from `(a, t)` to the timeline of `b`.
    pub fn semi_path(&self, a: NodeId, b: NodeId, t: Slot) -> SemiPath {
        let d = self.coords.encode(&self.coords.difference(a, b));
        let res = t.rem_euclid(self.period as Slot) as usize;
        SemiPath {
            path: RoutePath::new(VirtualNode::new(a, t), self.steps[res][d].clone()),
            kind: SemiPathKind::Greedy,
        }
    }

    /// The unit flow `R[a, b, t]`: one path per intermediate node, each with
    /// weight `1/N`.
    pub fn full_paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        let n = self.coords.node_count();
        let weight = Rational::new(1, n as i128);
        let epoch = self.period as Slot;
        (0..n)
            .map(|c| {
                let first = self.semi_path(a, c, t);
                let mut path = first.path;
                let wait = epoch as usize - path.latency();
                path.push_virtual(wait);
                let second = self.semi_path(c, b, t + epoch);
                path.extend_from(&second.path);
                (path, weight)
            })
            .collect()
    }
}

impl RoutingScheme for EbsRouting {
    fn node_count(&self) -> usize {
        self.coords.node_count()
    }

    fn period(&self) -> usize {
        self.period
    }

    fn max_latency(&self) -> usize {
        2 * self.period
    }

    fn base_paths(&self, a: NodeId, b: NodeId, t: usize) -> PathDistribution {
        self.full_paths(a, b, t as Slot)
    }

    fn paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        self.full_paths(a, b, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedules::ebs_schedule;

    fn router(order: u32, base: usize) -> (ConnectionSchedule, EbsRouting) {
        let s = ebs_schedule(&EbsParams::new(order, base).unwrap()).unwrap();
        let r = EbsRouting::new(&s).unwrap();
        (s, r)
    }

    #[test]
    fn same_node_is_empty() {
        let (_, r) = router(2, 3);
        let sp = r.semi_path(4, 4, 2);
        assert_eq!(sp.path.latency(), 0);
    }

    #[test]
    fn nine_node_example() {
        let (s, r) = router(2, 3);
        let c = r.params().coordinates();
        let a = c.encode(&[0, 0]);
        let b = c.encode(&[2, 1]);
        let sp = r.semi_path(a, b, 0);
        assert_eq!(sp.path.step_string(), "VPP");
        assert_eq!(sp.path.latency(), 3);
        assert_eq!(sp.path.hops(), 2);
        assert_eq!(sp.path.endpoint(&s), VirtualNode::new(b, 3));
    }

    #[test]
    fn four_node_example() {
        let (s, r) = router(1, 4);
        let sp = r.semi_path(0, 2, 0);
        assert_eq!(sp.path.step_string(), "VP");
        assert_eq!(sp.path.endpoint(&s), VirtualNode::new(2, 2));
    }

    #[test]
    fn mid_phase_start_wraps_to_next_occurrence() {
        // slot 1 is the second slot of phase 0; digit 0 needs scale 1, which
        // next occurs at slot 4
        let (s, r) = router(2, 3);
        let c = r.params().coordinates();
        let a = c.encode(&[0, 0]);
        let b = c.encode(&[1, 0]);
        let sp = r.semi_path(a, b, 1);
        assert_eq!(sp.path.latency(), 4);
        assert_eq!(sp.path.endpoint(&s), VirtualNode::new(b, 5));
    }

    #[test]
    fn table_matches_direct_greedy() {
        let (_, r) = router(2, 3);
        for t in 0..8 {
            for a in 0..9 {
                for b in 0..9 {
                    assert_eq!(
                        r.semi_path(a, b, t).path.steps(),
                        r.greedy_steps(a, b, t).as_slice()
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_other_families() {
        let s = ConnectionSchedule::explicit(2, vec![vec![1, 0]]).unwrap();
        assert!(EbsRouting::new(&s).is_err());
    }
}
