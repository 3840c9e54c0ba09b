//! Connection schedule generators.
//!
//! EBS and VBS schedules are both "phase-vector" schedules: nodes are
//! coordinate tuples over `Z/n`, the period is a sequence of phases of
//! `n - 1` slots, and slot `s - 1` of a phase with vector `v` sends `i` to
//! `i + s*v`.

mod coords;
mod ebs;
mod proot;
mod unroll;
mod vbs;

pub use coords::Coordinates;
pub use ebs::{ebs_schedule, EbsParams};
pub use proot::{primitive_root_schedule, PrimitiveRootParams};
pub use unroll::unroll_schedule;
pub use vbs::{vandermonde_vector, vbs_schedule, VbsParams};
pub(crate) use vbs::binomial;

use crate::error::{OrnError, Result};
use crate::model::{ConnectionSchedule, NodeId, ScheduleFamily};

/// Builds the permutation table for a phase-vector schedule in which every
/// phase is repeated `repeat` times in a row.
pub(crate) fn phase_vector_table(
    coords: &Coordinates,
    phase_vectors: &[Vec<usize>],
    repeat: usize,
) -> Vec<Vec<NodeId>> {
    let n = coords.base();
    let mut table = Vec::with_capacity(phase_vectors.len() * repeat * (n - 1));
    for vector in phase_vectors {
        for _ in 0..repeat {
            for s in 1..n {
                let row = (0..coords.node_count())
                    .map(|i| coords.add_scaled(i, vector, s))
                    .collect();
                table.push(row);
            }
        }
    }
    table
}

/// Repeats every phase of an EBS or VBS schedule twice, doubling the period.
///
/// `degree` is the per-slot degree `d` of the network the schedule will be
/// rolled up into; the transform requires `d < n - 1`.
pub fn doubled_phase_schedule(
    base: &ConnectionSchedule,
    degree: usize,
) -> Result<ConnectionSchedule> {
    let (n, vectors, family) = match base.family() {
        ScheduleFamily::Ebs {
            params,
            phase_repeat,
        } => (
            params.base,
            params.phase_vectors(),
            ScheduleFamily::Ebs {
                params: *params,
                phase_repeat: phase_repeat * 2,
            },
        ),
        ScheduleFamily::Vbs {
            params,
            phase_repeat,
        } => (
            params.base,
            params.phase_vectors(),
            ScheduleFamily::Vbs {
                params: params.clone(),
                phase_repeat: phase_repeat * 2,
            },
        ),
        other => {
            return Err(OrnError::InvalidParameter(format!(
                "phase doubling applies to EBS and VBS schedules, not {}",
                other.name()
            )))
        }
    };
    if degree == 0 || degree >= n - 1 {
        return Err(OrnError::InvalidParameter(format!(
            "phase doubling requires 1 <= d < n - 1 = {}, got d = {degree}",
            n - 1
        )));
    }
    let repeat = match &family {
        ScheduleFamily::Ebs { phase_repeat, .. } | ScheduleFamily::Vbs { phase_repeat, .. } => {
            *phase_repeat
        }
        _ => unreachable!(),
    };
    let dims = vectors[0].len();
    let coords = Coordinates::new(n, dims)?;
    let table = phase_vector_table(&coords, &vectors, repeat);
    ConnectionSchedule::new(coords.node_count(), table, family)
}

/// Phase structure of an EBS/VBS schedule as seen by the routers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseStructure {
    /// Slots per phase, `n - 1`.
    pub phase_len: usize,
    /// Distinct phase vectors in one period.
    pub distinct_phases: usize,
    /// Consecutive copies of each phase.
    pub repeat: usize,
}

impl PhaseStructure {
    pub fn phases_per_period(&self) -> usize {
        self.distinct_phases * self.repeat
    }

    /// Absolute phase index containing `slot`.
    pub fn phase_of(&self, slot: i64) -> i64 {
        slot.div_euclid(self.phase_len as i64)
    }

    /// Index of the phase vector used by absolute phase `phase`.
    pub fn vector_index(&self, phase: i64) -> usize {
        (phase.rem_euclid(self.phases_per_period() as i64) as usize) / self.repeat
    }

    /// First slot of the first phase starting at or after `slot`.
    pub fn next_boundary(&self, slot: i64) -> i64 {
        let len = self.phase_len as i64;
        (slot + len - 1).div_euclid(len) * len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn doubled_vbs_repeats_phases() {
        let params = VbsParams::new(1, 5, ratio(1, 18)).unwrap();
        let base = vbs_schedule(&params).unwrap();
        let doubled = doubled_phase_schedule(&base, 2).unwrap();
        assert_eq!(doubled.period(), 2 * base.period());
        // phases run v(0), v(0), v(1), v(1), ...
        for phase in 0..2 * 5 {
            for s in 0..4 {
                assert_eq!(
                    doubled.permutation(phase * 4 + s),
                    base.permutation((phase / 2) * 4 + s)
                );
            }
        }
    }

    #[test]
    fn doubling_twice_quadruples_period() {
        let params = EbsParams::new(2, 4).unwrap();
        let base = ebs_schedule(&params).unwrap();
        let once = doubled_phase_schedule(&base, 2).unwrap();
        let twice = doubled_phase_schedule(&once, 2).unwrap();
        assert_ne!(once, twice);
        assert_eq!(twice.period(), 4 * base.period());
    }

    #[test]
    fn doubling_rejects_large_degree() {
        let params = VbsParams::new(1, 5, ratio(1, 18)).unwrap();
        let base = vbs_schedule(&params).unwrap();
        assert!(doubled_phase_schedule(&base, 4).is_err());
        assert!(doubled_phase_schedule(&base, 0).is_err());
        assert!(doubled_phase_schedule(&base, 3).is_ok());
    }

    #[test]
    fn boundaries() {
        let ps = PhaseStructure {
            phase_len: 4,
            distinct_phases: 5,
            repeat: 2,
        };
        assert_eq!(ps.next_boundary(0), 0);
        assert_eq!(ps.next_boundary(1), 4);
        assert_eq!(ps.next_boundary(4), 4);
        assert_eq!(ps.next_boundary(-3), 0);
        assert_eq!(ps.vector_index(3), 1);
        assert_eq!(ps.vector_index(10), 0);
    }
}
