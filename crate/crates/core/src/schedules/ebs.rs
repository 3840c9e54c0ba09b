use serde::{Deserialize, Serialize};

use super::{phase_vector_table, Coordinates, PhaseStructure};
use crate::error::{OrnError, Result};
use crate::field::exact_root;
use crate::model::{ConnectionSchedule, ScheduleFamily};

/// Elementary-basis schedule parameters: `N = base^order` nodes, period
/// `order * (base - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EbsParams {
    pub order: u32,
    pub base: usize,
}

impl EbsParams {
    pub fn new(order: u32, base: usize) -> Result<Self> {
        if order == 0 {
            return Err(OrnError::InvalidParameter("EBS order must be at least 1".into()));
        }
        if base < 2 {
            return Err(OrnError::InvalidParameter("EBS base must be at least 2".into()));
        }
        Coordinates::new(base, order as usize)?;
        Ok(Self { order, base })
    }

    /// Parameters for `node_count` nodes at the given order; fails unless
    /// `node_count` is a perfect `order`-th power.
    pub fn for_nodes(node_count: u64, order: u32) -> Result<Self> {
        let base = exact_root(node_count, order)
            .filter(|&b| b >= 2)
            .ok_or_else(|| OrnError::IncompatibleNodeCount {
                node_count,
                family: "ebs",
                required: format!("N = n^{order} for an integer n >= 2"),
            })?;
        Self::new(order, base as usize)
    }

    pub fn node_count(&self) -> usize {
        self.base.pow(self.order)
    }

    pub fn period(&self) -> usize {
        self.order as usize * (self.base - 1)
    }

    pub fn coordinates(&self) -> Coordinates {
        Coordinates::new(self.base, self.order as usize).expect("validated at construction")
    }

    /// Elementary basis vectors `e_0 .. e_{order-1}`.
    pub fn phase_vectors(&self) -> Vec<Vec<usize>> {
        let l = self.order as usize;
        (0..l)
            .map(|p| (0..l).map(|j| usize::from(j == p)).collect())
            .collect()
    }

    pub(crate) fn phase_structure(&self, repeat: usize) -> PhaseStructure {
        PhaseStructure {
            phase_len: self.base - 1,
            distinct_phases: self.order as usize,
            repeat,
        }
    }
}

/// Slot `(n-1)p + s - 1` sends `i` to `i + s e_p`.
pub fn ebs_schedule(params: &EbsParams) -> Result<ConnectionSchedule> {
    let coords = params.coordinates();
    let table = phase_vector_table(&coords, &params.phase_vectors(), 1);
    ConnectionSchedule::new(
        coords.node_count(),
        table,
        ScheduleFamily::Ebs {
            params: *params,
            phase_repeat: 1,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_is_round_robin() {
        let s = ebs_schedule(&EbsParams::new(1, 4).unwrap()).unwrap();
        assert_eq!(s.period(), 3);
        // rows of the four-node round robin: A sends to B, C, D
        assert_eq!(s.permutation(0), &[1, 2, 3, 0]);
        assert_eq!(s.permutation(1), &[2, 3, 0, 1]);
        assert_eq!(s.permutation(2), &[3, 0, 1, 2]);
    }

    #[test]
    fn nine_node_schedule() {
        let p = EbsParams::for_nodes(9, 2).unwrap();
        assert_eq!(p.base, 3);
        let s = ebs_schedule(&p).unwrap();
        assert_eq!(s.period(), 4);
        let c = p.coordinates();
        let aa = c.encode(&[0, 0]);
        assert_eq!(s.target(aa, 0), c.encode(&[1, 0]));
        assert_eq!(s.target(aa, 1), c.encode(&[2, 0]));
        assert_eq!(s.target(aa, 2), c.encode(&[0, 1]));
        assert_eq!(s.target(aa, 3), c.encode(&[0, 2]));
        // row (B,C) of the table: C,C  A,C  B,A  B,B
        let bc = c.encode(&[1, 2]);
        let row: Vec<_> = (0..4).map(|t| c.decode(s.target(bc, t))).collect();
        assert_eq!(row, vec![vec![2, 2], vec![0, 2], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn rejects_non_power() {
        let err = EbsParams::for_nodes(10, 2).unwrap_err();
        assert!(matches!(err, OrnError::IncompatibleNodeCount { .. }));
        assert!(EbsParams::for_nodes(1, 1).is_err());
    }
}
