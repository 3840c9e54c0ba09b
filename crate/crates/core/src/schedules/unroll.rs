use crate::error::{OrnError, Result};
use crate::model::{ConnectionSchedule, NodeId, ScheduleFamily};

/// Unrolls a `d`-regular schedule into a 1-regular one.
///
/// Each input slot is given as its decomposition into `d` perfect matchings
/// (permutations). Output slot `t*d + j` applies matching `j` of input slot `t`.
pub fn unroll_schedule(
    node_count: usize,
    slots: &[Vec<Vec<NodeId>>],
) -> Result<ConnectionSchedule> {
    let degree = slots.first().map_or(0, Vec::len);
    if degree == 0 {
        return Err(OrnError::InvalidParameter(
            "need at least one slot with at least one matching".into(),
        ));
    }
    if let Some(t) = slots.iter().position(|s| s.len() != degree) {
        return Err(OrnError::DimensionMismatch(format!(
            "slot {t} has {} matchings, expected {degree}",
            slots[t].len()
        )));
    }
    let table: Vec<Vec<NodeId>> = slots.iter().flatten().cloned().collect();
    ConnectionSchedule::new(node_count, table, ScheduleFamily::Unrolled { degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_identity() {
        let slots = vec![vec![vec![1, 2, 0]], vec![vec![2, 0, 1]]];
        let s = unroll_schedule(3, &slots).unwrap();
        assert_eq!(s.table(), &[vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn degree_two_splits_slot() {
        let sigma = vec![1, 2, 0];
        let tau = vec![2, 0, 1];
        let s = unroll_schedule(3, &[vec![sigma.clone(), tau.clone()]]).unwrap();
        assert_eq!(s.period(), 2);
        assert_eq!(s.permutation(0), sigma.as_slice());
        assert_eq!(s.permutation(1), tau.as_slice());
    }

    #[test]
    fn ragged_degrees_rejected() {
        let slots = vec![vec![vec![0, 1]], vec![vec![0, 1], vec![1, 0]]];
        assert!(unroll_schedule(2, &slots).is_err());
    }
}
