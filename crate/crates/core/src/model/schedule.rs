use super::{NodeId, Slot};
use crate::error::{OrnError, Result};
use crate::schedules::{EbsParams, VbsParams};

/// Provenance of a schedule; routing schemes read their parameters from here.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleFamily {
    Explicit,
    /// `phase_repeat` is 1 for the plain schedule and doubles with every
    /// application of the doubled-phase transform.
    Ebs { params: EbsParams, phase_repeat: usize },
    Vbs { params: VbsParams, phase_repeat: usize },
    PrimitiveRoot { root: u64 },
    Unrolled { degree: usize },
}

impl ScheduleFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleFamily::Explicit => "explicit",
            ScheduleFamily::Ebs { .. } => "ebs",
            ScheduleFamily::Vbs { .. } => "vbs",
            ScheduleFamily::PrimitiveRoot { .. } => "proot",
            ScheduleFamily::Unrolled { .. } => "unrolled",
        }
    }
}

/// A period-`T` sequence of permutations of `[N]`. Slot `t` uses
/// permutation `t mod T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionSchedule {
    node_count: usize,
    table: Vec<Vec<NodeId>>,
    family: ScheduleFamily,
}

impl ConnectionSchedule {
    /// Builds a schedule from an explicit permutation table, one row per slot.
    pub fn new(node_count: usize, table: Vec<Vec<NodeId>>, family: ScheduleFamily) -> Result<Self> {
        if node_count < 2 {
            return Err(OrnError::InvalidSchedule(format!(
                "need at least 2 nodes, got {node_count}"
            )));
        }
        if table.is_empty() {
            return Err(OrnError::InvalidSchedule("period must be at least 1".into()));
        }
        for (slot, row) in table.iter().enumerate() {
            if !is_permutation(row, node_count) {
                return Err(OrnError::NotAPermutation { slot, node_count });
            }
        }
        Ok(Self {
            node_count,
            table,
            family,
        })
    }

    pub fn explicit(node_count: usize, table: Vec<Vec<NodeId>>) -> Result<Self> {
        Self::new(node_count, table, ScheduleFamily::Explicit)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn period(&self) -> usize {
        self.table.len()
    }

    pub fn family(&self) -> &ScheduleFamily {
        &self.family
    }

    /// Permutation `k`, for `k` in `[0, T)`.
    pub fn permutation(&self, k: usize) -> &[NodeId] {
        &self.table[k]
    }

    pub fn table(&self) -> &[Vec<NodeId>] {
        &self.table
    }

    /// Receiver of the physical edge leaving `(node, slot)`.
    #[inline]
    pub fn target(&self, node: NodeId, slot: Slot) -> NodeId {
        self.table[self.slot_index(slot)][node]
    }

    #[inline]
    pub fn slot_index(&self, slot: Slot) -> usize {
        slot.rem_euclid(self.table.len() as Slot) as usize
    }
}

pub(crate) fn is_permutation(row: &[NodeId], n: usize) -> bool {
    if row.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in row {
        if j >= n || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}
