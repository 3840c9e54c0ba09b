use super::{ConnectionSchedule, Slot, VirtualNode};
use crate::error::{OrnError, Result};

/// Explicit edges of the virtual topology over a finite slot range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyWindow {
    pub start: Slot,
    pub length: usize,
    pub physical: Vec<(VirtualNode, VirtualNode)>,
    pub virtual_edges: Vec<(VirtualNode, VirtualNode)>,
}

/// Materializes the physical and virtual edges leaving every vertex with slot
/// in `[t_start, t_start + length)`.
pub fn build_virtual_topology_window(
    schedule: &ConnectionSchedule,
    t_start: Slot,
    length: usize,
) -> Result<TopologyWindow> {
    if length == 0 {
        return Err(OrnError::InvalidParameter("window length must be at least 1".into()));
    }
    let n = schedule.node_count();
    let mut physical = Vec::with_capacity(n * length);
    let mut virtual_edges = Vec::with_capacity(n * length);
    for t in t_start..t_start + length as Slot {
        for i in 0..n {
            let from = VirtualNode::new(i, t);
            physical.push((from, VirtualNode::new(schedule.target(i, t), t + 1)));
            virtual_edges.push((from, VirtualNode::new(i, t + 1)));
        }
    }
    Ok(TopologyWindow {
        start: t_start,
        length,
        physical,
        virtual_edges,
    })
}
