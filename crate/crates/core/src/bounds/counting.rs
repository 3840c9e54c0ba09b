use std::collections::BTreeSet;

use crate::error::{OrnError, Result};
use crate::model::{ConnectionSchedule, NodeId, Slot};

/// `2 * C(L, h)`, the most nodes reachable within latency `L` using at most
/// `h` physical hops. Requires `h <= L/3`.
pub fn counting_bound(latency: usize, hops: usize) -> Result<u128> {
    if 3 * hops > latency {
        return Err(OrnError::CountingLemmaInapplicable { latency, hops });
    }
    let k = hops.min(latency - hops);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((latency - i) as u128)
            .ok_or_else(|| OrnError::Overflow(format!("C({latency}, {hops})")))?
            / (i + 1) as u128;
    }
    acc.checked_mul(2)
        .ok_or_else(|| OrnError::Overflow(format!("2 C({latency}, {hops})")))
}

/// Nodes other than `a` reachable from `(a, t)` within `latency` slots using
/// at most `hops` physical edges.
pub fn reachable_within(
    schedule: &ConnectionSchedule,
    a: NodeId,
    t: Slot,
    latency: usize,
    hops: usize,
) -> BTreeSet<NodeId> {
    let n = schedule.node_count();
    // fewest hops needed to sit at each node at the current slot; waiting is
    // free, so this is monotone over time
    let mut best = vec![usize::MAX; n];
    let mut next = best.clone();
    best[a] = 0;
    for slot in t..t + latency as Slot {
        next.copy_from_slice(&best);
        for (node, &used) in best.iter().enumerate() {
            if used < hops {
                let to = schedule.target(node, slot);
                next[to] = next[to].min(used + 1);
            }
        }
        std::mem::swap(&mut best, &mut next);
    }
    best.iter()
        .enumerate()
        .filter(|&(node, &used)| node != a && used <= hops)
        .map(|(node, _)| node)
        .collect()
}
