//! Demand generators, demand inflation, congestion reports and the
//! matching-based guaranteed-throughput verifier.

mod adversary;
mod congestion;
mod demand;
mod matching;
mod verifier;

pub use adversary::{worst_permutation_demand, AdversaryResult, AdversarySearch};
pub use congestion::{congestion_report, EdgeFlowReport};
pub use demand::{inflate_demand, inflate_matrix, permutation_demand, uniform_demand};
pub use matching::{max_weight_perfect_matching, Matching};
pub use verifier::{all_edge_weights, edge_weights, guaranteed_throughput, EdgeWeightMatrix, ThroughputCertificate};

use crate::error::{OrnError, Result};

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}

pub(crate) fn check_nodes(scheme_nodes: usize, schedule_nodes: usize) -> Result<()> {
    if scheme_nodes != schedule_nodes {
        return Err(OrnError::DimensionMismatch(format!(
            "scheme has {scheme_nodes} nodes, schedule has {schedule_nodes}"
        )));
    }
    Ok(())
}
