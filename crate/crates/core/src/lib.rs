//! Oblivious reconfigurable network designs.
//!
//! A [`ConnectionSchedule`] fixes which node talks to which in every slot;
//! a [`RoutingScheme`] spreads each request over timed paths through the
//! resulting time-expanded graph. This crate builds the elementary-basis
//! (EBS) and Vandermonde-bases (VBS) designs, computes exact edge loads, and
//! certifies worst-case throughput with an assignment-problem verifier.
//!
//! ```
//! use orn_core::{ebs_schedule, guaranteed_throughput, ratio, EbsParams, EbsRouting};
//!
//! let schedule = ebs_schedule(&EbsParams::new(2, 3)?)?;
//! let scheme = EbsRouting::new(&schedule)?;
//! let cert = guaranteed_throughput(&scheme, &schedule)?;
//! assert!(cert.rate >= ratio(1, 4));
//! # Ok::<(), orn_core::OrnError>(())
//! ```

pub mod analysis;
pub mod bounds;
pub mod error;
pub mod field;
pub mod io;
pub mod model;
pub mod rational;
pub mod routing;
pub mod schedules;

pub use analysis::{
    congestion_report, guaranteed_throughput, inflate_demand, max_weight_perfect_matching,
    permutation_demand, uniform_demand, EdgeFlowReport, ThroughputCertificate,
};
pub use bounds::{counting_bound, decompose_rate, l_star, reachable_within, tradeoff_curve};
pub use error::{OrnError, Result};
pub use model::{
    walk_path, ConnectionSchedule, DemandFunction, DemandMatrix, EdgeRef, Flow, NodeId,
    RoutePath, RoutingScheme, Slot, Step, VirtualNode,
};
pub use rational::{parse_rational, ratio, Rational};
pub use routing::{scheme_for_schedule, select_design, EbsRouting, VbsRouting};
pub use schedules::{
    doubled_phase_schedule, ebs_schedule, primitive_root_schedule, unroll_schedule,
    vbs_schedule, EbsParams, PrimitiveRootParams, VbsParams,
};
