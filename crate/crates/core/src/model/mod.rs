//! The network model: connection schedules, the time-expanded virtual
//! topology, routing paths, flows, routing schemes and demand functions.

mod demand;
mod flow;
mod path;
mod schedule;
mod scheme;
mod topology;

pub use demand::{DemandFunction, DemandMatrix};
pub use flow::{edge_flow, induce_flow, is_feasible, FeasibilityReport, Flow};
pub use path::{walk_path, EdgeRef, RoutePath, Step, VirtualNode};
pub use schedule::{ConnectionSchedule, ScheduleFamily};
pub use scheme::{validate_scheme, PathDistribution, RoutingScheme, TabulatedScheme};
pub use topology::{build_virtual_topology_window, TopologyWindow};

/// Node identifier in `[0, N)`.
pub type NodeId = usize;

/// Timeslot index on the infinite timeline.
pub type Slot = i64;
