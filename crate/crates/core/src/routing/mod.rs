//! Oblivious routing schemes built from Valiant load balancing: every request
//! is spread uniformly over all intermediate nodes, and each of the two
//! stages follows a deterministic semi-path.

mod design;
mod earliest;
mod ebs;
mod vbs;

pub use design::{select_design, Design, DesignChoice};
pub use earliest::EarliestArrivalRouting;
pub use ebs::EbsRouting;
pub use vbs::VbsRouting;

use crate::error::Result;
use crate::model::{ConnectionSchedule, RoutePath, RoutingScheme, ScheduleFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiPathKind {
    /// EBS greedy coordinate fixing.
    Greedy,
    /// VBS single-basis path.
    SingleBasis,
    /// VBS hop-efficient path.
    HopEfficient,
    /// Earliest arrival on schedules without a dedicated scheme.
    EarliestArrival,
}

/// One VLB stage: a walk from the source (or intermediate) to the timeline of
/// the intermediate (or destination).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiPath {
    pub path: RoutePath,
    pub kind: SemiPathKind,
}

/// The routing scheme matching a schedule's family; schedules without a
/// dedicated scheme get earliest-arrival VLB.
pub fn scheme_for_schedule(schedule: &ConnectionSchedule) -> Result<Box<dyn RoutingScheme>> {
    match schedule.family() {
        ScheduleFamily::Ebs { .. } => Ok(Box::new(EbsRouting::new(schedule)?)),
        ScheduleFamily::Vbs { .. } => Ok(Box::new(VbsRouting::new(schedule)?)),
        _ => Ok(Box::new(EarliestArrivalRouting::new(schedule)?)),
    }
}
