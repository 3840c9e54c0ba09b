use crate::bounds::{decompose_rate, RateDecomposition};
use crate::error::{OrnError, Result};
use crate::model::ConnectionSchedule;
use crate::rational::{int, Rational};
use crate::schedules::{ebs_schedule, vbs_schedule, EbsParams, VbsParams};

#[derive(Debug, Clone, PartialEq)]
pub enum Design {
    Ebs(EbsParams),
    Vbs(VbsParams),
}

impl Design {
    pub fn schedule(&self) -> Result<ConnectionSchedule> {
        match self {
            Design::Ebs(p) => ebs_schedule(p),
            Design::Vbs(p) => vbs_schedule(p),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Design::Ebs(_) => "ebs",
            Design::Vbs(_) => "vbs",
        }
    }
}

/// Outcome of design selection for a target rate.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignChoice {
    pub decomposition: RateDecomposition,
    /// `4 eps`.
    pub delta: Rational,
    pub design: Design,
    /// Set when VBS was preferred but `N` is too small for `n > h + 1 + Q`,
    /// so EBS with `l = h` (which also guarantees the rate) was used.
    pub fallback: Option<String>,
}

/// Picks VBS with `delta = 4 eps` when `delta` is within the VBS cap and EBS
/// with `l = h` otherwise.
pub fn select_design(rate: Rational, node_count: u64) -> Result<DesignChoice> {
    let decomposition = decompose_rate(rate)?;
    let h = decomposition.h;
    let delta = decomposition.eps * int(4);
    let ebs = || EbsParams::for_nodes(node_count, h).map(Design::Ebs);
    if delta > VbsParams::delta_cap(h) {
        return Ok(DesignChoice {
            decomposition,
            delta,
            design: ebs()?,
            fallback: None,
        });
    }
    match VbsParams::for_nodes(node_count, h, delta) {
        Ok(params) => Ok(DesignChoice {
            decomposition,
            delta,
            design: Design::Vbs(params),
            fallback: None,
        }),
        Err(OrnError::InvalidParameter(reason)) => Ok(DesignChoice {
            decomposition,
            delta,
            design: ebs()?,
            fallback: Some(reason),
        }),
        Err(e) => Err(e),
    }
}
