use std::io::Write;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{decompose_rate, l_star_from_parts};
use crate::error::{OrnError, Result};
use crate::rational::{int, to_f64, Rational};
use crate::schedules::VbsParams;

/// One sample of the tradeoff curve.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffPoint {
    pub inv_rate: Rational,
    pub h: u32,
    pub eps: Rational,
    pub l_star: f64,
    /// `2h(N^(1/h) - 1)`, EBS with `l = h`.
    pub ebs_latency: f64,
    /// `(n-1)(3+2h+2Q) - 1` with `n = N^(1/(h+1))` and `delta = 4 eps`, when
    /// `delta` is within the VBS cap.
    pub vbs_latency: Option<f64>,
    /// `delta` within the cap and `n > h + 1 + Q`.
    pub vbs_applicable: bool,
    /// `1/r` is an even integer above 2; `l_star` holds the limit from the
    /// left, `(h-1) N^(1/h)`.
    pub cusp: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveOptions {
    pub node_count: f64,
    pub min_inv_rate: Rational,
    pub max_inv_rate: Rational,
    /// Number of intervals; `steps + 1` samples including both ends.
    pub steps: usize,
}

impl CurveOptions {
    pub fn new(node_count: f64, max_inv_rate: Rational) -> Self {
        Self {
            node_count,
            min_inv_rate: int(2),
            max_inv_rate,
            steps: 500,
        }
    }
}

/// Evaluates the bounds at `1/r` for a single sample.
pub fn tradeoff_point(inv_rate: Rational, node_count: f64) -> Result<TradeoffPoint> {
    let d = decompose_rate(inv_rate.recip())?;
    let eps = to_f64(&d.eps);
    let cusp = d.eps.is_one() && d.h >= 2;
    let l_star = if cusp {
        l_star_from_parts(d.h - 1, 0.0, node_count)
    } else {
        l_star_from_parts(d.h, eps, node_count)
    };
    let hf = d.h as f64;
    let ebs_latency = 2.0 * hf * (node_count.powf(1.0 / hf) - 1.0);

    let delta = d.eps * int(4);
    let (vbs_latency, vbs_applicable) = if delta <= VbsParams::delta_cap(d.h) {
        let n = node_count.powf(1.0 / (hf + 1.0));
        let q = real_q(d.h as usize, 4.0 * eps * n);
        let latency = (n - 1.0) * (3.0 + 2.0 * hf + 2.0 * q as f64) - 1.0;
        (Some(latency), n > (d.h as usize + 1 + q) as f64)
    } else {
        (None, false)
    };
    Ok(TradeoffPoint {
        inv_rate,
        h: d.h,
        eps: d.eps,
        l_star,
        ebs_latency,
        vbs_latency,
        vbs_applicable,
        cusp,
    })
}

/// Smallest `Q >= max(h, 2h^2 - h)` with `C(Q, h) >= target`.
fn real_q(h: usize, target: f64) -> usize {
    let mut q = h.max(2 * h * h - h);
    while (crate::schedules::binomial(q, h) as f64) < target {
        q += 1;
    }
    q
}

/// Samples `1/r` uniformly over `[min, max]`; exact rational grid points.
pub fn tradeoff_curve(options: &CurveOptions) -> Result<Vec<TradeoffPoint>> {
    if !(options.node_count > 1.0) {
        return Err(OrnError::InvalidParameter(format!(
            "node count must exceed 1, got {}",
            options.node_count
        )));
    }
    if options.min_inv_rate < int(2) || options.max_inv_rate < options.min_inv_rate {
        return Err(OrnError::InvalidParameter(format!(
            "need 2 <= min inverse rate <= max inverse rate, got [{}, {}]",
            options.min_inv_rate, options.max_inv_rate
        )));
    }
    let steps = options.steps.max(1);
    let span = options.max_inv_rate - options.min_inv_rate;
    let count = if span.is_zero() { 1 } else { steps + 1 };
    (0..count)
        .into_par_iter()
        .map(|i| {
            let x = options.min_inv_rate + span * Rational::new(i as i128, steps as i128);
            tradeoff_point(x, options.node_count)
        })
        .collect()
}

pub fn write_curve_csv<W: Write>(points: &[TradeoffPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "inv_rate",
        "h",
        "eps",
        "l_star",
        "ebs_latency",
        "vbs_latency",
        "vbs_applicable",
    ])?;
    for p in points {
        w.write_record([
            to_f64(&p.inv_rate).to_string(),
            p.h.to_string(),
            to_f64(&p.eps).to_string(),
            p.l_star.to_string(),
            p.ebs_latency.to_string(),
            p.vbs_latency.map(|v| v.to_string()).unwrap_or_default(),
            p.vbs_applicable.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
