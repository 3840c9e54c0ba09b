//! Closed-form throughput/latency tradeoff machinery.

mod counting;
mod curve;

pub use counting::{counting_bound, reachable_within};
pub use curve::{tradeoff_curve, write_curve_csv, CurveOptions, TradeoffPoint};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{OrnError, Result};
use crate::rational::{int, ratio, to_f64, Rational};

/// `1/(2r) = h + 1 - eps` with `h` a positive integer and `eps` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateDecomposition {
    pub rate: Rational,
    pub h: u32,
    pub eps: Rational,
}

impl RateDecomposition {
    /// `1/(2r)`.
    pub fn half_inverse(&self) -> Rational {
        int(self.h as i128 + 1) - self.eps
    }
}

pub fn decompose_rate(rate: Rational) -> Result<RateDecomposition> {
    if rate <= Rational::zero() || rate > ratio(1, 2) {
        return Err(OrnError::RateOutOfRange(rate));
    }
    let x = (rate * int(2)).recip();
    let h = x.numer().div_floor(x.denom());
    let eps = int(h + 1) - x;
    debug_assert!(eps > Rational::zero() && eps <= Rational::one());
    let h = u32::try_from(h).map_err(|_| OrnError::Overflow(format!("h for rate {rate}")))?;
    Ok(RateDecomposition { rate, h, eps })
}

/// `h (N^(1/(h+1)) + (eps N)^(1/h))`.
pub fn l_star(rate: Rational, node_count: f64) -> Result<f64> {
    let d = decompose_rate(rate)?;
    Ok(l_star_from_parts(d.h, to_f64(&d.eps), node_count))
}

pub(crate) fn l_star_from_parts(h: u32, eps: f64, node_count: f64) -> f64 {
    let h = h as f64;
    h * (node_count.powf(1.0 / (h + 1.0)) + (eps * node_count).powf(1.0 / h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        let d = decompose_rate(ratio(1, 2)).unwrap();
        assert_eq!((d.h, d.eps), (1, int(1)));
        let d = decompose_rate(ratio(1, 4)).unwrap();
        assert_eq!((d.h, d.eps), (2, int(1)));
        let d = decompose_rate(ratio(1, 5)).unwrap();
        assert_eq!((d.h, d.eps), (2, ratio(1, 2)));
        assert_eq!(d.half_inverse(), ratio(5, 2));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(decompose_rate(int(0)).is_err());
        assert!(decompose_rate(ratio(-1, 3)).is_err());
        assert!(decompose_rate(ratio(2, 3)).is_err());
    }

    #[test]
    fn l_star_values() {
        assert!((l_star(ratio(1, 4), 1e6).unwrap() - 2200.0).abs() < 1e-6);
        // h = 1, eps = 1: sqrt(N) + N
        assert!((l_star(ratio(1, 2), 1e4).unwrap() - 10100.0).abs() < 1e-6);
    }
}
