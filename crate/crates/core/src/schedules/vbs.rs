use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{phase_vector_table, Coordinates, PhaseStructure};
use crate::error::{OrnError, Result};
use crate::field::{exact_root, is_prime};
use crate::model::{ConnectionSchedule, ScheduleFamily};
use crate::rational::{int, serde_pq, Rational};

/// Vandermonde-bases schedule parameters.
///
/// `N = base^(h+1)` with `base` prime. `delta` is the target fraction of
/// hop-efficient semi-paths and `q` the number of candidate phases searched
/// for them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VbsParams {
    pub h: u32,
    pub base: usize,
    #[serde(with = "serde_pq")]
    pub delta: Rational,
    pub q: usize,
}

impl VbsParams {
    pub fn new(h: u32, base: usize, delta: Rational) -> Result<Self> {
        if h == 0 {
            return Err(OrnError::InvalidParameter("VBS requires h >= 1".into()));
        }
        if !is_prime(base as u64) {
            return Err(OrnError::NotPrime(base as u64));
        }
        let cap = Self::delta_cap(h);
        if delta <= Rational::zero() || delta > cap {
            return Err(OrnError::InvalidParameter(format!(
                "delta = {delta} must lie in (0, {cap}] for h = {h}"
            )));
        }
        let q = Self::select_q(h, base, delta);
        let span = h as usize + 1 + q;
        if base <= span {
            return Err(OrnError::InvalidParameter(format!(
                "VBS needs n > h + 1 + Q = {span}, got n = {base}"
            )));
        }
        Coordinates::new(base, h as usize + 1)?;
        Ok(Self { h, base, delta, q })
    }

    pub fn for_nodes(node_count: u64, h: u32, delta: Rational) -> Result<Self> {
        let base = exact_root(node_count, h + 1)
            .filter(|&b| is_prime(b))
            .ok_or_else(|| OrnError::IncompatibleNodeCount {
                node_count,
                family: "vbs",
                required: format!("N = n^{} for a prime n", h + 1),
            })?;
        Self::new(h, base as usize, delta)
    }

    /// Largest admissible `delta`: `1 / (4 (h+1) (1 + 1/(2h))^2)`.
    pub fn delta_cap(h: u32) -> Rational {
        let h = h as i128;
        Rational::new(h * h, (h + 1) * (2 * h + 1) * (2 * h + 1))
    }

    /// Smallest `Q >= max(h, 2h^2 - h)` with `C(Q, h) >= delta * n`.
    pub fn select_q(h: u32, base: usize, delta: Rational) -> usize {
        let h = h as usize;
        let target = delta * int(base as i128);
        let mut q = h.max(2 * h * h - h);
        while int(binomial(q, h) as i128) < target {
            q += 1;
        }
        q
    }

    pub fn node_count(&self) -> usize {
        self.base.pow(self.h + 1)
    }

    pub fn period(&self) -> usize {
        self.base * (self.base - 1)
    }

    /// Phases spanned by one semi-path, `h + 1 + Q`.
    pub fn semi_path_phases(&self) -> usize {
        self.h as usize + 1 + self.q
    }

    /// `(n - 1)(3 + 2h + 2Q) - 1`.
    pub fn max_latency(&self) -> usize {
        (self.base - 1) * (3 + 2 * self.h as usize + 2 * self.q) - 1
    }

    pub fn coordinates(&self) -> Coordinates {
        Coordinates::new(self.base, self.h as usize + 1).expect("validated at construction")
    }

    /// `v(p)` for `p` in `[0, n)`.
    pub fn phase_vectors(&self) -> Vec<Vec<usize>> {
        (0..self.base)
            .map(|p| vandermonde_vector(p, self.h as usize, self.base))
            .collect()
    }

    pub(crate) fn phase_structure(&self, repeat: usize) -> PhaseStructure {
        PhaseStructure {
            phase_len: self.base - 1,
            distinct_phases: self.base,
            repeat,
        }
    }
}

/// `(1, p, p^2, ..., p^h) mod n`.
pub fn vandermonde_vector(p: usize, h: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(h + 1);
    let mut acc = 1 % n;
    for _ in 0..=h {
        out.push(acc);
        acc = acc * (p % n) % n;
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Slot `(n-1)p + s - 1` sends `i` to `i + s v(p)`.
pub fn vbs_schedule(params: &VbsParams) -> Result<ConnectionSchedule> {
    let coords = params.coordinates();
    let table = phase_vector_table(&coords, &params.phase_vectors(), 1);
    ConnectionSchedule::new(
        coords.node_count(),
        table,
        ScheduleFamily::Vbs {
            params: params.clone(),
            phase_repeat: 1,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn delta_cap_values() {
        assert_eq!(VbsParams::delta_cap(1), ratio(1, 18));
        // 1 / (4 * 3 * (5/4)^2) = 4/75
        assert_eq!(VbsParams::delta_cap(2), ratio(4, 75));
    }

    #[test]
    fn q_selection() {
        assert_eq!(VbsParams::select_q(1, 13, ratio(1, 18)), 1);
        assert_eq!(VbsParams::select_q(1, 101, ratio(1, 25)), 5);
        // floor 2h^2 - h = 6 for h = 2
        assert_eq!(VbsParams::select_q(2, 11, ratio(1, 100)), 6);
    }

    #[test]
    fn phase_vectors_for_h1_n5() {
        let p = VbsParams::new(1, 5, ratio(1, 18)).unwrap();
        assert_eq!(p.q, 1);
        assert_eq!(p.period(), 20);
        let s = vbs_schedule(&p).unwrap();
        let c = p.coordinates();
        let x = c.encode(&[3, 4]);
        // phase 0: v(0) = (1, 0)
        assert_eq!(c.decode(s.target(x, 0)), vec![4, 4]);
        // phase 2, s = 1: slot 8 adds (1, 2)
        assert_eq!(c.decode(s.target(x, 8)), vec![4, 1]);
    }

    #[test]
    fn rejections() {
        assert_eq!(VbsParams::new(1, 6, ratio(1, 20)).unwrap_err(), OrnError::NotPrime(6));
        // h = 2, n = 3: Q >= 6 so n > h + 1 + Q is impossible
        assert!(VbsParams::new(2, 3, ratio(1, 100)).is_err());
        assert!(VbsParams::new(1, 5, ratio(1, 17)).is_err());
        assert!(VbsParams::new(1, 5, int(0)).is_err());
        assert!(matches!(
            VbsParams::for_nodes(24, 1, ratio(1, 20)).unwrap_err(),
            OrnError::IncompatibleNodeCount { .. }
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(6, 0), 1);
    }
}
