use serde::{Deserialize, Serialize};

use crate::error::{OrnError, Result};
use crate::field::FiniteField;
use crate::model::{ConnectionSchedule, ScheduleFamily};

/// `pi_k(i) = i + x^k` over the field with `order` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRootParams {
    pub order: u64,
    pub root: u64,
}

impl PrimitiveRootParams {
    /// Validates that `root` generates the multiplicative group.
    pub fn new(order: u64, root: u64) -> Result<Self> {
        let field = FiniteField::new(order)?;
        match field.element_order(root) {
            Some(k) if k == order - 1 => Ok(Self { order, root }),
            Some(k) => Err(OrnError::NotPrimitive {
                element: root,
                order,
                element_order: k,
            }),
            None => Err(OrnError::InvalidParameter(format!(
                "{root} is not a nonzero element of GF({order})"
            ))),
        }
    }

    /// Uses the smallest primitive element.
    pub fn smallest(order: u64) -> Result<Self> {
        let field = FiniteField::new(order)?;
        Ok(Self {
            order,
            root: field.smallest_primitive_root(),
        })
    }
}

/// Builds `period` slots (default `order - 1`, one full cycle of powers).
pub fn primitive_root_schedule(
    params: &PrimitiveRootParams,
    period: Option<usize>,
) -> Result<ConnectionSchedule> {
    let field = FiniteField::new(params.order)?;
    let period = period.unwrap_or(params.order as usize - 1);
    if period == 0 {
        return Err(OrnError::InvalidParameter("period must be at least 1".into()));
    }
    let n = params.order as usize;
    let mut power = 1u64;
    let mut table = Vec::with_capacity(period);
    for _ in 0..period {
        table.push((0..n).map(|i| field.add(i as u64, power) as usize).collect());
        power = field.mul(power, params.root);
    }
    ConnectionSchedule::new(n, table, ScheduleFamily::PrimitiveRoot { root: params.root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_two_mod_11() {
        let s = primitive_root_schedule(&PrimitiveRootParams::new(11, 2).unwrap(), None).unwrap();
        assert_eq!(s.period(), 10);
        assert_eq!(s.target(0, 0), 1);
        assert_eq!(s.target(0, 1), 2);
        assert_eq!(s.target(0, 2), 4);
        assert_eq!(s.target(5, 2), 9);
    }

    #[test]
    fn three_is_not_primitive_mod_11() {
        let err = PrimitiveRootParams::new(11, 3).unwrap_err();
        assert_eq!(
            err,
            OrnError::NotPrimitive {
                element: 3,
                order: 11,
                element_order: 5
            }
        );
    }

    #[test]
    fn fermat_wraparound_mod_13() {
        let p = PrimitiveRootParams::new(13, 2).unwrap();
        let s = primitive_root_schedule(&p, Some(13)).unwrap();
        // 2^12 = 1 mod 13
        assert_eq!(s.permutation(12), s.permutation(0));
        assert_eq!(s.target(4, 12), 5);
    }

    #[test]
    fn non_prime_power_rejected() {
        assert_eq!(PrimitiveRootParams::new(12, 5).unwrap_err(), OrnError::NotPrimePower(12));
    }

    #[test]
    fn extension_field_schedule() {
        let p = PrimitiveRootParams::smallest(16).unwrap();
        let s = primitive_root_schedule(&p, None).unwrap();
        assert_eq!(s.period(), 15);
        // x^k are the 15 distinct nonzero shifts
        let shifts: std::collections::BTreeSet<_> = (0..15).map(|k| s.target(0, k)).collect();
        assert_eq!(shifts.len(), 15);
        assert!(!shifts.contains(&0));
    }
}
