use num_traits::Zero;

use crate::error::{OrnError, Result};
use crate::model::{DemandFunction, DemandMatrix, NodeId};
use crate::rational::{int, Rational};

/// Greedily raises entries until every row and column sums to exactly `rate`:
/// repeatedly take the lowest-index deficient row and column and add the
/// smaller of the two deficits at their intersection.
pub fn inflate_matrix(matrix: &DemandMatrix, rate: Rational) -> Result<DemandMatrix> {
    let n = matrix.size();
    let mut rows: Vec<Rational> = (0..n).map(|i| matrix.row_sum(i)).collect();
    let mut cols: Vec<Rational> = (0..n).map(|j| matrix.col_sum(j)).collect();
    if let Some(sum) = rows.iter().chain(&cols).find(|&&s| s > rate) {
        return Err(OrnError::DemandExceedsRate { sum: *sum, rate });
    }
    let mut out = matrix.clone();
    let (mut i, mut j) = (0, 0);
    loop {
        while i < n && rows[i] == rate {
            i += 1;
        }
        while j < n && cols[j] == rate {
            j += 1;
        }
        if i == n || j == n {
            break;
        }
        let add = (rate - rows[i]).min(rate - cols[j]);
        out.set(i, j, out.get(i, j) + add)?;
        rows[i] += add;
        cols[j] += add;
    }
    debug_assert!(rows.iter().chain(&cols).all(|s| *s == rate));
    Ok(out)
}

/// Inflates every matrix of a demand function to row and column sums `rate`.
pub fn inflate_demand(demand: &DemandFunction, rate: Rational) -> Result<DemandFunction> {
    let matrices = demand
        .matrices()
        .iter()
        .map(|m| inflate_matrix(m, rate))
        .collect::<Result<Vec<_>>>()?;
    DemandFunction::new(matrices)
}

/// Every pair, including `a = b`, requests `rate / N`.
pub fn uniform_demand(node_count: usize, rate: Rational, period: usize) -> Result<DemandFunction> {
    if rate < Rational::zero() {
        return Err(OrnError::InvalidParameter(format!("negative rate {rate}")));
    }
    let cell = rate / int(node_count as i128);
    let matrix = DemandMatrix::from_rows(vec![vec![cell; node_count]; node_count])?;
    DemandFunction::new(vec![matrix; period.max(1)])
}

/// Node `a` sends `rate` to `sigma[a]`.
pub fn permutation_demand(sigma: &[NodeId], rate: Rational, period: usize) -> Result<DemandFunction> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &b in sigma {
        if b >= n || std::mem::replace(&mut seen[b], true) {
            return Err(OrnError::InvalidParameter(format!(
                "{sigma:?} is not a permutation"
            )));
        }
    }
    if rate < Rational::zero() {
        return Err(OrnError::InvalidParameter(format!("negative rate {rate}")));
    }
    let mut matrix = DemandMatrix::zeros(n);
    for (a, &b) in sigma.iter().enumerate() {
        matrix.set(a, b, rate)?;
    }
    DemandFunction::new(vec![matrix; period.max(1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn inflate_zero_matrix() {
        let out = inflate_matrix(&DemandMatrix::zeros(2), int(1)).unwrap();
        assert_eq!(out.rows(), vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn stochastic_matrix_unchanged() {
        let m = DemandMatrix::from_rows(vec![
            vec![ratio(1, 3), ratio(2, 3)],
            vec![ratio(2, 3), ratio(1, 3)],
        ])
        .unwrap();
        assert_eq!(inflate_matrix(&m, int(1)).unwrap(), m);
    }

    #[test]
    fn inflate_rejects_excess() {
        let m = DemandMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap();
        assert!(matches!(
            inflate_matrix(&m, ratio(1, 2)),
            Err(OrnError::DemandExceedsRate { .. })
        ));
    }

    #[test]
    fn generators() {
        let u = uniform_demand(4, ratio(1, 2), 1).unwrap();
        assert_eq!(u.at(0).get(1, 2), ratio(1, 8));
        assert_eq!(u.requested_throughput(), ratio(1, 2));
        let p = permutation_demand(&[0, 1, 2], ratio(1, 2), 3).unwrap();
        assert_eq!(p.period(), 3);
        assert_eq!(p.at(5).get(2, 2), ratio(1, 2));
        assert_eq!(p.requested_throughput(), ratio(1, 2));
        assert!(permutation_demand(&[0, 0], ratio(1, 2), 1).is_err());
    }
}
