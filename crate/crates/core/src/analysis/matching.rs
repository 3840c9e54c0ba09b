use crate::error::{OrnError, Result};
use crate::rational::{denominator_lcm, Rational};

/// An optimal assignment: row `a` is matched to column `assignment[a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub value: Rational,
    pub assignment: Vec<usize>,
}

/// Exact maximum-weight perfect matching of a square rational matrix.
///
/// Entries are scaled to integers by the lcm of their denominators and the
/// assignment problem is solved with the Hungarian algorithm.
pub fn max_weight_perfect_matching(weights: &[Vec<Rational>]) -> Result<Matching> {
    let n = weights.len();
    if weights.iter().any(|row| row.len() != n) {
        return Err(OrnError::DimensionMismatch(
            "matching requires a square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(Matching {
            value: Rational::default(),
            assignment: Vec::new(),
        });
    }
    let scale = denominator_lcm(weights.iter().flatten())?;
    let overflow = || OrnError::Overflow("scaling matching weights to integers".into());
    let mut cost = vec![vec![0i128; n]; n];
    for (a, row) in weights.iter().enumerate() {
        for (b, w) in row.iter().enumerate() {
            let scaled = w
                .numer()
                .checked_mul(scale / w.denom())
                .ok_or_else(overflow)?;
            // the total of any assignment must stay representable
            if scaled.checked_abs().and_then(|v| v.checked_mul(n as i128 * 4)).is_none() {
                return Err(overflow());
            }
            cost[a][b] = -scaled;
        }
    }
    let assignment = hungarian(&cost);
    let value = assignment
        .iter()
        .enumerate()
        .map(|(a, &b)| weights[a][b])
        .sum();
    Ok(Matching { value, assignment })
}

/// Minimum-cost assignment via shortest augmenting paths with potentials.
fn hungarian(cost: &[Vec<i128>]) -> Vec<usize> {
    let n = cost.len();
    const INF: i128 = i128::MAX / 4;
    // 1-based internals; column 0 is the virtual root
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = INF;
            let mut col1 = 0;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let reduced = cost[r - 1][col - 1] - u[r] - v[col];
                if reduced < minv[col] {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for col in 0..=n {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for col in 1..=n {
        assignment[owner[col] - 1] = col - 1;
    }
    assignment
}
