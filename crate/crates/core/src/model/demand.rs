use num_traits::{Signed, Zero};

use super::{NodeId, Slot};
use crate::error::{OrnError, Result};
use crate::rational::Rational;

/// Square matrix of exact nonnegative demands, row = source, column = destination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandMatrix {
    size: usize,
    cells: Vec<Rational>,
}

impl DemandMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            cells: vec![Rational::zero(); size * size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        let mut cells = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(OrnError::DimensionMismatch(format!(
                    "demand matrix row of length {} in a {size}x{size} matrix",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| v.is_negative()) {
                return Err(OrnError::InvalidParameter(format!("negative demand {v}")));
            }
            cells.extend(row);
        }
        Ok(Self { size, cells })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, a: NodeId, b: NodeId) -> Rational {
        self.cells[a * self.size + b]
    }

    pub fn set(&mut self, a: NodeId, b: NodeId, value: Rational) -> Result<()> {
        if value.is_negative() {
            return Err(OrnError::InvalidParameter(format!("negative demand {value}")));
        }
        self.cells[a * self.size + b] = value;
        Ok(())
    }

    pub fn row_sum(&self, a: NodeId) -> Rational {
        self.cells[a * self.size..(a + 1) * self.size].iter().sum()
    }

    pub fn col_sum(&self, b: NodeId) -> Rational {
        (0..self.size).map(|a| self.get(a, b)).sum()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.cells.chunks(self.size).map(<[Rational]>::to_vec).collect()
    }

    /// Maximum row or column sum.
    pub fn requested_throughput(&self) -> Rational {
        (0..self.size)
            .flat_map(|i| [self.row_sum(i), self.col_sum(i)])
            .max()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(Zero::is_zero)
    }
}

/// Periodic demand: slot `t` uses matrix `t mod period`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandFunction {
    matrices: Vec<DemandMatrix>,
}

impl DemandFunction {
    pub fn new(matrices: Vec<DemandMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(OrnError::InvalidParameter("demand period must be at least 1".into()));
        };
        let size = first.size();
        if matrices.iter().any(|m| m.size() != size) {
            return Err(OrnError::DimensionMismatch(
                "all demand matrices must share one size".into(),
            ));
        }
        Ok(Self { matrices })
    }

    pub fn constant(matrix: DemandMatrix) -> Self {
        Self {
            matrices: vec![matrix],
        }
    }

    pub fn period(&self) -> usize {
        self.matrices.len()
    }

    pub fn node_count(&self) -> usize {
        self.matrices[0].size()
    }

    pub fn at(&self, t: Slot) -> &DemandMatrix {
        &self.matrices[t.rem_euclid(self.matrices.len() as Slot) as usize]
    }

    pub fn matrices(&self) -> &[DemandMatrix] {
        &self.matrices
    }

    /// Maximum row or column sum over all slots.
    pub fn requested_throughput(&self) -> Rational {
        self.matrices
            .iter()
            .map(DemandMatrix::requested_throughput)
            .max()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(DemandMatrix::is_zero)
    }
}
