use crate::error::{OrnError, Result};
use crate::model::NodeId;

/// Mixed-radix encoding of nodes as coordinate tuples over `Z/base`,
/// coordinate 0 least significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coordinates {
    base: usize,
    dims: usize,
    node_count: usize,
}

impl Coordinates {
    pub fn new(base: usize, dims: usize) -> Result<Self> {
        if base < 2 || dims == 0 {
            return Err(OrnError::InvalidParameter(format!(
                "coordinates need base >= 2 and at least one dimension (base {base}, dims {dims})"
            )));
        }
        let node_count = u32::try_from(dims)
            .ok()
            .and_then(|d| base.checked_pow(d))
            .ok_or_else(|| OrnError::Overflow(format!("{base}^{dims} nodes")))?;
        Ok(Self {
            base,
            dims,
            node_count,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn decode(&self, node: NodeId) -> Vec<usize> {
        let mut x = node;
        (0..self.dims)
            .map(|_| {
                let d = x % self.base;
                x /= self.base;
                d
            })
            .collect()
    }

    pub fn encode(&self, digits: &[usize]) -> NodeId {
        digits.iter().rev().fold(0, |acc, &d| acc * self.base + d % self.base)
    }

    /// Coordinate `index` of `node`.
    pub fn digit(&self, node: NodeId, index: usize) -> usize {
        (node / self.base.pow(index as u32)) % self.base
    }

    /// `node + scale * vector`, coordinatewise mod `base`.
    pub fn add_scaled(&self, node: NodeId, vector: &[usize], scale: usize) -> NodeId {
        let digits: Vec<usize> = self
            .decode(node)
            .iter()
            .zip(vector)
            .map(|(&d, &v)| (d + scale * v) % self.base)
            .collect();
        self.encode(&digits)
    }

    /// `b - a`, coordinatewise mod `base`.
    pub fn difference(&self, a: NodeId, b: NodeId) -> Vec<usize> {
        self.decode(a)
            .iter()
            .zip(self.decode(b))
            .map(|(&x, y)| (y + self.base - x) % self.base)
            .collect()
    }

    pub fn hamming(&self, a: NodeId, b: NodeId) -> usize {
        self.decode(a)
            .iter()
            .zip(self.decode(b))
            .filter(|(&x, y)| x != *y)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_zero_is_least_significant() {
        let c = Coordinates::new(3, 2).unwrap();
        assert_eq!(c.encode(&[1, 0]), 1);
        assert_eq!(c.encode(&[0, 1]), 3);
        assert_eq!(c.decode(7), vec![1, 2]);
        assert_eq!(c.digit(7, 1), 2);
    }

    #[test]
    fn arithmetic() {
        let c = Coordinates::new(5, 2).unwrap();
        let a = c.encode(&[4, 1]);
        let b = c.encode(&[1, 3]);
        assert_eq!(c.difference(a, b), vec![2, 2]);
        assert_eq!(c.add_scaled(a, &[1, 1], 2), b);
        assert_eq!(c.hamming(a, b), 2);
        assert_eq!(c.hamming(a, a), 0);
    }
}
