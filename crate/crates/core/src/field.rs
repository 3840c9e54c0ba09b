//! Small finite-field arithmetic: prime fields, linear solves over them, and
//! `GF(p^k)` built from a brute-forced irreducible polynomial.

use crate::error::{OrnError, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `n = p^k` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Integer `k`-th root of `n` when `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(k) == Some(n))
}

pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    result
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Solves `A x = b` over `F_p` when `A` (rows x cols, rows >= cols) has full
/// column rank. Returns `None` when the system is inconsistent.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<u64> = row.iter().map(|v| v % p).collect();
            r.push(rhs % p);
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = inv_mod(m[pivot_row][col], p);
        for v in m[pivot_row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows {
            if r != pivot_row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..=cols {
                    m[r][c] = (m[r][c] + p * p - factor * m[pivot_row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| r[cols] != 0) {
        return None;
    }
    if pivots.len() < cols {
        // rank-deficient: no unique solution
        return None;
    }
    Some((0..cols).map(|c| m[c][cols]).collect())
}

/// Rank of a matrix over `F_p`.
pub fn rank_mod(a: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(sel) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, sel);
        let inv = inv_mod(m[rank][col], p);
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col] * inv % p;
                for c in 0..cols {
                    m[r][c] = (m[r][c] + p * p - factor * m[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `GF(p^k)`. Elements are encoded as integers in `[0, p^k)` whose base-`p`
/// digits (least significant first) are polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    characteristic: u64,
    degree: u32,
    /// Monic irreducible modulus, coefficients low to high, length `degree + 1`.
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(order: u64) -> Result<Self> {
        let (p, k) = prime_power(order).ok_or(OrnError::NotPrimePower(order))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, k)
        };
        Ok(Self {
            characteristic: p,
            degree: k,
            modulus,
        })
    }

    pub fn order(&self) -> u64 {
        self.characteristic.pow(self.degree)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        let p = self.characteristic;
        (0..self.degree)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.characteristic + d)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        if self.degree == 1 {
            return (x + y) % self.characteristic;
        }
        let p = self.characteristic;
        let dx = self.digits(x);
        let dy = self.digits(y);
        let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
        self.undigits(&sum)
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let p = self.characteristic;
        if self.degree == 1 {
            return x * y % p;
        }
        let k = self.degree as usize;
        let dx = self.digits(x);
        let dy = self.digits(y);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, a) in dx.iter().enumerate() {
            for (j, b) in dy.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        poly_reduce(&mut prod, &self.modulus, p);
        prod.truncate(k);
        prod.resize(k, 0);
        self.undigits(&prod)
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut result = 1;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: u64) -> Option<u64> {
        if x == 0 || x >= self.order() {
            return None;
        }
        let mut acc = x;
        let mut k = 1;
        while acc != 1 {
            acc = self.mul(acc, x);
            k += 1;
        }
        Some(k)
    }

    pub fn is_primitive(&self, x: u64) -> bool {
        self.element_order(x) == Some(self.order() - 1)
    }

    pub fn smallest_primitive_root(&self) -> u64 {
        (1..self.order())
            .find(|&x| self.is_primitive(x))
            .expect("every finite field has a primitive element")
    }
}

/// Reduces `poly` in place modulo a monic `modulus`.
fn poly_reduce(poly: &mut [u64], modulus: &[u64], p: u64) {
    let deg = modulus.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        for j in 0..=deg {
            let idx = i - deg + j;
            poly[idx] = (poly[idx] + p * p - c * modulus[j] % p) % p;
        }
    }
}

fn poly_divisible(poly: &[u64], divisor: &[u64], p: u64) -> bool {
    let mut r = poly.to_vec();
    poly_reduce(&mut r, divisor, p);
    r[..divisor.len() - 1].iter().all(|&c| c == 0)
}

/// Smallest monic irreducible polynomial of degree `k` over `F_p`, found by
/// trial division with all monic polynomials of degree `1..=k/2`.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let monic = |deg: usize, code: u64| -> Vec<u64> {
        let mut c = code;
        let mut coeffs: Vec<u64> = (0..deg)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect();
        coeffs.push(1);
        coeffs
    };
    for code in 0..p.pow(k as u32) {
        let candidate = monic(k, code);
        let reducible = (1..=k / 2).any(|d| {
            (0..p.pow(d as u32)).any(|c| poly_divisible(&candidate, &monic(d, c), p))
        });
        if !reducible {
            return candidate;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
