//! Formal q-expansions with fractional exponent grids.
//!
//! A series lives on a grid d: exponents are integer multiples of 1/d.
//! Coefficients are exact integers (the eta machinery never needs more);
//! rational-coefficient series for binomial expansions live in
//! [`rat_series`].

pub mod eta;
pub mod fixtures;
pub mod hecke;
pub mod rat_series;
pub mod tables;

pub use eta::EtaQuotient;
pub use hecke::{hecke_tp, HeckeContext, Nebentypus};
pub use tables::EigenTables;

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{One, Zero};

/// Truncated formal series sum_i coeffs[i] q^{(offset+i)/grid}, known
/// through exponents < order/grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    grid: u64,
    offset: i64,
    /// exclusive truncation bound, in 1/grid units
    order: i64,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(grid: u64, order: i64) -> Self {
        QSeries { grid, offset: order, order, coeffs: Vec::new() }
    }

    pub fn one(grid: u64, order: i64) -> Self {
        QSeries::monomial(grid, 0, BigInt::one(), order)
    }

    pub fn monomial(grid: u64, exp_units: i64, c: BigInt, order: i64) -> Self {
        if c.is_zero() || exp_units >= order {
            return QSeries::zero(grid, order);
        }
        QSeries { grid, offset: exp_units, order, coeffs: vec![c] }
    }

    pub fn from_coeffs(grid: u64, offset: i64, order: i64, coeffs: Vec<BigInt>) -> Self {
        let mut s = QSeries { grid, offset, order, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let max_len = (self.order - self.offset).max(0) as usize;
        self.coeffs.truncate(max_len);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.offset = self.order;
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.offset += k as i64;
                }
            }
        }
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Leading exponent as a rational, None for the zero series.
    pub fn leading_exponent(&self) -> Option<crate::datum::Rat> {
        if self.is_zero() {
            None
        } else {
            Some(crate::datum::Rat::new(BigInt::from(self.offset), BigInt::from(self.grid)))
        }
    }

    /// Coefficient at exponent u/grid units; error beyond the truncation.
    pub fn coeff_units(&self, u: i64) -> Result<BigInt> {
        if u >= self.order {
            return Err(Error::Truncation(format!(
                "coefficient at {u}/{} requested, series known below {}/{}",
                self.grid, self.order, self.grid
            )));
        }
        if u < self.offset || (u - self.offset) as usize >= self.coeffs.len() {
            return Ok(BigInt::zero());
        }
        Ok(self.coeffs[(u - self.offset) as usize].clone())
    }

    /// Coefficient at an integer exponent n (i.e. q^n).
    pub fn coeff_q(&self, n: i64) -> Result<BigInt> {
        let u = n.checked_mul(self.grid as i64).expect("exponent overflow");
        self.coeff_units(u)
    }

    /// Move to a finer grid g2 (grid | g2).
    pub fn to_grid(&self, g2: u64) -> QSeries {
        assert_eq!(g2 % self.grid, 0, "grid refinement requires grid | g2");
        let s = (g2 / self.grid) as i64;
        if s == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() * s as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s as usize] = c.clone();
        }
        QSeries::from_coeffs(g2, self.offset * s, self.order * s, coeffs)
    }

    /// Represent on the coarsest grid carrying the support (and the
    /// truncation bound, rounded conservatively down).
    pub fn compact(&self) -> QSeries {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = num::integer::gcd(self.grid, self.offset.unsigned_abs());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = num::integer::gcd(g, (self.offset + i as i64).unsigned_abs());
                if g == 1 {
                    return self.clone();
                }
            }
        }
        let s = g as i64;
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .step_by(s as usize)
            .cloned()
            .collect();
        QSeries::from_coeffs(
            self.grid / g,
            self.offset / s,
            self.order.div_euclid(s),
            coeffs,
        )
    }

    /// Substitute tau -> c tau (exponents scale by c).
    pub fn scale_exponents(&self, c: u64) -> QSeries {
        if c == 1 {
            return self.clone();
        }
        let g = num::integer::gcd(self.grid, c);
        let stride = (c / g) as i64;
        let new_grid = self.grid / g;
        let mut coeffs = vec![BigInt::zero(); ((self.coeffs.len() as i64 - 1).max(0) * stride + 1) as usize];
        for (i, cf) in self.coeffs.iter().enumerate() {
            coeffs[i * stride as usize] = cf.clone();
        }
        QSeries::from_coeffs(new_grid, self.offset * stride, self.order * stride, coeffs)
    }

    fn unified(&self, other: &QSeries) -> (QSeries, QSeries) {
        let g = num::integer::lcm(self.grid, other.grid);
        (self.to_grid(g), other.to_grid(g))
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (a, b) = self.unified(other);
        let order = a.order.min(b.order);
        let offset = a.offset.min(b.offset).min(order);
        let mut coeffs = vec![BigInt::zero(); (order - offset).max(0) as usize];
        for (src, base) in [(&a, a.offset), (&b, b.offset)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let u = base + i as i64;
                if u < order {
                    coeffs[(u - offset) as usize] += c;
                }
            }
        }
        QSeries::from_coeffs(a.grid, offset, order, coeffs)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            grid: self.grid,
            offset: self.offset,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> QSeries {
        if k.is_zero() {
            return QSeries::zero(self.grid, self.order);
        }
        QSeries {
            grid: self.grid,
            offset: self.offset,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Truncated product. The result order is what the factors support:
    /// min(a.offset + b.order, b.offset + a.order).
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (a, b) = self.unified(other);
        if a.is_zero() || b.is_zero() {
            let order = (a.offset + b.order).min(b.offset + a.order);
            return QSeries::zero(a.grid, order);
        }
        let order = (a.offset + b.order).min(b.offset + a.order);
        let offset = a.offset + b.offset;
        let len = (order - offset).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        // iterate the sparser factor on the outside
        let (outer, inner) = if a.coeffs.iter().filter(|c| !c.is_zero()).count()
            <= b.coeffs.iter().filter(|c| !c.is_zero()).count()
        {
            (&a, &b)
        } else {
            (&b, &a)
        };
        for (i, ci) in outer.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let max_j = (len as i64 - i as i64).min(inner.coeffs.len() as i64);
            for j in 0..max_j.max(0) as usize {
                let cj = &inner.coeffs[j];
                if !cj.is_zero() {
                    coeffs[i + j] += ci * cj;
                }
            }
        }
        QSeries::from_coeffs(a.grid, offset, order, coeffs)
    }

    /// Exact division: other must have an invertible (+-1) leading
    /// coefficient. Result order: self.order - other.offset.
    pub fn div_exact(&self, other: &QSeries) -> Result<QSeries> {
        let (a, b) = self.unified(other);
        if b.is_zero() {
            return Err(Error::Domain("division by zero series".into()));
        }
        let lead = &b.coeffs[0];
        if !(lead.is_one() || (-lead).is_one()) {
            return Err(Error::Domain(format!(
                "series division requires unit leading coefficient, got {lead}"
            )));
        }
        if a.is_zero() {
            return Ok(QSeries::zero(a.grid, a.order - b.offset));
        }
        let offset = a.offset - b.offset;
        let order = a.order - b.offset;
        let len = (order - offset).max(0) as usize;
        let bnz: Vec<(usize, &BigInt)> = b
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut q = vec![BigInt::zero(); len];
        let neg_lead = (-lead).is_one();
        for n in 0..len {
            let mut acc = {
                let u = a.offset + b.offset + n as i64 - b.offset; // = a.offset + n
                debug_assert_eq!(u, a.offset + n as i64);
                if (n) < a.coeffs.len() {
                    a.coeffs[n].clone()
                } else {
                    BigInt::zero()
                }
            };
            for &(j, cj) in &bnz {
                if j > n {
                    break;
                }
                acc -= cj * &q[n - j];
            }
            q[n] = if neg_lead { -acc } else { acc };
        }
        Ok(QSeries::from_coeffs(a.grid, offset, order, q))
    }

    /// Integer power via repeated multiplication (small exponents).
    pub fn pow(&self, e: u32) -> QSeries {
        let mut acc = QSeries::one(self.grid, self.order + (e as i64 - 1).max(0) * self.offset);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exponent units (relative to the grid) of nonzero coefficients.
    pub fn support_units(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.offset + i as i64)
            .collect()
    }
}

impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return if self.grid == 1 {
                write!(f, "0 + O(q^{})", self.order)
            } else {
                write!(f, "0 + O(q^({}/{}))", self.order, self.grid)
            };
        }
        let mut shown = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if shown >= 8 {
                write!(f, " + ...")?;
                break;
            }
            if shown > 0 {
                write!(f, " + ")?;
            }
            let u = self.offset + i as i64;
            if self.grid == 1 {
                write!(f, "{c}*q^{u}")?;
            } else {
                write!(f, "{c}*q^({u}/{})", self.grid)?;
            }
            shown += 1;
        }
        if self.grid == 1 {
            write!(f, " + O(q^{})", self.order)
        } else {
            write!(f, " + O(q^({}/{}))", self.order, self.grid)
        }
    }
}
