//! Rational-coefficient formal series on fractional grids: binomial
//! (fractional) powers, q-derivatives, and series composition. Used by the
//! identities that pass through the modular lambda function.

use super::QSeries;
use crate::datum::{denom_u64, rat_int, Rat};
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero}; // Signed for is_positive

/// Truncated series sum_i coeffs[i] q^{(offset+i)/grid} over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSeries {
    grid: u64,
    offset: i64,
    order: i64,
    coeffs: Vec<Rat>,
}

impl RatSeries {
    pub fn zero(grid: u64, order: i64) -> Self {
        RatSeries { grid, offset: order, order, coeffs: Vec::new() }
    }

    pub fn one(grid: u64, order: i64) -> Self {
        RatSeries::from_coeffs(grid, 0, order, vec![Rat::one()])
    }

    pub fn from_coeffs(grid: u64, offset: i64, order: i64, coeffs: Vec<Rat>) -> Self {
        let mut s = RatSeries { grid, offset, order, coeffs };
        s.normalize();
        s
    }

    pub fn from_qseries(q: &QSeries) -> Self {
        RatSeries::from_coeffs(
            q.grid(),
            q.offset(),
            q.order(),
            q.coeffs().iter().map(|c| Rat::from(c.clone())).collect(),
        )
    }

    /// Back to integer coefficients; error if any coefficient is fractional.
    pub fn to_qseries(&self) -> Result<QSeries> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return Err(Error::Consistency(format!("non-integer coefficient {c}")));
            }
            out.push(c.numer().clone());
        }
        Ok(QSeries::from_coeffs(self.grid, self.offset, self.order, out))
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
            Some(k) if k > 0 => {
                self.coeffs.drain(..k);
                self.offset += k as i64;
            }
            _ => {}
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

    pub fn leading_exponent(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat::new(BigInt::from(self.offset), BigInt::from(self.grid)))
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.first()
    }

    pub fn coeff_units(&self, u: i64) -> Result<Rat> {
        if u >= self.order {
            return Err(Error::Truncation(format!(
                "coefficient at {u}/{} requested beyond order {}",
                self.grid, self.order
            )));
        }
        if u < self.offset || (u - self.offset) as usize >= self.coeffs.len() {
            return Ok(Rat::zero());
        }
        Ok(self.coeffs[(u - self.offset) as usize].clone())
    }

    pub fn to_grid(&self, g2: u64) -> RatSeries {
        assert_eq!(g2 % self.grid, 0);
        let s = (g2 / self.grid) as i64;
        if s == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() * s as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s as usize] = c.clone();
        }
        RatSeries::from_coeffs(g2, self.offset * s, self.order * s, coeffs)
    }

    fn unified(&self, other: &RatSeries) -> (RatSeries, RatSeries) {
        let g = num::integer::lcm(self.grid, other.grid);
        (self.to_grid(g), other.to_grid(g))
    }

    pub fn add(&self, other: &RatSeries) -> RatSeries {
        let (a, b) = self.unified(other);
        let order = a.order.min(b.order);
        let offset = a.offset.min(b.offset).min(order);
        let mut coeffs = vec![Rat::zero(); (order - offset).max(0) as usize];
        for (src, base) in [(&a, a.offset), (&b, b.offset)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let u = base + i as i64;
                if u < order {
                    coeffs[(u - offset) as usize] += c;
                }
            }
        }
        RatSeries::from_coeffs(a.grid, offset, order, coeffs)
    }

    pub fn neg(&self) -> RatSeries {
        RatSeries {
            grid: self.grid,
            offset: self.offset,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &RatSeries) -> RatSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> RatSeries {
        if k.is_zero() {
            return RatSeries::zero(self.grid, self.order);
        }
        RatSeries {
            grid: self.grid,
            offset: self.offset,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &RatSeries) -> RatSeries {
        let (a, b) = self.unified(other);
        let order = (a.offset + b.order).min(b.offset + a.order);
        if a.is_zero() || b.is_zero() {
            return RatSeries::zero(a.grid, order);
        }
        let offset = a.offset + b.offset;
        let len = (order - offset).max(0) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (i, ci) in a.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let max_j = (len as i64 - i as i64).min(b.coeffs.len() as i64);
            for j in 0..max_j.max(0) as usize {
                let cj = &b.coeffs[j];
                if !cj.is_zero() {
                    coeffs[i + j] += ci * cj;
                }
            }
        }
        RatSeries::from_coeffs(a.grid, offset, order, coeffs)
    }

    /// Division by a series with nonzero leading coefficient.
    pub fn div(&self, other: &RatSeries) -> Result<RatSeries> {
        let (a, b) = self.unified(other);
        if b.is_zero() {
            return Err(Error::Domain("division by zero series".into()));
        }
        let lead = b.coeffs[0].clone();
        let offset = a.offset - b.offset;
        let order = a.order - b.offset;
        if a.is_zero() {
            return Ok(RatSeries::zero(a.grid, order));
        }
        let len = (order - offset).max(0) as usize;
        let mut q = vec![Rat::zero(); len];
        for n in 0..len {
            let mut acc = if n < a.coeffs.len() {
                a.coeffs[n].clone()
            } else {
                Rat::zero()
            };
            for (j, cj) in b.coeffs.iter().enumerate().skip(1) {
                if j > n {
                    break;
                }
                if !cj.is_zero() {
                    acc -= cj * &q[n - j];
                }
            }
            q[n] = acc / &lead;
        }
        Ok(RatSeries::from_coeffs(a.grid, offset, order, q))
    }

    /// d/dq: c q^e -> c e q^{e-1}.
    pub fn derivative_q(&self) -> RatSeries {
        let g = self.grid as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::new(BigInt::from(self.offset + i as i64), BigInt::from(g)))
            .collect();
        RatSeries::from_coeffs(self.grid, self.offset - g, self.order - g, coeffs)
    }
}

/// (1 + h)^t for a series with leading term 1, by the standard recurrence.
fn one_plus_pow(h: &RatSeries, t: &Rat) -> RatSeries {
    // h has offset > 0 on its grid; work relative to exponent units
    let order = h.order;
    let len = order.max(0) as usize;
    let mut hv = vec![Rat::zero(); len];
    for (i, c) in h.coeffs.iter().enumerate() {
        let u = h.offset + i as i64;
        if u >= 0 && (u as usize) < len {
            hv[u as usize] = c.clone();
        }
    }
    let mut g = vec![Rat::zero(); len];
    if len > 0 {
        g[0] = Rat::one();
    }
    for n in 1..len {
        let mut acc = Rat::zero();
        for k in 1..=n {
            if hv[k].is_zero() {
                continue;
            }
            // ((t+1)k - n)/n * h_k * g_{n-k}
            let w = (t + rat_int(1)) * rat_int(k as i64) - rat_int(n as i64);
            acc += w * &hv[k] * &g[n - k];
        }
        g[n] = acc / rat_int(n as i64);
    }
    RatSeries::from_coeffs(h.grid, 0, order, g)
}

/// Fractional power of a series c q^e (1 + h): the rational value of c^t
/// must be supplied unless c = 1. The result exponent te moves to the
/// grid lcm(grid, den(te)).
pub fn fractional_power(s: &RatSeries, t: &Rat, c_pow_t: Option<&Rat>) -> Result<RatSeries> {
    if s.is_zero() {
        return Err(Error::Domain("fractional power of the zero series".into()));
    }
    let c = s.leading_coeff().unwrap().clone();
    let scalar = if c.is_one() {
        match c_pow_t {
            Some(v) => v.clone(),
            None => Rat::one(),
        }
    } else {
        match c_pow_t {
            Some(v) => v.clone(),
            None => {
                return Err(Error::Domain(format!(
                    "leading coefficient {c} requires the scalar c^t to be supplied"
                )))
            }
        }
    };
    let e = s.leading_exponent().unwrap();
    let te = &e * t;
    let out_grid = num::integer::lcm(s.grid, denom_u64(&te));
    if out_grid > 1_000_000 {
        return Err(Error::Grid(format!(
            "exponent {te} needs grid {out_grid}, beyond any supported integer grid"
        )));
    }
    // h = s / (c q^e) - 1 on the original grid
    let lead = RatSeries::from_coeffs(s.grid, s.offset, s.order, vec![c.clone()]);
    let normalized = s.div(&lead)?;
    let h = normalized.sub(&RatSeries::one(s.grid, normalized.order()));
    let body = one_plus_pow(&h, t).to_grid(out_grid);
    // shift by te and scale by c^t
    let te_units = crate::datum::to_i64((te * rat_int(out_grid as i64)).numer());
    Ok(RatSeries::from_coeffs(
        out_grid,
        body.offset + te_units,
        body.order + te_units,
        body.coeffs.iter().map(|x| x * &scalar).collect(),
    ))
}

/// sum_k c_k inner^k for an inner series with positive leading exponent,
/// by Horner evaluation from the top. The caller must supply enough
/// coefficients: len(coeffs) * leading_exponent(inner) must reach the
/// inner truncation order for the result to be fully determined.
pub fn compose_series(coeffs: &[Rat], inner: &RatSeries) -> Result<RatSeries> {
    let ell = inner
        .leading_exponent()
        .ok_or_else(|| Error::Domain("composition with the zero series".into()))?;
    if !ell.is_positive() {
        return Err(Error::Domain(format!(
            "composition requires positive leading exponent, got {ell}"
        )));
    }
    let mut acc = RatSeries::zero(inner.grid, inner.order);
    for c in coeffs.iter().rev() {
        acc = acc.mul(inner);
        acc = acc.add(&RatSeries::from_coeffs(inner.grid, 0, inner.order, vec![c.clone()]));
    }
    Ok(acc)
}

/// Coefficients of 2F1(a, b; c; x) through degree deg.
pub fn f21_coefficients(a: &Rat, b: &Rat, c: &Rat, deg: usize) -> Vec<Rat> {
    let mut v = Vec::with_capacity(deg + 1);
    let mut term = Rat::one();
    for k in 0..=deg {
        v.push(term.clone());
        let kk = rat_int(k as i64);
        term = term * (a + &kk) * (b + &kk) / ((c + &kk) * (&kk + rat_int(1)));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::rat;

    #[test]
    fn pow_zero_is_one() {
        let s = RatSeries::from_coeffs(2, 1, 20, vec![Rat::one(), rat(3, 2)]);
        let p = fractional_power(&s, &Rat::zero(), None).unwrap();
        assert_eq!(p.leading_exponent().unwrap(), Rat::zero());
        assert!(p.leading_coeff().unwrap().is_one());
        for u in 1..p.order() {
            assert!(p.coeff_units(u).unwrap().is_zero());
        }
    }

    #[test]
    fn square_via_fractional_power() {
        // ((q^{1/2})(1 + q^{1/2}))^2 = q (1 + 2 q^{1/2} + q)
        let s = RatSeries::from_coeffs(2, 1, 24, vec![Rat::one(), Rat::one()]);
        let p = fractional_power(&s, &rat(2, 1), None).unwrap();
        assert_eq!(p.leading_exponent().unwrap(), rat(1, 1));
        assert_eq!(p.coeff_units(2).unwrap(), Rat::one());
        assert_eq!(p.coeff_units(3).unwrap(), rat(2, 1));
        assert_eq!(p.coeff_units(4).unwrap(), Rat::one());
    }

    #[test]
    fn fractional_power_consistency() {
        // (1 - x)^{1/2} squared gives 1 - x
        let s = RatSeries::from_coeffs(1, 0, 16, vec![Rat::one(), -Rat::one()]);
        let r = fractional_power(&s, &rat(1, 2), None).unwrap();
        let sq = r.mul(&r);
        assert_eq!(sq.coeff_units(0).unwrap(), Rat::one());
        assert_eq!(sq.coeff_units(1).unwrap(), -Rat::one());
        for u in 2..sq.order() {
            assert!(sq.coeff_units(u).unwrap().is_zero(), "u={u}");
        }
    }

    #[test]
    fn scalar_requirement() {
        let s = RatSeries::from_coeffs(2, 1, 10, vec![rat(16, 1), rat(3, 1)]);
        assert!(fractional_power(&s, &rat(1, 4), None).is_err());
        let p = fractional_power(&s, &rat(1, 4), Some(&rat(2, 1))).unwrap();
        assert_eq!(p.leading_coeff().unwrap(), &rat(2, 1));
        assert_eq!(p.leading_exponent().unwrap(), rat(1, 8));
        assert_eq!(p.grid(), 8);
    }

    #[test]
    fn derivative() {
        // d/dq (q^{1/2}) = (1/2) q^{-1/2}
        let s = RatSeries::from_coeffs(2, 1, 10, vec![Rat::one()]);
        let d = s.derivative_q();
        assert_eq!(d.leading_exponent().unwrap(), rat(-1, 2));
        assert_eq!(d.leading_coeff().unwrap(), &rat(1, 2));
    }
}
