//! Hecke operators on integer-grid q-expansions and eigenvalue checks.

use super::QSeries;
use crate::datum::{is_integer, rat_int, to_i64, Rat};
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::Zero;

/// Quadratic nebentypus attached to an expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nebentypus {
    Trivial,
    /// The Kronecker character (-2^e / .), e = 24s of the weight-3 member.
    KroneckerMinusTwoPow(i64),
}

impl Nebentypus {
    /// Character value at an odd prime not dividing the conductor.
    pub fn value_at_prime(&self, p: u64) -> i64 {
        match self {
            Nebentypus::Trivial => 1,
            Nebentypus::KroneckerMinusTwoPow(e) => {
                let minus_one = if p % 4 == 1 { 1 } else { -1 };
                let two = if p % 8 == 1 || p % 8 == 7 { 1 } else { -1 };
                let two_pow = if e % 2 == 0 { 1 } else { two };
                minus_one * two_pow
            }
        }
    }

    /// Nebentypus of the weight-3 family member with lower parameter s.
    pub fn of_k2(s: &Rat) -> Result<Nebentypus> {
        let e = s * rat_int(24);
        if !is_integer(&e) {
            return Err(Error::Domain(format!("24s not integral for s={s}")));
        }
        Ok(Nebentypus::KroneckerMinusTwoPow(to_i64(e.numer())))
    }
}

/// Weight and character data needed to apply T_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeContext {
    pub weight: u32,
    pub nebentypus: Nebentypus,
}

impl HeckeContext {
    pub fn new(weight: u32, nebentypus: Nebentypus) -> Self {
        HeckeContext { weight, nebentypus }
    }
}

/// (T_p f)(n) = a(np) + chi(p) p^{k-1} a(n/p), the second term dropped
/// when p does not divide n. The series must live on an integer grid.
pub fn hecke_tp(series: &QSeries, p: u64, ctx: &HeckeContext) -> Result<QSeries> {
    let s = series.compact();
    if s.grid() != 1 {
        return Err(Error::Grid(format!(
            "Hecke action needs an integer exponent grid, got 1/{}",
            s.grid()
        )));
    }
    let out_order = (s.order() - 1).div_euclid(p as i64) + 1;
    if out_order < 2 {
        return Err(Error::Truncation(format!(
            "series order {} too small for T_{p}",
            s.order()
        )));
    }
    let chi_pk = BigInt::from(ctx.nebentypus.value_at_prime(p))
        * BigInt::from(p).pow(ctx.weight - 1);
    let mut coeffs = Vec::with_capacity(out_order.max(0) as usize);
    for n in 0..out_order {
        let mut c = s.coeff_q(n * p as i64)?;
        if n % p as i64 == 0 && n > 0 {
            c += &chi_pk * s.coeff_q(n / p as i64)?;
        }
        coeffs.push(c);
    }
    Ok(QSeries::from_coeffs(1, 0, out_order, coeffs))
}

/// If `series` is a T_p eigenvector, return its eigenvalue; otherwise a
/// consistency error. The proportionality is checked on every available
/// coefficient of T_p f.
pub fn eigenvalue(series: &QSeries, p: u64, ctx: &HeckeContext) -> Result<BigInt> {
    let f = series.compact();
    let tf = hecke_tp(&f, p, ctx)?;
    if tf.is_zero() {
        return Ok(BigInt::zero());
    }
    if f.is_zero() {
        return Err(Error::Consistency("T_p of zero is nonzero".into()));
    }
    // the eigenvalue is read off at the first exponent where f is nonzero
    let lead_u = f.offset();
    if tf.offset() < lead_u {
        return Err(Error::Consistency(format!(
            "T_{p} image has support below the leading exponent of the series"
        )));
    }
    let fl = f.coeff_units(lead_u)?;
    let tl = tf.coeff_units(lead_u)?;
    let (lam, rem) = num::Integer::div_rem(&tl, &fl);
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "eigenvalue {tl}/{fl} is not integral at p={p}"
        )));
    }
    let scaled = f.scale(&lam);
    for n in 0..tf.order() {
        let a = tf.coeff_q(n)?;
        let b = scaled.coeff_q(n)?;
        if a != b {
            return Err(Error::Consistency(format!(
                "T_{p} f deviates from {lam} * f at exponent {n}: {a} vs {b}"
            )));
        }
    }
    Ok(lam)
}

/// Kronecker symbol (a/n) for odd positive n (Jacobi symbol).
pub fn jacobi_symbol(a: i64, n: u64) -> i64 {
    assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::rat;
    use crate::qseries::eta::{k1_series, k2_series};

    #[test]
    fn nebentypus_values() {
        // (-2^18/.) = (-1/.)
        let chi = Nebentypus::KroneckerMinusTwoPow(18);
        assert_eq!(chi.value_at_prime(5), 1);
        assert_eq!(chi.value_at_prime(7), -1);
        assert_eq!(chi.value_at_prime(13), 1);
        // (-2^21/.) = (-2/.): +1 at 1,3 mod 8
        let chi = Nebentypus::KroneckerMinusTwoPow(21);
        assert_eq!(chi.value_at_prime(17), 1);
        assert_eq!(chi.value_at_prime(3), 1);
        assert_eq!(chi.value_at_prime(5), -1);
        assert_eq!(chi.value_at_prime(7), -1);
        // cross-check against the Jacobi symbol
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29] {
            let direct = jacobi_symbol(-2, p) * jacobi_symbol(2, p).pow(20);
            assert_eq!(Nebentypus::KroneckerMinusTwoPow(21).value_at_prime(p), direct, "p={p}");
        }
    }

    #[test]
    fn tp_on_zero_and_basic() {
        let z = QSeries::zero(1, 100);
        let ctx = HeckeContext::new(2, Nebentypus::Trivial);
        assert!(hecke_tp(&z, 5, &ctx).unwrap().is_zero());
    }

    #[test]
    fn tp_definition_weight2() {
        // f = K1(1/4,5/4)(8 tau): (T_p f)_1 = a_p
        let f = k1_series(&rat(1, 4), &rat(5, 4), 8, 80).unwrap();
        let ctx = HeckeContext::new(2, Nebentypus::Trivial);
        let tf = hecke_tp(&f, 5, &ctx).unwrap();
        assert_eq!(tf.coeff_q(1).unwrap(), f.coeff_q(5).unwrap());
        // T_5 f = a_5 f for the eigenform, a_5 = -2
        let lam = eigenvalue(&f, 5, &ctx).unwrap();
        assert_eq!(lam, BigInt::from(-2));
    }

    #[test]
    fn eigen_k2_member() {
        // T_5 K2(1/4,3/4)(8 tau) has an integer eigenvalue (p = 5 = 1 mod 4)
        let f = k2_series(&rat(1, 4), &rat(3, 4), 8, 5 * 61).unwrap();
        let ctx = HeckeContext::new(3, Nebentypus::of_k2(&rat(3, 4)).unwrap());
        let lam = eigenvalue(&f, 5, &ctx).unwrap();
        assert_eq!(lam, BigInt::from(2));
        // |a_p| <= 2p
        assert!(lam.magnitude() <= &num::BigUint::from(10u32));
    }

    #[test]
    fn non_eigen_detected() {
        // eta(tau)^24 scaled coefficients are eigen, but an arbitrary
        // integer series is not
        let s = QSeries::from_coeffs(
            1,
            1,
            40,
            (1..40).map(BigInt::from).collect(),
        );
        let ctx = HeckeContext::new(2, Nebentypus::Trivial);
        assert!(matches!(eigenvalue(&s, 5, &ctx), Err(Error::Consistency(_))));
    }
}
