//! Eta quotients and the named series built from them.
//!
//! The Dedekind factor eta(c tau) = q^{c/24} prod (1 - q^{cn}) expands
//! through Euler's pentagonal theorem, so a single factor is sparse;
//! positive powers are repeated sparse multiplications and negative powers
//! repeated exact divisions, keeping every intermediate integral.

use super::QSeries;
use crate::datum::{in_s1, in_s2, is_integer, rat, rat_int, to_i64, Rat};
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// prod_{n>=1} (1 - x^n) with x = q^{scale_units/grid}, through Euler's
/// pentagonal expansion: sum_k (-1)^k x^{k(3k-1)/2}.
pub fn pentagonal_series(grid: u64, scale_units: i64, order_units: i64) -> QSeries {
    assert!(scale_units > 0);
    let mut coeffs = vec![BigInt::zero(); order_units.max(1) as usize];
    let push = |k: i64, coeffs: &mut Vec<BigInt>| {
        let pent = k * (3 * k - 1) / 2;
        let u = pent * scale_units;
        if u < order_units {
            coeffs[u as usize] += if k.rem_euclid(2) == 0 { 1 } else { -1 };
        }
    };
    push(0, &mut coeffs);
    let mut k = 1i64;
    loop {
        let pent = k * (3 * k - 1) / 2;
        if pent * scale_units >= order_units && (k * (3 * k + 1) / 2) * scale_units >= order_units {
            break;
        }
        push(k, &mut coeffs);
        push(-k, &mut coeffs);
        k += 1;
    }
    QSeries::from_coeffs(grid, 0, order_units, coeffs)
}

/// A finite product prod_i eta(scale_i tau)^{e_i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    /// (scale, exponent), scales positive, merged and sorted.
    factors: Vec<(Rat, i32)>,
}

impl EtaQuotient {
    pub fn new(factors: Vec<(Rat, i32)>) -> Result<Self> {
        let mut merged: Vec<(Rat, i32)> = Vec::new();
        for (scale, e) in factors {
            if !scale.is_positive() {
                return Err(Error::Parameter(format!("eta scale {scale} must be positive")));
            }
            if e == 0 {
                continue;
            }
            match merged.iter_mut().find(|(s, _)| *s == scale) {
                Some((_, acc)) => *acc += e,
                None => merged.push((scale, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(EtaQuotient { factors: merged })
    }

    pub fn factors(&self) -> &[(Rat, i32)] {
        &self.factors
    }

    /// Half the sum of the exponents.
    pub fn weight(&self) -> Rat {
        self.factors
            .iter()
            .fold(Rat::zero(), |acc, (_, e)| acc + rat(*e as i64, 2))
    }

    /// sum_i e_i scale_i / 24.
    pub fn leading_exponent(&self) -> Rat {
        self.factors.iter().fold(Rat::zero(), |acc, (s, e)| {
            acc + s * rat(*e as i64, 24)
        })
    }

    /// Substitute tau -> n tau.
    pub fn scaled(&self, n: u64) -> EtaQuotient {
        EtaQuotient {
            factors: self
                .factors
                .iter()
                .map(|(s, e)| (s * rat_int(n as i64), *e))
                .collect(),
        }
    }

    /// The coarsest grid on which the pentagonal exponents of every
    /// factor and the total leading exponent are integral.
    pub fn natural_grid(&self) -> u64 {
        let mut g = crate::datum::denom_u64(&self.leading_exponent());
        for (s, _) in &self.factors {
            g = num::integer::lcm(g, crate::datum::denom_u64(s));
        }
        g
    }

    /// Canonical descriptor for cache keys.
    pub fn descriptor(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(s, e)| format!("{s}^{e}"))
            .collect();
        format!("eta:{}", parts.join("*"))
    }

    /// Expand to a series known below order_units/grid.
    pub fn expand(&self, grid: u64, order_units: i64) -> Result<QSeries> {
        let prefix = self.leading_exponent() * rat_int(grid as i64);
        if !is_integer(&prefix) {
            return Err(Error::Grid(format!(
                "leading exponent {} not on grid 1/{grid}",
                self.leading_exponent()
            )));
        }
        let prefix_units = to_i64(prefix.numer());
        let mag_order = order_units - prefix_units;
        if mag_order <= 0 {
            return Ok(QSeries::zero(grid, order_units));
        }
        let mut acc = QSeries::one(grid, mag_order);
        // positive powers first: intermediates stay holomorphic-sized
        for positive in [true, false] {
            for (s, e) in &self.factors {
                if (*e > 0) != positive {
                    continue;
                }
                let su = s * rat_int(grid as i64);
                if !is_integer(&su) {
                    return Err(Error::Grid(format!("scale {s} not on grid 1/{grid}")));
                }
                let su = to_i64(su.numer());
                let pent = pentagonal_series(grid, su, mag_order);
                for _ in 0..e.unsigned_abs() {
                    acc = if positive {
                        acc.mul(&pent)
                    } else {
                        acc.div_exact(&pent)?
                    };
                }
            }
        }
        let coeffs = acc.coeffs().to_vec();
        Ok(QSeries::from_coeffs(
            grid,
            acc.offset() + prefix_units,
            order_units,
            coeffs,
        ))
    }

    /// Image under tau -> -1/(N tau): each eta(m tau) becomes
    /// sqrt((N/m) tau / i) eta((N/m) tau). Returns the collected constant
    /// and the image quotient.
    pub fn fricke(&self, n: u64) -> Result<(FrickeFactor, EtaQuotient)> {
        let mut scalar_sq = Rat::one();
        let mut tau_power = Rat::zero();
        let mut factors = Vec::new();
        for (m, e) in &self.factors {
            let q = rat_int(n as i64) / m;
            let admissible = is_integer(&q) || q == rat(1, 2);
            if !admissible || !q.is_positive() {
                return Err(Error::Domain(format!(
                    "scale {m} does not divide the transform level {n}"
                )));
            }
            for _ in 0..e.unsigned_abs() {
                if *e > 0 {
                    scalar_sq *= &q;
                } else {
                    scalar_sq /= &q;
                }
            }
            tau_power += rat(*e as i64, 2);
            factors.push((q, *e));
        }
        Ok((FrickeFactor { scalar_sq, tau_power }, EtaQuotient::new(factors)?))
    }
}

/// The constant of a Fricke transform: sqrt(scalar_sq) * (tau/i)^{tau_power}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrickeFactor {
    pub scalar_sq: Rat,
    pub tau_power: Rat,
}

fn integral_exponent(x: Rat, what: &str) -> Result<i32> {
    if !is_integer(&x) {
        return Err(Error::Domain(format!(
            "{what} exponent {x} is not an integer; pair outside the admissible set"
        )));
    }
    Ok(to_i64(x.numer()) as i32)
}

/// The weight-3 family: eta(tau/2)^{16s-8r-12} eta(2 tau)^{8s+8r-12} / eta(tau)^{24s-30}.
pub fn k2_quotient(r: &Rat, s: &Rat) -> Result<EtaQuotient> {
    if !in_s2(r, s) {
        return Err(Error::Domain(format!("({r},{s}) outside the weight-3 parameter set")));
    }
    let a = integral_exponent(rat_int(16) * s - rat_int(8) * r - rat_int(12), "eta(tau/2)")?;
    let b = integral_exponent(rat_int(8) * s + rat_int(8) * r - rat_int(12), "eta(2tau)")?;
    let c = integral_exponent(rat_int(24) * s - rat_int(30), "eta(tau)")?;
    EtaQuotient::new(vec![(rat(1, 2), a), (rat_int(2), b), (rat_int(1), -c)])
}

/// The weight-2 family: eta(tau/2)^{16s-8r-16} eta(2 tau)^{8r+8s-12} / eta(tau)^{24s-32}.
pub fn k1_quotient(r: &Rat, s: &Rat) -> Result<EtaQuotient> {
    if !in_s1(r, s) {
        return Err(Error::Domain(format!("({r},{s}) outside the weight-2 parameter set")));
    }
    let a = integral_exponent(rat_int(16) * s - rat_int(8) * r - rat_int(16), "eta(tau/2)")?;
    let b = integral_exponent(rat_int(8) * r + rat_int(8) * s - rat_int(12), "eta(2tau)")?;
    let c = integral_exponent(rat_int(24) * s - rat_int(32), "eta(tau)")?;
    EtaQuotient::new(vec![(rat(1, 2), a), (rat_int(2), b), (rat_int(1), -c)])
}

/// The star partner (r,s) -> (s-r, s).
pub fn k2_star_quotient(r: &Rat, s: &Rat) -> Result<EtaQuotient> {
    k2_quotient(&(s - r), s)
}

/// The single factor eta(scale tau) = q^{scale/24} prod(1 - q^{scale n})
/// on its natural grid, known below q^order_q.
pub fn eta_series(scale: &Rat, order_q: i64) -> Result<QSeries> {
    let q = EtaQuotient::new(vec![(scale.clone(), 1)])?;
    let g = q.natural_grid();
    q.expand(g, order_q.checked_mul(g as i64).expect("order overflow"))
}

/// Expand a quotient at tau -> scale_n tau on its natural grid, known
/// below q^order_q (order in plain q exponents).
pub fn expand_scaled(q: &EtaQuotient, scale_n: u64, order_q: i64) -> Result<QSeries> {
    let scaled = q.scaled(scale_n);
    let g = scaled.natural_grid();
    scaled.expand(g, order_q.checked_mul(g as i64).expect("order overflow"))
}

/// Expansion of the weight-3 member at tau -> scale_n tau, known below q^order_q.
pub fn k2_series(r: &Rat, s: &Rat, scale_n: u64, order_q: i64) -> Result<QSeries> {
    expand_scaled(&k2_quotient(r, s)?, scale_n, order_q)
}

pub fn k1_series(r: &Rat, s: &Rat, scale_n: u64, order_q: i64) -> Result<QSeries> {
    expand_scaled(&k1_quotient(r, s)?, scale_n, order_q)
}

pub fn k2_star_series(r: &Rat, s: &Rat, scale_n: u64, order_q: i64) -> Result<QSeries> {
    expand_scaled(&k2_star_quotient(r, s)?, scale_n, order_q)
}

/// The modular lambda function 16 eta(tau/2)^8 eta(2tau)^16 / eta(tau)^24,
/// on the q^{1/2} grid, known below q^order_q.
pub fn lambda_series(order_q: i64) -> QSeries {
    let q = EtaQuotient::new(vec![(rat(1, 2), 8), (rat_int(2), 16), (rat_int(1), -24)])
        .expect("static quotient");
    let s = q.expand(2, 2 * order_q).expect("lambda expands on grid 2");
    s.scale(&BigInt::from(16))
}

/// theta_3(tau)^2 = sum_{n,m} q^{(n^2+m^2)/2} on the q^{1/2} grid, known
/// below q^order_q.
pub fn theta3_sq_series(order_q: i64) -> QSeries {
    let order_units = 2 * order_q;
    let mut coeffs = vec![BigInt::zero(); order_units.max(0) as usize];
    let bound = order_units;
    let mut n = 0i64;
    while n * n < bound {
        let mut m = 0i64;
        while n * n + m * m < bound {
            let u = n * n + m * m;
            let mult = BigInt::from(if n > 0 { 2 } else { 1 } * if m > 0 { 2 } else { 1 });
            coeffs[u as usize] += mult;
            m += 1;
        }
        n += 1;
    }
    QSeries::from_coeffs(2, 0, order_units, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::galois_orbit;

    #[test]
    fn pentagonal_matches_product() {
        // brute-force product of (1 - q^n) for n <= 40
        let order = 40i64;
        let mut brute = QSeries::one(1, order);
        for n in 1..order {
            let f = QSeries::from_coeffs(
                1,
                0,
                order,
                (0..order)
                    .map(|i| {
                        if i == 0 {
                            BigInt::one()
                        } else if i == n {
                            -BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect(),
            );
            brute = brute.mul(&f);
        }
        let pent = pentagonal_series(1, 1, order);
        assert_eq!(pent, brute);
    }

    #[test]
    fn eta_series_shape() {
        // eta(tau) = q^{1/24}(1 - q - q^2 + q^5 + q^7 - ...)
        let e = EtaQuotient::new(vec![(rat_int(1), 1)]).unwrap();
        assert_eq!(e.natural_grid(), 24);
        let s = e.expand(24, 24 * 9).unwrap();
        assert_eq!(s.offset(), 1);
        let expect = [1i64, -1, -1, 0, 0, 1, 0, 1];
        for (n, want) in expect.iter().enumerate() {
            let u = 1 + 24 * n as i64;
            assert_eq!(s.coeff_units(u).unwrap(), BigInt::from(*want), "n={n}");
        }
        // all coefficients integers is structural (BigInt), exponents on grid 48 for eta(tau/2)
        let h = EtaQuotient::new(vec![(rat(1, 2), 1)]).unwrap();
        assert_eq!(h.natural_grid(), 48);
    }

    #[test]
    fn k2_leading_exponent_law() {
        for d in crate::datum::ORBIT_DENOMS {
            for (r, s) in galois_orbit(d).unwrap().members {
                let q = k2_quotient(&r, &s).unwrap();
                assert_eq!(q.leading_exponent(), &r / rat_int(2), "({r},{s})");
                assert_eq!(q.weight(), rat_int(3));
                let star = k2_star_quotient(&r, &s).unwrap();
                assert_eq!(star.leading_exponent(), (&s - &r) / rat_int(2));
            }
        }
    }

    #[test]
    fn k2_star_involution() {
        let (r, s) = (rat(1, 4), rat(3, 4));
        let star = k2_star_quotient(&r, &s).unwrap();
        let back = k2_star_quotient(&(&s - &r), &s).unwrap();
        assert_eq!(back, k2_quotient(&r, &s).unwrap());
        assert_eq!(star, k2_quotient(&rat(1, 2), &s).unwrap());
    }

    #[test]
    fn k2_rejects_bad_pairs() {
        assert!(matches!(
            k2_quotient(&rat(1, 5), &rat(4, 5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn k2_support_classes() {
        // K2(1/24, 23/24)(48 tau) = q + O(q^25) with support = 1 mod 24
        let s = k2_series(&rat(1, 24), &rat(23, 24), 48, 60).unwrap();
        assert_eq!(s.grid(), 1);
        assert_eq!(s.leading_exponent().unwrap(), rat_int(1));
        for u in s.support_units() {
            assert_eq!(u.rem_euclid(24), 1, "exponent {u}");
        }
        assert_eq!(s.coeff_q(1).unwrap(), BigInt::one());
        for n in 2..25 {
            if n % 24 != 1 {
                assert_eq!(s.coeff_q(n).unwrap(), BigInt::zero(), "n={n}");
            }
        }
    }

    #[test]
    fn k1_fixture_leading_coefficients() {
        // f_{32.2.a.a} = K1(1/4,5/4)(8 tau) = eta(4t)^2 eta(8t)^2: q - 2q^5 - 3q^9 + ...
        let s = k1_series(&rat(1, 4), &rat(5, 4), 8, 14).unwrap();
        assert_eq!(s.coeff_q(1).unwrap(), BigInt::from(1));
        assert_eq!(s.coeff_q(5).unwrap(), BigInt::from(-2));
        assert_eq!(s.coeff_q(9).unwrap(), BigInt::from(-3));
        assert_eq!(s.coeff_q(13).unwrap(), BigInt::from(6));
        // K1(1/3, 7/6)(6 tau) = f_{36.2.a.a}: q - 4q^7 + 2q^13 + ...
        let s = k1_series(&rat(1, 3), &rat(7, 6), 6, 14).unwrap();
        assert_eq!(s.coeff_q(1).unwrap(), BigInt::from(1));
        assert_eq!(s.coeff_q(7).unwrap(), BigInt::from(-4));
        assert_eq!(s.coeff_q(13).unwrap(), BigInt::from(2));
    }

    #[test]
    fn lambda_and_theta() {
        let lam = lambda_series(12);
        assert_eq!(lam.leading_exponent().unwrap(), rat(1, 2));
        assert_eq!(lam.coeff_units(1).unwrap(), BigInt::from(16));
        // lambda = 16 q^{1/2} - 128 q + 704 q^{3/2} + ...
        assert_eq!(lam.coeff_units(2).unwrap(), BigInt::from(-128));
        assert_eq!(lam.coeff_units(3).unwrap(), BigInt::from(704));

        let th = theta3_sq_series(12);
        // 1 + 4 q^{1/2} + 4 q + 0 q^{3/2} + 4 q^2 + 8 q^{5/2}
        let expect = [1i64, 4, 4, 0, 4, 8];
        for (u, want) in expect.iter().enumerate() {
            assert_eq!(th.coeff_units(u as i64).unwrap(), BigInt::from(*want), "u={u}");
        }
    }

    #[test]
    fn fricke_transform_algebra() {
        // eta(4 tau)^6 at N=16 is self-dual with constant (4 tau/i)^3
        let e = EtaQuotient::new(vec![(rat_int(4), 6)]).unwrap();
        let (c, img) = e.fricke(16).unwrap();
        assert_eq!(img, e);
        assert_eq!(c.scalar_sq, rat_int(4096)); // 4^6, sqrt = 64 = 4^3
        assert_eq!(c.tau_power, rat_int(3));

        // eta(t)^2 eta(2t) eta(4t) eta(8t)^2 at N=8: same quotient back
        let f = EtaQuotient::new(vec![
            (rat_int(1), 2),
            (rat_int(2), 1),
            (rat_int(4), 1),
            (rat_int(8), 2),
        ])
        .unwrap();
        let (c, img) = f.fricke(8).unwrap();
        assert_eq!(img, f);
        assert_eq!(c.tau_power, rat_int(3));
        // scalar^2 = 8^2 * 4 * 2 * (1)^2 = 512 -> c = 16 sqrt 2
        assert_eq!(c.scalar_sq, rat_int(512));

        // involution: applying fricke twice returns the original and the
        // squared constants multiply to N^{2w} = 8^6
        let (c2, img2) = img.fricke(8).unwrap();
        assert_eq!(img2, f);
        assert_eq!(&c.scalar_sq * &c2.scalar_sq, rat_int(262144));

        // m does not divide N
        let g = EtaQuotient::new(vec![(rat_int(3), 1)]).unwrap();
        assert!(matches!(g.fricke(4), Err(Error::Domain(_))));
    }

    #[test]
    fn k2_expansion_matches_lemma_3_4_shape() {
        // K2(1/4,3/4) = eta(8t)^12/(eta(4t)^2 eta(16t)^4) at scale 8:
        // q + 2 q^5 - q^9 - 2 q^13 ... (support 1 mod 4)
        let s = k2_series(&rat(1, 4), &rat(3, 4), 8, 16).unwrap();
        assert_eq!(s.coeff_q(1).unwrap(), BigInt::one());
        assert_eq!(s.coeff_q(5).unwrap(), BigInt::from(2));
        for n in [2i64, 3, 4, 6, 7, 8] {
            assert_eq!(s.coeff_q(n).unwrap(), BigInt::zero());
        }
    }
}
