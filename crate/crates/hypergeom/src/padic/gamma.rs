//! Morita's p-adic Gamma function and Teichmueller lifts.
//!
//! Gamma_p(n) = (-1)^n prod_{1 <= i < n, p ∤ i} i on positive integers,
//! extended continuously: the function is 1-Lipschitz, so the value at a
//! rational x with p-integral denominator is determined mod p^k by the
//! integer representative of x in [1, p^k].

use super::{pow_u64, PadicResidue};
use crate::charsum::{invmod, mulmod, powmod};
use crate::datum::{denom_u64, to_i64, Rat};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Mutex;

/// Memoized table of Gamma_p values for one (p, k). The walk from the
/// nearest cached point makes repeated evaluations cheap; k is capped by
/// the cost of the defining O(p^k) product.
#[derive(Debug)]
pub struct GammaPTable {
    p: u64,
    k: u32,
    pk: u64,
    /// n -> prod_{1 <= i < n, p ∤ i} i mod p^k (sign applied on read)
    products: Mutex<BTreeMap<u64, u64>>,
}

/// Largest supported precision exponent for a given prime; keeps the
/// defining product at desk scale.
pub fn max_precision_exponent(p: u64) -> u32 {
    if p <= 300 {
        3
    } else if p <= 2000 {
        2
    } else {
        1
    }
}

impl GammaPTable {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !crate::charsum::is_prime(p) {
            return Err(Error::Parameter(format!("{p} is not prime")));
        }
        if k == 0 || k > max_precision_exponent(p) {
            return Err(Error::Parameter(format!(
                "precision exponent {k} out of range for p={p} (max {})",
                max_precision_exponent(p)
            )));
        }
        let pk = pow_u64(p, k);
        let mut products = BTreeMap::new();
        products.insert(1u64, 1u64);
        Ok(GammaPTable {
            p,
            k,
            pk,
            products: Mutex::new(products),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Gamma_p at the integer representative n in [1, p^k].
    pub fn at_integer(&self, n: u64) -> u64 {
        assert!(n >= 1 && n <= self.pk);
        let mut cache = self.products.lock().unwrap();
        let (&n0, &prod0) = cache.range(..=n).next_back().expect("1 is seeded");
        let mut prod = prod0;
        for i in n0..n {
            if i % self.p != 0 {
                prod = mulmod(prod, i % self.pk, self.pk);
            }
        }
        if n != n0 {
            cache.insert(n, prod);
        }
        drop(cache);
        let sign_neg = n % 2 == 1;
        if sign_neg {
            (self.pk - prod) % self.pk
        } else {
            prod
        }
    }

    /// Representative of a rational in [1, p^k] (p must not divide the
    /// denominator).
    pub fn representative(&self, x: &Rat) -> Result<u64> {
        let den = denom_u64(x);
        if den % self.p == 0 {
            return Err(Error::Domain(format!(
                "denominator of {x} is divisible by p={}",
                self.p
            )));
        }
        let num = crate::charsum::sums::bigint_mod(x.numer(), self.pk);
        let r = mulmod(num, invmod(den % self.pk, self.pk), self.pk);
        Ok(if r == 0 { self.pk } else { r })
    }

    /// Gamma_p(x) mod p^k as a unit residue.
    pub fn gamma(&self, x: &Rat) -> Result<PadicResidue> {
        let n = self.representative(x)?;
        let g = self.at_integer(n);
        Ok(PadicResidue::from_unit(self.p, g, 0, self.k))
    }

    /// Evaluate a symbolic Gamma quotient (arguments with exponents times
    /// a rational scalar) in Z_p.
    pub fn gamma_quotient(&self, q: &crate::datum::GammaQuotient) -> Result<PadicResidue> {
        let mut acc = PadicResidue::from_rat(&q.scalar, self.p, self.k)?;
        for (arg, e) in &q.factors {
            let g = self.gamma(arg)?;
            let g = if *e >= 0 { g.pow(*e as u64) } else { g.inv()?.pow((-*e) as u64) };
            acc = acc.mul(&g);
        }
        Ok(acc)
    }
}

/// One-off Gamma_p evaluation (builds a throwaway table).
pub fn gamma_p(x: &Rat, p: u64, k: u32) -> Result<PadicResidue> {
    GammaPTable::new(p, k)?.gamma(x)
}

/// Teichmueller lift: the unique (p-1)-th root of unity congruent to a
/// mod p, computed as a^{p^{k-1}} mod p^k.
pub fn teichmuller(a: u64, p: u64, k: u32) -> Result<PadicResidue> {
    if a % p == 0 {
        return Err(Error::Domain(format!("{a} is divisible by p={p}")));
    }
    let pk = pow_u64(p, k);
    let e = pow_u64(p, k - 1);
    let w = powmod(a % pk, e, pk);
    Ok(PadicResidue::from_unit(p, w, 0, k))
}

/// Teichmueller lift raised to an integer power (negative allowed).
pub fn teichmuller_pow(a: u64, e: i64, p: u64, k: u32) -> Result<PadicResidue> {
    let w = teichmuller(a, p, k)?;
    if e >= 0 {
        Ok(w.pow(e as u64))
    } else {
        Ok(w.inv()?.pow((-e) as u64))
    }
}

/// First p-adic digit of a rational: the x0 in [0, p-1] with x == x0 (mod p).
pub fn first_digit(x: &Rat, p: u64) -> Result<u64> {
    let den = denom_u64(x);
    if den % p == 0 {
        return Err(Error::Domain(format!("{x} is not p-integral at {p}")));
    }
    let num = to_i64(&(x.numer() % num::BigInt::from(p as i64))).rem_euclid(p as i64) as u64;
    Ok(mulmod(num, invmod(den % p, p), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{rat, rat_int};

    #[test]
    fn small_values() {
        let t = GammaPTable::new(5, 2).unwrap();
        // Gamma_p(1) = -1, Gamma_p(2) = 1
        assert_eq!(t.gamma(&rat_int(1)).unwrap().to_residue_mod(2).unwrap(), 24);
        assert_eq!(t.gamma(&rat_int(2)).unwrap().to_residue_mod(2).unwrap(), 1);
        // Gamma_5(7) = -(1*2*3*4*6) = -144 = -144 + 6*25 = 6 mod 25
        assert_eq!(t.gamma(&rat_int(7)).unwrap().to_residue_mod(2).unwrap(), (-144i64).rem_euclid(25) as u64);
    }

    #[test]
    fn functional_equation() {
        // Gamma_p(x+1)/Gamma_p(x) = -x (unit x) or -1 (p | x)
        for (p, k) in [(5u64, 3u32), (13, 2), (97, 2)] {
            let t = GammaPTable::new(p, k).unwrap();
            for n in 1..60u64 {
                let x = rat(n as i64, 1);
                let lhs = t.gamma(&(&x + rat_int(1))).unwrap();
                let rhs_base = t.gamma(&x).unwrap();
                let factor = if n % p == 0 {
                    PadicResidue::from_rat(&rat_int(-1), p, k).unwrap()
                } else {
                    PadicResidue::from_rat(&-&x, p, k).unwrap()
                };
                let rhs = rhs_base.mul(&factor);
                assert!(lhs.agrees_mod(&rhs, k).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn reflection() {
        // Gamma_p(x) Gamma_p(1-x) = (-1)^{x0}, x0 in [1, p] the residue of x
        for (p, k) in [(7u64, 2u32), (13, 2)] {
            let t = GammaPTable::new(p, k).unwrap();
            for num in 1..12i64 {
                for den in [1i64, 2, 3, 4, 6, 12] {
                    if den % p as i64 == 0 || num % den == 0 {
                        continue;
                    }
                    let x = rat(num, den);
                    let lhs = t.gamma(&x).unwrap().mul(&t.gamma(&(rat_int(1) - &x)).unwrap());
                    let mut x0 = first_digit(&x, p).unwrap();
                    if x0 == 0 {
                        x0 = p;
                    }
                    let sign = if x0 % 2 == 1 { -1 } else { 1 };
                    let rhs = PadicResidue::from_rat(&rat_int(sign), p, k).unwrap();
                    assert!(lhs.agrees_mod(&rhs, k).unwrap(), "p={p} x={x}");
                }
            }
        }
    }

    #[test]
    fn teichmuller_properties() {
        let p = 13;
        let k = 2;
        assert_eq!(teichmuller(1, p, k).unwrap().unit_part(), 1);
        for a in 2..13u64 {
            let w = teichmuller(a, p, k).unwrap();
            // w == a mod p
            assert_eq!(w.unit_part() % p, a);
            // w^{p-1} == 1 mod p^k
            assert_eq!(w.pow((p - 1) as u64).unit_part(), 1);
        }
        assert!(teichmuller(26, p, k).is_err());
    }

    #[test]
    fn continuity_instance() {
        // Gamma_p(a + m p^r)/Gamma_p(a) == 1 mod p^r
        let p = 13;
        let t = GammaPTable::new(p, 3).unwrap();
        for a in [rat(1, 2), rat(5, 12), rat_int(7)] {
            for m in 1..5i64 {
                for r in 1..3u32 {
                    let shift = rat(m, 1) * rat_int((p as i64).pow(r));
                    let lhs = t.gamma(&(&a + &shift)).unwrap();
                    let rhs = t.gamma(&a).unwrap();
                    assert!(lhs.agrees_mod(&rhs, r).unwrap(), "a={a} m={m} r={r}");
                }
            }
        }
    }
}
