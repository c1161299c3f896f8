//! Exact arithmetic in Z[zeta_M] on the power basis modulo the M-th
//! cyclotomic polynomial. Values come from character sums, so construction
//! from a counting vector over the M roots of unity is the main entry
//! point; multiplication, Galois conjugation, and the complex and p-adic
//! embeddings are what the verification paths need.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
/// Computed by exact division of x^n - 1 by the lower cyclotomics.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    static CACHE: Lazy<Mutex<HashMap<u64, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = CACHE.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in 1..n {
            if n % d == 0 {
                num = poly_div_exact(&num, &cyclotomic_poly(d));
            }
        }
        num
    };
    CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact polynomial division (remainder must vanish), both monic-leading.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An element of Z[zeta_M] as an integer vector on the power basis
/// 1, zeta, ..., zeta^{phi(M)-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    m: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(m: u64) -> Self {
        CycInt {
            m,
            coeffs: vec![BigInt::zero(); euler_phi(m) as usize],
        }
    }

    pub fn from_integer(m: u64, n: BigInt) -> Self {
        let mut z = CycInt::zero(m);
        z.coeffs[0] = n;
        z
    }

    /// Build from counts over the M-th roots of unity:
    /// sum_e counts[e] * zeta^e, reduced into the power basis.
    pub fn from_counts(m: u64, counts: &[BigInt]) -> Self {
        assert_eq!(counts.len(), m as usize);
        reduce_mod_cyclotomic(m, counts)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer value, if this element lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-embed into Z[zeta_{m2}] for m | m2 via zeta_m = zeta_{m2}^{m2/m}.
    pub fn lift(&self, m2: u64) -> CycInt {
        assert_eq!(m2 % self.m, 0, "lift requires m | m2");
        if m2 == self.m {
            return self.clone();
        }
        let stride = (m2 / self.m) as usize;
        let mut counts = vec![BigInt::zero(); m2 as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            counts[i * stride] += c;
        }
        CycInt::from_counts(m2, &counts)
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        let (a, b) = unify(self, other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycInt { m: a.m, coeffs }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        let (a, b) = unify(self, other);
        let mut conv = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        reduce_poly(a.m, &conv)
    }

    pub fn mul_scalar(&self, k: &BigInt) -> CycInt {
        CycInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiply by zeta_M^e.
    pub fn mul_root(&self, e: i64) -> CycInt {
        let e = e.rem_euclid(self.m as i64) as usize;
        let mut conv = vec![BigInt::zero(); self.coeffs.len() + e];
        for (i, c) in self.coeffs.iter().enumerate() {
            conv[i + e] = c.clone();
        }
        reduce_poly(self.m, &conv)
    }

    /// Galois conjugation sigma_k : zeta -> zeta^k, gcd(k, M) = 1.
    pub fn conjugate(&self, k: u64) -> CycInt {
        assert_eq!(num::integer::gcd(k, self.m), 1, "conjugation needs gcd(k,M)=1");
        let mut counts = vec![BigInt::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = ((i as u64) * k % self.m) as usize;
            counts[e] += c;
        }
        CycInt::from_counts(self.m, &counts)
    }

    /// Complex embedding zeta_M -> e^{2 pi i / M}, with a rounding bound.
    pub fn embed_complex(&self) -> super::approx::ComplexApprox {
        let m = self.m as f64;
        let mut v = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0f64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = bigint_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / m;
            v += Complex64::new(theta.cos(), theta.sin()) * cf;
            magnitude += cf.abs();
        }
        // each coefficient contributes a couple of ulps through the root
        // of unity and the multiply-add
        let err = magnitude * 8.0 * f64::EPSILON * (self.coeffs.len() as f64 + 2.0);
        super::approx::ComplexApprox::new(v, err)
    }

    /// p-adic embedding zeta_M -> w^{(p-1)/M} mod p^k, where w is the
    /// supplied Teichmueller-type root of unity of order dividing p-1.
    /// `root_of_unity_m` must already be a primitive M-th root mod p^k.
    pub fn embed_padic(&self, root_of_unity_m: u64, pk: u64) -> u64 {
        let mut acc: u64 = 0;
        let mut power: u64 = 1; // root^i
        for c in self.coeffs.iter() {
            let cm = bigint_mod_u64(c, pk);
            acc = (acc as u128 + cm as u128 * power as u128 % pk as u128) as u64 % pk;
            power = mulmod(power, root_of_unity_m, pk);
        }
        acc
    }
}

fn unify(a: &CycInt, b: &CycInt) -> (CycInt, CycInt) {
    if a.m == b.m {
        (a.clone(), b.clone())
    } else {
        let m = num::integer::lcm(a.m, b.m);
        (a.lift(m), b.lift(m))
    }
}

fn reduce_mod_cyclotomic(m: u64, counts: &[BigInt]) -> CycInt {
    reduce_poly(m, counts)
}

fn reduce_poly(m: u64, poly: &[BigInt]) -> CycInt {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    let mut rem = poly.to_vec();
    if rem.len() < deg {
        rem.resize(deg, BigInt::zero());
    }
    for i in (deg..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        // x^i = x^{i-deg} * (x^deg) and x^deg = -(phi - x^deg)
        for j in 0..deg {
            let sub = &c * &phi[j];
            rem[i - deg + j] -= sub;
        }
        rem[i] = BigInt::zero();
    }
    rem.truncate(deg);
    CycInt { m, coeffs: rem }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num::ToPrimitive;
    c.to_f64().expect("coefficient convertible to f64")
}

pub(crate) fn bigint_mod_u64(c: &BigInt, modulus: u64) -> u64 {
    use num::ToPrimitive;
    let m = BigInt::from(modulus);
    let mut r = c % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().expect("reduced residue fits u64")
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Modular inverse mod m (m need not be prime; a must be a unit).
pub(crate) fn invmod(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible: {a} mod {m}");
    t.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let phi12 = cyclotomic_poly(12); // x^4 - x^2 + 1
        let v: Vec<i64> = phi12.iter().map(|c| super::super::cyclotomic::bigint_to_f64(c) as i64).collect();
        assert_eq!(v, vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(8).len(), 5); // x^4 + 1
        assert_eq!(cyclotomic_poly(24).len(), 9);
    }

    #[test]
    fn root_relations() {
        // zeta_4^2 = -1
        let mut counts = vec![BigInt::zero(); 4];
        counts[1] = BigInt::one(); // zeta
        let z = CycInt::from_counts(4, &counts);
        let z2 = z.mul(&z);
        assert_eq!(z2.as_integer(), Some(BigInt::from(-1)));
        // sum of all 12th roots of unity = 0
        let all = CycInt::from_counts(12, &vec![BigInt::one(); 12]);
        assert!(all.is_zero());
    }

    #[test]
    fn conjugation_permutes_roots() {
        let mut counts = vec![BigInt::zero(); 8];
        counts[1] = BigInt::from(3);
        counts[5] = BigInt::from(-2);
        let z = CycInt::from_counts(8, &counts);
        let w = z.conjugate(3);
        let mut expect = vec![BigInt::zero(); 8];
        expect[3] = BigInt::from(3);
        expect[7] = BigInt::from(-2); // 5*3 = 15 = 7 mod 8
        assert_eq!(w, CycInt::from_counts(8, &expect));
        // sigma_k is a ring automorphism
        let a = z.mul(&z).conjugate(3);
        let b = w.mul(&w);
        assert_eq!(a, b);
    }

    #[test]
    fn complex_embedding() {
        let mut counts = vec![BigInt::zero(); 4];
        counts[1] = BigInt::one();
        let z = CycInt::from_counts(4, &counts).embed_complex();
        assert!((z.value().re).abs() < 1e-12);
        assert!((z.value().im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lift_preserves_value() {
        let mut counts = vec![BigInt::zero(); 6];
        counts[1] = BigInt::from(2); // 2*zeta_6
        let z = CycInt::from_counts(6, &counts);
        let lifted = z.lift(24);
        let a = z.embed_complex().value();
        let b = lifted.embed_complex().value();
        assert!((a - b).norm() < 1e-12);
    }
}
