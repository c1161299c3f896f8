//! p-adic backend: valuation-tracked residues, Morita's Gamma function,
//! Teichmueller lifts, truncated hypergeometric sums, and the congruence
//! checks built from them.

pub mod checks;
pub mod gamma;
pub mod series;

pub use gamma::{gamma_p, teichmuller, GammaPTable};

use crate::charsum::{invmod, mulmod, powmod};
use crate::datum::Rat;
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::Zero;

/// A p-adic number known to finite precision: `unit * p^val + O(p^{val+prec})`
/// with p not dividing `unit`. An (approximate or exact) zero is stored
/// with `unit = 0`; its `val` is the absolute precision bound O(p^val),
/// with `i32::MAX` marking an exact zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicResidue {
    p: u64,
    val: i32,
    /// digits of the unit that are known
    prec: u32,
    unit: u64,
}

fn pow_u64(p: u64, k: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc.checked_mul(p).expect("p^k overflows u64");
    }
    acc
}

impl PadicResidue {
    pub fn zero(p: u64) -> Self {
        PadicResidue { p, val: i32::MAX, prec: 0, unit: 0 }
    }

    /// Zero to absolute precision O(p^abs).
    pub fn zero_to(p: u64, abs: i32) -> Self {
        PadicResidue { p, val: abs, prec: 0, unit: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.unit == 0 && self.val == i32::MAX
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Valuation; meaningless (absolute precision bound) for zeros.
    pub fn valuation(&self) -> i32 {
        self.val
    }

    pub fn unit_part(&self) -> u64 {
        self.unit
    }

    pub fn unit_prec(&self) -> u32 {
        self.prec
    }

    /// Absolute precision: the value is known modulo p^{abs_prec()}.
    pub fn abs_prec(&self) -> i64 {
        if self.unit == 0 {
            self.val as i64
        } else {
            self.val as i64 + self.prec as i64
        }
    }

    /// Construct from a unit residue u mod p^k (p not dividing u) times p^val.
    pub fn from_unit(p: u64, unit: u64, val: i32, prec: u32) -> Self {
        let pk = pow_u64(p, prec);
        let u = unit % pk;
        assert!(u % p != 0 && u != 0, "unit must be prime to p");
        PadicResidue { p, val, prec, unit: u }
    }

    /// Construct from an integer known exactly, keeping k digits.
    pub fn from_integer(n: &BigInt, p: u64, k: u32) -> Self {
        if n.is_zero() {
            return PadicResidue::zero(p);
        }
        let (val, u) = strip_p_bigint(n, p, k);
        PadicResidue { p, val, prec: k, unit: u }
    }

    /// Construct from an exact rational with p-integral or arbitrary
    /// valuation, keeping k unit digits.
    pub fn from_rat(x: &Rat, p: u64, k: u32) -> Result<Self> {
        if x.is_zero() {
            return Ok(PadicResidue::zero(p));
        }
        let (vn, un) = strip_p_bigint(x.numer(), p, k);
        let (vd, ud) = strip_p_bigint(x.denom(), p, k);
        let pk = pow_u64(p, k);
        let unit = mulmod(un, invmod(ud, pk), pk);
        Ok(PadicResidue { p, val: vn - vd, prec: k, unit })
    }

    /// Reduce the unit precision to at most k digits.
    pub fn truncate(&self, k: u32) -> Self {
        if self.unit == 0 || self.prec <= k {
            return self.clone();
        }
        PadicResidue {
            p: self.p,
            val: self.val,
            prec: k,
            unit: self.unit % pow_u64(self.p, k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        if self.unit == 0 || other.unit == 0 {
            // O(p^a) * (u p^v + ...) = O(p^{a+v}); O * O = O at summed bounds
            let bound = |z: &Self| -> i64 { if z.unit == 0 { z.val as i64 } else { z.val as i64 } };
            let a = bound(self) + bound(other);
            return PadicResidue::zero_to(self.p, a.min(i32::MAX as i64) as i32);
        }
        let prec = self.prec.min(other.prec);
        let pk = pow_u64(self.p, prec);
        PadicResidue {
            p: self.p,
            val: self.val + other.val,
            prec,
            unit: mulmod(self.unit % pk, other.unit % pk, pk),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.unit == 0 {
            return Err(Error::Domain("inverse of (approximate) zero".into()));
        }
        let pk = pow_u64(self.p, self.prec);
        Ok(PadicResidue {
            p: self.p,
            val: -self.val,
            prec: self.prec,
            unit: invmod(self.unit, pk),
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        if self.unit == 0 {
            return self.clone();
        }
        let pk = pow_u64(self.p, self.prec);
        PadicResidue {
            p: self.p,
            val: self.val * (e as i32),
            prec: self.prec,
            unit: powmod(self.unit, e, pk),
        }
    }

    pub fn neg(&self) -> Self {
        if self.unit == 0 {
            return self.clone();
        }
        let pk = pow_u64(self.p, self.prec);
        PadicResidue { p: self.p, val: self.val, prec: self.prec, unit: pk - self.unit }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p;
        if self.unit == 0 && other.unit == 0 {
            return PadicResidue::zero_to(p, self.val.min(other.val));
        }
        if self.unit == 0 {
            return add_zero(other, self.val);
        }
        if other.unit == 0 {
            return add_zero(self, other.val);
        }
        let abs = self.abs_prec().min(other.abs_prec());
        let vmin = self.val.min(other.val);
        let digits = (abs - vmin as i64).max(0) as u32;
        if digits == 0 {
            return PadicResidue::zero_to(p, clamp_abs(abs));
        }
        let pk = pow_u64(p, digits);
        let lift = |z: &Self| -> u64 {
            let shift = (z.val - vmin) as u32;
            if shift >= digits {
                0
            } else {
                mulmod(z.unit % pk, pow_u64(p, shift) % pk, pk)
            }
        };
        let raw = (lift(self) + lift(other)) % pk;
        if raw == 0 {
            return PadicResidue::zero_to(p, clamp_abs(abs));
        }
        let (extra, u) = strip_p_u64(raw, p);
        let prec = digits - extra;
        PadicResidue { p, val: vmin + extra as i32, prec, unit: u % pow_u64(p, prec) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The value reduced into Z/p^k, when the valuation is nonnegative and
    /// enough digits are known.
    pub fn to_residue_mod(&self, k: u32) -> Result<u64> {
        let pk = pow_u64(self.p, k);
        if self.unit == 0 {
            if self.abs_prec() >= k as i64 {
                return Ok(0);
            }
            return Err(Error::Precision(format!("zero known only to O(p^{})", self.abs_prec())));
        }
        if self.val < 0 {
            return Err(Error::Integrality(format!("negative valuation {}", self.val)));
        }
        if self.abs_prec() < k as i64 {
            return Err(Error::Precision(format!(
                "value known mod p^{} but p^{k} requested",
                self.abs_prec()
            )));
        }
        let shift = pow_u64(self.p, self.val as u32) % pk;
        Ok(mulmod(self.unit % pk, shift, pk))
    }

    /// Do the two values agree modulo p^k?
    pub fn agrees_mod(&self, other: &Self, k: u32) -> Result<bool> {
        let d = self.sub(other);
        if d.abs_prec() < k as i64 {
            return Err(Error::Precision(format!(
                "difference known only to O(p^{}), cannot decide mod p^{k}",
                d.abs_prec()
            )));
        }
        Ok(d.unit == 0 || d.val >= k as i32)
    }
}

fn clamp_abs(a: i64) -> i32 {
    a.clamp(i32::MIN as i64, i32::MAX as i64) as i32
}

fn add_zero(x: &PadicResidue, zero_abs: i32) -> PadicResidue {
    // x + O(p^a): unit digits survive up to absolute precision a
    let abs = x.abs_prec().min(zero_abs as i64);
    if (x.val as i64) >= abs {
        return PadicResidue::zero_to(x.p, clamp_abs(abs));
    }
    let prec = (abs - x.val as i64) as u32;
    PadicResidue {
        p: x.p,
        val: x.val,
        prec,
        unit: x.unit % pow_u64(x.p, prec),
    }
}

fn strip_p_u64(mut n: u64, p: u64) -> (u32, u64) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// (valuation, unit mod p^k) of a nonzero big integer.
fn strip_p_bigint(n: &BigInt, p: u64, k: u32) -> (i32, u64) {
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0i32;
    loop {
        let (q, r) = num::Integer::div_rem(&m, &pb);
        if r.is_zero() {
            m = q;
            v += 1;
        } else {
            break;
        }
    }
    let pk = pow_u64(p, k);
    let u = crate::charsum::sums::bigint_mod(&m, pk);
    (v, u)
}

impl std::fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.unit == 0 {
            if self.val == i32::MAX {
                write!(f, "0")
            } else {
                write!(f, "O({}^{})", self.p, self.val)
            }
        } else {
            write!(f, "{}*{}^{} mod {}^{}", self.unit, self.p, self.val, self.p, self.val as i64 + self.prec as i64)
        }
    }
}
