//! Finite-field backend: multiplicative characters of F_p realized through
//! a primitive root and an embedding choice, Gauss/Jacobi sums (complex
//! with certified error, exact in Z[zeta_M]), and the character-sum
//! period and H functions.
//!
//! q is restricted to primes: the additive character is a single root of
//! unity table and the trace map is the identity.

pub mod approx;
pub mod checks;
pub mod cyclotomic;
pub mod sums;

pub use approx::{integer_reconstruct, ComplexApprox};
pub use cyclotomic::CycInt;

use crate::datum::{denom_u64, fract, to_i64, Rat};
use crate::error::{Error, Result};
use num::complex::Complex64;
use once_cell::sync::OnceCell;
use std::sync::Arc;

pub(crate) use cyclotomic::{invmod, mulmod, powmod};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            primes.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

fn least_primitive_root(p: u64) -> u64 {
    let order_factors = factorize(p - 1);
    'next: for g in 2..p {
        for q in &order_factors {
            if powmod(g, (p - 1) / q, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}")
}

/// Discrete-log tables for one prime together with the embedding choice
/// selecting which (p-1)-th root of unity plays zeta_{p-1}.
#[derive(Debug)]
pub struct PrimeFieldContext {
    p: u64,
    g: u64,
    root_choice: u64,
    dlog: Vec<u32>,
    zeta_table: OnceCell<Vec<Complex64>>,
    psi_table: OnceCell<Vec<Complex64>>,
}

impl PrimeFieldContext {
    pub fn new(p: u64) -> Result<Arc<Self>> {
        Self::with_root_choice(p, 1)
    }

    pub fn with_root_choice(p: u64, root_choice: u64) -> Result<Arc<Self>> {
        if !is_prime(p) || p < 3 {
            return Err(Error::Parameter(format!("{p} is not an odd prime")));
        }
        if num::integer::gcd(root_choice, p - 1) != 1 {
            return Err(Error::Parameter(format!(
                "root choice {root_choice} must be coprime to p-1 = {}",
                p - 1
            )));
        }
        let g = least_primitive_root(p);
        let mut dlog = vec![0u32; p as usize];
        let mut x = 1u64;
        for t in 0..(p - 1) {
            dlog[x as usize] = t as u32;
            x = mulmod(x, g, p);
        }
        Ok(Arc::new(PrimeFieldContext {
            p,
            g,
            root_choice,
            dlog,
            zeta_table: OnceCell::new(),
            psi_table: OnceCell::new(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    pub fn root_choice(&self) -> u64 {
        self.root_choice
    }

    /// Index of x in base g; x must be nonzero mod p.
    pub fn dlog(&self, x: u64) -> u32 {
        debug_assert!(x % self.p != 0);
        self.dlog[(x % self.p) as usize]
    }

    /// zeta_{p-1}^t table (complex embedding of the character values).
    fn zeta(&self) -> &[Complex64] {
        self.zeta_table.get_or_init(|| {
            let n = (self.p - 1) as usize;
            (0..n)
                .map(|t| {
                    let theta = 2.0 * std::f64::consts::PI * (t as f64) / (n as f64);
                    Complex64::new(theta.cos(), theta.sin())
                })
                .collect()
        })
    }

    /// e^{2 pi i x / p} table for the additive character.
    fn psi(&self) -> &[Complex64] {
        self.psi_table.get_or_init(|| {
            (0..self.p as usize)
                .map(|x| {
                    let theta = 2.0 * std::f64::consts::PI * (x as f64) / (self.p as f64);
                    Complex64::new(theta.cos(), theta.sin())
                })
                .collect()
        })
    }

    /// Reduce an exact rational into F_p (denominator must be a unit).
    pub fn reduce_rat(&self, x: &Rat) -> Result<u64> {
        let den = denom_u64(x);
        if den % self.p == 0 {
            return Err(Error::Domain(format!("denominator of {x} divisible by p={}", self.p)));
        }
        let num = cyclotomic::bigint_mod_u64(x.numer(), self.p);
        Ok(mulmod(num, invmod(den % self.p, self.p), self.p))
    }
}

/// A multiplicative character omega^index of F_p^x, with value 0 at 0.
#[derive(Debug, Clone)]
pub struct MultChar {
    ctx: Arc<PrimeFieldContext>,
    index: u64,
}

impl MultChar {
    pub fn from_index(ctx: &Arc<PrimeFieldContext>, index: u64) -> Self {
        MultChar {
            ctx: ctx.clone(),
            index: index % (ctx.p - 1),
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn context(&self) -> &Arc<PrimeFieldContext> {
        &self.ctx
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// True when the character is a square in the dual group.
    pub fn is_square(&self) -> bool {
        self.index % 2 == 0
    }

    pub fn inverse(&self) -> MultChar {
        let n = self.ctx.p - 1;
        MultChar {
            ctx: self.ctx.clone(),
            index: (n - self.index) % n,
        }
    }

    pub fn mul(&self, other: &MultChar) -> MultChar {
        debug_assert_eq!(self.ctx.p, other.ctx.p);
        MultChar {
            ctx: self.ctx.clone(),
            index: (self.index + other.index) % (self.ctx.p - 1),
        }
    }

    /// chi(x) as an embedded complex value (0 at x = 0 by convention).
    pub fn value(&self, x: u64) -> Complex64 {
        let p = self.ctx.p;
        let xr = x % p;
        if xr == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let t = (self.index as u128 * self.ctx.dlog(xr) as u128 % (p - 1) as u128) as usize;
        self.ctx.zeta()[t]
    }

    /// chi(-1) = (-1)^index (p odd).
    pub fn value_at_minus_one(&self) -> i64 {
        if self.index % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// The residue-symbol character iota(x) = omega^{c (p-1) x} for a rational
/// exponent whose denominator divides p-1 (c is the context root choice).
pub fn char_of_fraction(ctx: &Arc<PrimeFieldContext>, x: &Rat) -> Result<MultChar> {
    let p = ctx.p;
    let f = fract(x);
    let den = denom_u64(&f);
    if (p - 1) % den != 0 {
        return Err(Error::IncompatiblePrime(format!(
            "denominator {den} of {x} does not divide p-1 = {}",
            p - 1
        )));
    }
    let num = to_i64(f.numer()).rem_euclid((p - 1) as i64) as u64;
    let base = mulmod(num, (p - 1) / den, p - 1);
    Ok(MultChar::from_index(ctx, mulmod(ctx.root_choice, base, p - 1)))
}

/// Exponent of zeta_M for iota(a)(x): root_choice * (aM) * dlog(x) mod M,
/// where aM is the integer a*M (a reduced mod 1).
pub(crate) fn zeta_m_exponent(ctx: &PrimeFieldContext, a_times_m: u64, m: u64, x: u64) -> u64 {
    let d = ctx.dlog(x) as u64 % m;
    mulmod(mulmod(ctx.root_choice % m, a_times_m % m, m), d, m)
}
