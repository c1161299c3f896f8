//! Gauss and Jacobi sums, the binomial coefficient analogue, and the
//! character-sum period and H functions.
//!
//! The complex path is the reference transcription of the defining sums
//! with a worst-case rounding ledger; the exact path accumulates counting
//! vectors over the M-th roots of unity and reduces into Z[zeta_M].

use super::approx::ComplexApprox;
use super::cyclotomic::{bigint_mod_u64, CycInt};
use super::{char_of_fraction, MultChar, PrimeFieldContext};
use crate::datum::{denom_u64, fract, to_i64, HypergeometricDatum, Rat};
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::complex::Complex64;
use num::{One, Zero};
use std::sync::Arc;

const EPS: f64 = f64::EPSILON;

/// Gauss sum g(chi) = sum_x chi(x) e^{2 pi i x / p}, with certified error.
pub fn gauss_sum_complex(chi: &MultChar) -> ComplexApprox {
    let ctx = chi.context();
    let p = ctx.p();
    let n = p - 1;
    let zeta = ctx.zeta();
    let psi = ctx.psi();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 1..p {
        let t = (chi.index() as u128 * ctx.dlog(x) as u128 % n as u128) as usize;
        acc += zeta[t] * psi[x as usize];
    }
    // p-1 unit terms: table entries carry ~2 ulps, accumulation is linear
    // in the number of adds times the term magnitude
    let err = 6.0 * EPS * (p as f64) * (p as f64).sqrt().max(1.0);
    ComplexApprox::new(acc, err)
}

/// Jacobi sum J(A, B) = sum_x A(x) B(1-x) by the direct O(p) sum.
pub fn jacobi_sum_complex(a: &MultChar, b: &MultChar) -> ComplexApprox {
    let ctx = a.context();
    let p = ctx.p();
    let n = p - 1;
    let zeta = ctx.zeta();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 2..p {
        let e = (a.index() as u128 * ctx.dlog(x) as u128
            + b.index() as u128 * ctx.dlog(p + 1 - x) as u128)
            % n as u128;
        acc += zeta[e as usize];
    }
    let err = 6.0 * EPS * (p as f64) * acc.norm().max(1.0).sqrt().max(1.0);
    ComplexApprox::new(acc, err)
}

/// Exact Jacobi sum J(iota(a), iota(b)) in Z[zeta_M], M = lcm of the
/// denominators of a and b reduced mod 1. Exponents are normalized into
/// [0,1) first, matching the periodicity of the residue-symbol character.
pub fn jacobi_sum_exact(ctx: &Arc<PrimeFieldContext>, a: &Rat, b: &Rat) -> Result<CycInt> {
    let p = ctx.p();
    let fa = fract(a);
    let fb = fract(b);
    let m = num::integer::lcm(denom_u64(&fa), denom_u64(&fb));
    if (p - 1) % m != 0 {
        return Err(Error::IncompatiblePrime(format!(
            "lcd {m} of ({a}, {b}) does not divide p-1 = {}",
            p - 1
        )));
    }
    let ia = to_i64((&fa * Rat::from(BigInt::from(m as i64))).numer()).rem_euclid(m as i64) as u64;
    let ib = to_i64((&fb * Rat::from(BigInt::from(m as i64))).numer()).rem_euclid(m as i64) as u64;
    let c = ctx.root_choice() % m;
    let mut counts = vec![BigInt::zero(); m as usize];
    for x in 2..p {
        let e = (c as u128 * (ia as u128 * ctx.dlog(x) as u128 + ib as u128 * ctx.dlog(p + 1 - x) as u128))
            % m as u128;
        counts[e as usize] += 1;
    }
    Ok(CycInt::from_counts(m, &counts))
}

/// Binomial analogue binom(A, B) = -B(-1) J(A, conj(B)) by a direct sum.
pub fn binomial(a: &MultChar, b: &MultChar) -> ComplexApprox {
    let j = jacobi_sum_complex(a, &b.inverse());
    j.scale(-(b.value_at_minus_one() as f64))
}

/// Character indices of a datum in a context: (upper, lower) index rows.
fn datum_indices(ctx: &Arc<PrimeFieldContext>, hd: &HypergeometricDatum) -> Result<(Vec<u64>, Vec<u64>)> {
    let upper = hd
        .alpha()
        .iter()
        .map(|r| char_of_fraction(ctx, r).map(|c| c.index()))
        .collect::<Result<Vec<_>>>()?;
    let lower = hd
        .beta()
        .iter()
        .map(|q| char_of_fraction(ctx, q).map(|c| c.index()))
        .collect::<Result<Vec<_>>>()?;
    Ok((upper, lower))
}

/// The finite-field period function: literal transcription of the
/// binomial-sum definition, O(n p^2) via per-column binomial tables.
pub fn pp_sum(hd: &HypergeometricDatum, lambda: &Rat, ctx: &Arc<PrimeFieldContext>) -> Result<ComplexApprox> {
    let p = ctx.p();
    let n_chars = p - 1;
    let lam = ctx.reduce_rat(lambda)?;
    if lam == 0 {
        return Err(Error::Domain("evaluation point is 0 mod p".into()));
    }
    let (upper, lower) = datum_indices(ctx, hd)?;
    let n = hd.len();
    let zeta = ctx.zeta();

    // per-column tables over the chi index t: binom(R_i chi, Q_i chi)
    // J(R_i chi, conj(Q_i chi)) = sum_x zeta^{(ri+t) dlog x - (qi+t) dlog(1-x)}
    let dlogs: Vec<(u64, u64)> = (2..p).map(|x| (ctx.dlog(x) as u64, ctx.dlog(p + 1 - x) as u64)).collect();
    let mut tables: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut col = vec![Complex64::new(0.0, 0.0); n_chars as usize];
        for (t, slot) in col.iter_mut().enumerate() {
            let a = (upper[i] + t as u64) % n_chars;
            let bq = (lower[i] + t as u64) % n_chars;
            let b = (n_chars - bq) % n_chars;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(dx, dy) in &dlogs {
                let e = (a as u128 * dx as u128 + b as u128 * dy as u128) % n_chars as u128;
                acc += zeta[e as usize];
            }
            // -(Q_i chi)(-1) = -(-1)^{qi + t}
            let sign = if (bq % 2) == 0 { -1.0 } else { 1.0 };
            *slot = acc * sign;
        }
        tables.push(col);
    }

    let dlam = ctx.dlog(lam) as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag_sum = 0.0f64;
    for t in 0..n_chars as usize {
        let mut term = zeta[((t as u64 * dlam) % n_chars) as usize];
        for col in tables.iter() {
            term *= col[t];
        }
        acc += term;
        mag_sum += term.norm();
    }

    // (-1)^n / (q-1) * prod_{i>=2} R_i Q_i(-1)
    let mut sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    for i in 1..n {
        if (upper[i] + lower[i]) % 2 == 1 {
            sign = -sign;
        }
    }
    let value = acc * sign / (n_chars as f64);
    // ledger: per-table entries carry O(p eps) absolute error with unit
    // terms; the chi sum accumulates p-1 products of n such entries
    let table_err = 4.0 * EPS * (p as f64);
    let per_term = (n as f64) * table_err * (p as f64).powf((n as f64 - 1.0) / 2.0);
    let err = ((n_chars as f64) * per_term + EPS * (n_chars as f64) * mag_sum + 4.0 * EPS * mag_sum)
        / (n_chars as f64);
    Ok(ComplexApprox::new(value, err))
}

/// The exact Jacobi normalization: iota(r1+q1)(-1) * prod_i -J(iota(r_i), iota(q_i - r_i)).
pub fn cal_j_exact(hd: &HypergeometricDatum, ctx: &Arc<PrimeFieldContext>) -> Result<CycInt> {
    let s0 = &hd.alpha()[0] + &hd.beta()[0];
    let sign0 = char_of_fraction(ctx, &s0)?.value_at_minus_one();
    let mut acc = CycInt::from_integer(1, BigInt::from(sign0));
    for (r, q) in hd.alpha().iter().zip(hd.beta()) {
        let j = jacobi_sum_exact(ctx, r, &(q - r))?;
        acc = acc.mul(&j.neg());
    }
    Ok(acc)
}

/// The normalized H function for a primitive datum:
/// (-1)^{n-1} * calJ^{-1} * P(...), with calJ exact and embedded.
pub fn h_value(hd: &HypergeometricDatum, lambda: &Rat, ctx: &Arc<PrimeFieldContext>) -> Result<ComplexApprox> {
    if !hd.invariants().primitive {
        return Err(Error::Domain(format!("imprimitive datum {}", hd.render())));
    }
    let pp = pp_sum(hd, lambda, ctx)?;
    let cj = cal_j_exact(hd, ctx)?.embed_complex();
    let sign = if hd.len() % 2 == 1 { 1.0 } else { -1.0 };
    pp.scale(sign).div(&cj)
}

/// chi(x) for an exact-rational character exponent, as a complex root of
/// unity (exact modulo the embedding tables).
pub fn char_value_at(ctx: &Arc<PrimeFieldContext>, exponent: &Rat, x: u64) -> Result<ComplexApprox> {
    let chi = char_of_fraction(ctx, exponent)?;
    Ok(ComplexApprox::new(chi.value(x), 4.0 * EPS))
}

/// iota(exponent)(x) as an exact root of unity in Z[zeta_M].
pub fn char_value_exact(ctx: &Arc<PrimeFieldContext>, exponent: &Rat, x: u64, m: u64) -> Result<CycInt> {
    let f = fract(exponent);
    let den = denom_u64(&f);
    if m % den != 0 || (ctx.p() - 1) % m != 0 {
        return Err(Error::IncompatiblePrime(format!(
            "cannot express iota({exponent}) in Z[zeta_{m}] at p={}",
            ctx.p()
        )));
    }
    if x % ctx.p() == 0 {
        return Ok(CycInt::zero(m));
    }
    let im = to_i64((&f * Rat::from(BigInt::from(m as i64))).numer()).rem_euclid(m as i64) as u64;
    let e = super::zeta_m_exponent(ctx, im, m, x);
    Ok(CycInt::from_integer(m, BigInt::one()).mul_root(e as i64))
}

/// Reduce a BigInt mod a u64 modulus into [0, modulus).
pub fn bigint_mod(c: &BigInt, modulus: u64) -> u64 {
    bigint_mod_u64(c, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsum::integer_reconstruct;
    use crate::datum::{make_hd4, rat, rat_int};

    fn ctx(p: u64) -> Arc<PrimeFieldContext> {
        PrimeFieldContext::new(p).unwrap()
    }

    #[test]
    fn gauss_trivial_and_quadratic() {
        let c = ctx(13);
        let eps = char_of_fraction(&c, &rat_int(1)).unwrap();
        let g = gauss_sum_complex(&eps);
        assert!((g.value() - Complex64::new(-1.0, 0.0)).norm() < 1e-10);

        let phi = char_of_fraction(&c, &rat(1, 2)).unwrap();
        let g = gauss_sum_complex(&phi);
        let (n2, _) = g.norm_sq();
        assert!((n2 - 13.0).abs() < 1e-10);
        // p = 13 = 1 mod 4: g(phi)^2 = p
        let sq = g.mul(&g);
        assert!((sq.value() - Complex64::new(13.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn gauss_norms_over_primes() {
        for p in [5u64, 13, 17, 29, 97] {
            let c = ctx(p);
            for idx in 1..(p - 1).min(12) {
                let chi = MultChar::from_index(&c, idx);
                let (n2, err) = gauss_sum_complex(&chi).norm_sq();
                assert!((n2 - p as f64).abs() < 1e-8 + err, "p={p} idx={idx}");
            }
        }
    }

    #[test]
    fn jacobi_exact_basics() {
        let c = ctx(13);
        // J(eps, eps) = p - 2
        let j = jacobi_sum_exact(&c, &rat_int(1), &rat_int(1)).unwrap();
        assert_eq!(j.as_integer(), Some(BigInt::from(11)));

        // p=5: J(phi, phi) = -1 by brute force over x in {2,3,4}
        let c5 = ctx(5);
        let j = jacobi_sum_exact(&c5, &rat(1, 2), &rat(1, 2)).unwrap();
        assert_eq!(j.as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn jacobi_exact_matches_complex() {
        for p in [13u64, 37, 73] {
            let c = ctx(p);
            for (da, db) in [(2i64, 2i64), (3, 4), (6, 12), (12, 2), (24, 24)] {
                if (p - 1) % (da.unsigned_abs()) != 0 || (p - 1) % (db.unsigned_abs()) != 0 {
                    continue;
                }
                let a = rat(1, da);
                let b = rat(5, db);
                let exact = jacobi_sum_exact(&c, &a, &b).unwrap().embed_complex();
                let ca = char_of_fraction(&c, &a).unwrap();
                let cb = char_of_fraction(&c, &b).unwrap();
                let direct = jacobi_sum_complex(&ca, &cb);
                assert!(
                    exact.agrees_with(&direct, 1e-8),
                    "p={p} a={a} b={b}: {:?} vs {:?}",
                    exact.value(),
                    direct.value()
                );
            }
        }
    }

    #[test]
    fn jacobi_gauss_relation() {
        // J(A,B) = g(A)g(B)/g(AB) for A, B, AB nontrivial
        for p in [13u64, 29] {
            let c = ctx(p);
            for ia in 1..(p - 1) {
                for ib in [1u64, 2, 3] {
                    if (ia + ib) % (p - 1) == 0 {
                        continue;
                    }
                    let a = MultChar::from_index(&c, ia);
                    let b = MultChar::from_index(&c, ib);
                    let ab = a.mul(&b);
                    let lhs = jacobi_sum_complex(&a, &b);
                    let rhs = gauss_sum_complex(&a)
                        .mul(&gauss_sum_complex(&b))
                        .div(&gauss_sum_complex(&ab))
                        .unwrap();
                    assert!(lhs.agrees_with(&rhs, 1e-8), "p={p} ia={ia} ib={ib}");
                }
            }
        }
    }

    #[test]
    fn binomial_symmetries() {
        let c = ctx(13);
        let eps = MultChar::from_index(&c, 0);
        let b = binomial(&eps, &eps);
        assert!((b.value() - Complex64::new(-11.0, 0.0)).norm() < 1e-9);

        // conj symmetry: binom(conj A, conj B) = conj binom(A, B)
        for (ia, ib) in [(3u64, 5u64), (2, 9), (7, 4)] {
            let a = MultChar::from_index(&c, ia);
            let bb = MultChar::from_index(&c, ib);
            let lhs = binomial(&a.inverse(), &bb.inverse());
            let rhs = binomial(&a, &bb).conj();
            assert!(lhs.agrees_with(&rhs, 1e-9));
        }
    }

    #[test]
    fn pp_and_h_basic() {
        // H(HD4(1/2); -1) at p=5 rounds to the product of the two
        // eta-extracted coefficients: (-2) * 2 = -4
        let c = ctx(5);
        let hd = make_hd4(6).unwrap();
        let h = h_value(&hd, &rat_int(-1), &c).unwrap();
        let n = integer_reconstruct(&h).unwrap();
        let tables = crate::qseries::EigenTables::default();
        let expect = tables.ap_f2(4, 5).unwrap() * tables.ap_f3(4, 5).unwrap();
        assert_eq!(n, expect);
        assert_eq!(n, BigInt::from(-4));
    }

    #[test]
    fn h_rejects_imprimitive_and_zero_lambda() {
        let c = ctx(13);
        let hd5 = crate::datum::make_hd5(6).unwrap();
        assert!(matches!(
            h_value(&hd5, &rat_int(-1), &c),
            Err(Error::Domain(_))
        ));
        let hd = make_hd4(6).unwrap();
        assert!(matches!(
            h_value(&hd, &rat_int(0), &c),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            h_value(&hd, &rat_int(13), &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn eq_4_9_jacobi_product() {
        // J(1 - r/2, r) J((1-r)/2, r) = p * omega^{(p-1)r}(4), exact
        for p in [13u64, 73] {
            let c = ctx(p);
            for j in [2i64, 4, 6] {
                let r = rat(j, 12);
                let d2 = denom_u64(&(&r / rat_int(2)));
                if (p - 1) % num::integer::lcm(d2, 2) != 0 {
                    continue;
                }
                let lhs = jacobi_sum_exact(&c, &(rat_int(1) - &r / rat_int(2)), &r)
                    .unwrap()
                    .mul(&jacobi_sum_exact(&c, &((rat_int(1) - &r) / rat_int(2)), &r).unwrap());
                let m = lhs.modulus();
                let rhs = char_value_exact(&c, &r, 4, m)
                    .unwrap()
                    .mul_scalar(&BigInt::from(p));
                assert_eq!(lhs, rhs, "p={p} j={j}");
            }
        }
    }
}
