//! Truncated hypergeometric sums over Z_p with exact valuation tracking.
//!
//! Every term of a truncated series is an exact rational, so its valuation
//! and unit part are computed exactly; no big-oh arithmetic is needed until
//! terms are summed. A term of negative valuation is reported as an
//! integrality error by the checked entry points.

use super::{pow_u64, PadicResidue};
use crate::charsum::{invmod, mulmod};
use crate::datum::{denom_u64, rat, rat_int, HypergeometricDatum, Rat};
use crate::error::{Error, Result};
use num::Zero;

/// Exact (valuation, unit mod p^k) of a nonzero rational.
fn rat_val_unit(x: &Rat, p: u64, k: u32) -> (i64, u64) {
    debug_assert!(!x.is_zero());
    let pk = pow_u64(p, k);
    let pb = num::BigInt::from(p);
    let mut num = x.numer().clone();
    let mut vn = 0i64;
    loop {
        let (q, r) = num::Integer::div_rem(&num, &pb);
        if r.is_zero() {
            num = q;
            vn += 1;
        } else {
            break;
        }
    }
    let mut den = x.denom().clone();
    let mut vd = 0i64;
    loop {
        let (q, r) = num::Integer::div_rem(&den, &pb);
        if r.is_zero() {
            den = q;
            vd += 1;
        } else {
            break;
        }
    }
    let un = crate::charsum::sums::bigint_mod(&num, pk);
    let ud = crate::charsum::sums::bigint_mod(&den, pk);
    (vn - vd, mulmod(un, invmod(ud, pk), pk))
}

/// Pochhammer symbol (r)_m as a valuation-tracked residue, by the running
/// product of the exact factors r, r+1, ..., r+m-1.
pub fn pochhammer_mod(r: &Rat, m: u64, p: u64, k: u32) -> Result<PadicResidue> {
    if denom_u64(r) % p == 0 {
        return Err(Error::Domain(format!("{r} is not p-integral at {p}")));
    }
    let pk = pow_u64(p, k);
    let mut val = 0i64;
    let mut unit = 1u64;
    for t in 0..m {
        let factor = r + rat_int(t as i64);
        if factor.is_zero() {
            return Ok(PadicResidue::zero(p));
        }
        let (v, u) = rat_val_unit(&factor, p, k);
        val += v;
        unit = mulmod(unit, u, pk);
    }
    Ok(PadicResidue::from_unit(p, unit, val as i32, k))
}

/// All truncation terms of F(alpha, beta; lambda) as (valuation, unit)
/// pairs, m = 0 .. count-1. Terms that are exactly zero appear as None.
fn series_terms(
    hd: &HypergeometricDatum,
    lambda: &Rat,
    count: u64,
    p: u64,
    k: u32,
) -> Result<Vec<Option<(i64, u64)>>> {
    for x in hd.alpha().iter().chain(hd.beta()) {
        if denom_u64(x) % p == 0 {
            return Err(Error::Domain(format!("parameter {x} not p-integral at {p}")));
        }
    }
    if denom_u64(lambda) % p == 0 {
        return Err(Error::Domain(format!("evaluation point {lambda} not p-integral at {p}")));
    }
    let pk = pow_u64(p, k);
    let lam = if lambda.is_zero() { None } else { Some(rat_val_unit(lambda, p, k)) };
    let mut terms: Vec<Option<(i64, u64)>> = Vec::with_capacity(count as usize);
    let mut cur: Option<(i64, u64)> = Some((0, 1));
    terms.push(cur);
    for m in 0..count.saturating_sub(1) {
        // term_{m+1} = term_m * lambda * prod_i (r_i + m) / prod_j (q_j + m)
        cur = match (cur, lam) {
            (Some((mut v, mut u)), Some((lv, lu))) => {
                v += lv;
                u = mulmod(u, lu, pk);
                let mut dead = false;
                for r in hd.alpha() {
                    let f = r + rat_int(m as i64);
                    if f.is_zero() {
                        dead = true;
                        break;
                    }
                    let (fv, fu) = rat_val_unit(&f, p, k);
                    v += fv;
                    u = mulmod(u, fu, pk);
                }
                for q in hd.beta() {
                    let f = q + rat_int(m as i64);
                    if f.is_zero() {
                        return Err(Error::Domain(format!(
                            "lower parameter {q} hits a nonpositive integer at step {m}"
                        )));
                    }
                    let (fv, fu) = rat_val_unit(&f, p, k);
                    v -= fv;
                    u = mulmod(u, invmod(fu, pk), pk);
                }
                if dead {
                    None
                } else {
                    Some((v, u))
                }
            }
            _ => None,
        };
        terms.push(cur);
    }
    terms.truncate(count as usize);
    Ok(terms)
}

/// Options for [`truncated_sum`].
pub struct SumOptions {
    /// Report a term of negative valuation as an integrality error.
    pub require_integral: bool,
    /// Extra per-term factor (m, k-digits) -> exact rational, e.g. the
    /// telescoped very-well-poised column.
    pub term_factor: Option<Box<dyn Fn(u64) -> Rat>>,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { require_integral: true, term_factor: None }
    }
}

/// Sum of the first `count` series terms as a PadicResidue carrying k unit
/// digits relative to the minimal term valuation.
pub fn truncated_sum(
    hd: &HypergeometricDatum,
    lambda: &Rat,
    count: u64,
    p: u64,
    k: u32,
    opts: &SumOptions,
) -> Result<PadicResidue> {
    let terms = series_terms(hd, lambda, count, p, k)?;
    let mut entries: Vec<(i64, u64)> = Vec::with_capacity(terms.len());
    let pk = pow_u64(p, k);
    for (m, t) in terms.iter().enumerate() {
        let Some((mut v, mut u)) = *t else { continue };
        if let Some(f) = &opts.term_factor {
            let extra = f(m as u64);
            if extra.is_zero() {
                continue;
            }
            let (ev, eu) = rat_val_unit(&extra, p, k);
            v += ev;
            u = mulmod(u, eu, pk);
        }
        if opts.require_integral && v < 0 {
            return Err(Error::Integrality(format!(
                "term {m} of {}@{lambda} has valuation {v} at p={p}",
                hd.render()
            )));
        }
        entries.push((v, u));
    }
    if entries.is_empty() {
        return Ok(PadicResidue::zero(p));
    }
    let vmin = entries.iter().map(|(v, _)| *v).min().unwrap();
    // each term is exact, so the sum is exact modulo p^{vmin + k}
    let mut acc: u64 = 0;
    for (v, u) in entries {
        let shift = (v - vmin) as u32;
        if shift >= k {
            continue;
        }
        acc = (acc + mulmod(u, pow_u64(p, shift), pk)) % pk;
    }
    if acc == 0 {
        return Ok(PadicResidue::zero_to(p, (vmin + k as i64) as i32));
    }
    let mut extra = 0u32;
    let mut u = acc;
    while u % p == 0 {
        u /= p;
        extra += 1;
    }
    Ok(PadicResidue::from_unit(p, u, (vmin + extra as i64) as i32, k - extra))
}

/// Truncation of F(hd; lambda) after the p-th term (indices 0..p-1), with
/// the p-integrality of every partial term enforced.
pub fn truncated_f(hd: &HypergeometricDatum, lambda: &Rat, p: u64, k: u32) -> Result<PadicResidue> {
    truncated_sum(hd, lambda, p, p, k, &SumOptions::default())
}

/// Truncation of the very-well-poised length-5 family member at -1,
/// summed through the telescoped factor (1 + 2m/r1) applied to the
/// length-4 terms; this never divides by the p-divisible column.
pub fn truncated_f5(j: i64, p: u64, k: u32) -> Result<PadicResidue> {
    let hd4 = crate::datum::make_hd4(j)?;
    let r1 = rat(j, 12);
    let opts = SumOptions {
        require_integral: true,
        term_factor: Some(Box::new(move |m| {
            rat_int(1) + rat(2 * m as i64, 1) / &r1
        })),
    };
    truncated_sum(&hd4, &rat_int(-1), p, p, k, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{make_hd4, make_hd5};
    use num::BigInt;

    /// Exact-rational oracle: partial sum of the defining series, reduced
    /// mod p^k. Independent of the valuation-tracked path.
    fn rational_oracle(hd: &HypergeometricDatum, lambda: &Rat, count: u64, p: u64, k: u32) -> u64 {
        let mut sum = Rat::zero();
        let mut term = Rat::from(BigInt::from(1));
        for m in 0..count {
            sum += &term;
            let mut next = term * lambda;
            for r in hd.alpha() {
                next *= r + rat_int(m as i64);
            }
            for q in hd.beta() {
                next /= q + rat_int(m as i64);
            }
            term = next;
        }
        // reduce: denominator must be a p-unit for admissible data
        let pk = pow_u64(p, k);
        let num = crate::charsum::sums::bigint_mod(sum.numer(), pk);
        let den = crate::charsum::sums::bigint_mod(sum.denom(), pk);
        mulmod(num, invmod(den, pk), pk)
    }

    #[test]
    fn pochhammer_basics() {
        let p = 13;
        // (1)_m = m!
        let f = pochhammer_mod(&rat_int(1), 5, p, 2).unwrap();
        assert_eq!(f.to_residue_mod(2).unwrap(), 120);
        // (r)_0 = 1
        let one = pochhammer_mod(&rat(5, 12), 0, p, 2).unwrap();
        assert_eq!(one.to_residue_mod(2).unwrap(), 1);
        // p=13, r=1/2, m=7: the factor 13/2 appears, valuation 1
        let v = pochhammer_mod(&rat(1, 2), 7, p, 2).unwrap();
        assert_eq!(v.valuation(), 1);
    }

    #[test]
    fn pochhammer_gamma_closed_form() {
        // (r)_m = (-1)^m Gamma_p(r+m)/Gamma_p(r) * (r + [-r]_0)^{nu(m, [-r]_0)}
        use crate::padic::gamma::{first_digit, GammaPTable};
        for (p, k) in [(13u64, 2u32), (73, 2)] {
            let t = GammaPTable::new(p, k).unwrap();
            for r in [rat(1, 2), rat(1, 12), rat(5, 12)] {
                let digit = first_digit(&(-&r), p).unwrap();
                for m in 0..p.min(40) {
                    let lhs = pochhammer_mod(&r, m, p, k).unwrap();
                    let quot = t
                        .gamma(&(&r + rat_int(m as i64)))
                        .unwrap()
                        .mul(&t.gamma(&r).unwrap().inv().unwrap());
                    let sign = if m % 2 == 1 { -1 } else { 1 };
                    let mut rhs = quot.mul(&PadicResidue::from_rat(&rat_int(sign), p, k).unwrap());
                    if m > digit {
                        let f = PadicResidue::from_rat(&(&r + rat_int(digit as i64)), p, k).unwrap();
                        rhs = rhs.mul(&f);
                    }
                    // compare at the precision the closed form supports
                    let prec = k.min(rhs.unit_prec());
                    assert!(
                        lhs.agrees_mod(&rhs, prec).unwrap(),
                        "p={p} r={r} m={m}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn truncated_matches_oracle() {
        // pairs with p = 1 mod M(j), where every partial term is p-integral
        for (j, p) in [
            (6i64, 5u64),
            (6, 13),
            (6, 37),
            (2, 13),
            (2, 37),
            (4, 13),
            (4, 37),
            (1, 73),
            (3, 17),
        ] {
            let hd = make_hd4(j).unwrap();
            let got = truncated_f(&hd, &rat_int(-1), p, 2).unwrap();
            let want = rational_oracle(&hd, &rat_int(-1), p, p, 2);
            assert_eq!(got.to_residue_mod(2).unwrap(), want, "p={p} j={j}");
        }
    }

    #[test]
    fn lambda_zero_gives_one() {
        let hd = make_hd4(3).unwrap();
        let got = truncated_f(&hd, &rat_int(0), 13, 2).unwrap();
        assert_eq!(got.to_residue_mod(2).unwrap(), 1);
    }

    #[test]
    fn integrality_failure_for_large_j() {
        // digit bookkeeping fails for j = 7..11: some partial term is not
        // p-integral at p = 1 mod 24
        let hd = make_hd4(7).unwrap();
        match truncated_f(&hd, &rat_int(-1), 73, 2) {
            Err(Error::Integrality(_)) => {}
            other => panic!("expected integrality error, got {other:?}"),
        }
    }

    #[test]
    fn f5_matches_direct_series() {
        // the telescoped sum equals the exact-rational length-5 oracle
        for (j, p) in [(6i64, 13u64), (4, 13), (2, 13), (6, 5)] {
            let got = truncated_f5(j, p, 2).unwrap();
            let hd5 = make_hd5(j).unwrap();
            let want = rational_oracle(&hd5, &rat_int(-1), p, p, 2);
            assert_eq!(got.to_residue_mod(2).unwrap(), want, "j={j} p={p}");
        }
    }

    #[test]
    fn sum_order_independence() {
        // exact unit/valuation tracking: reversing the summation order of
        // the collected terms changes nothing
        let p = 13u64;
        let k = 2u32;
        let hd = make_hd4(6).unwrap();
        let terms = series_terms(&hd, &rat_int(-1), p, p, k).unwrap();
        let pk = pow_u64(p, k);
        let fold = |iter: &mut dyn Iterator<Item = &Option<(i64, u64)>>| -> u64 {
            let mut acc = 0u64;
            for t in iter {
                let Some((v, u)) = t else { continue };
                if *v < k as i64 {
                    acc = (acc + mulmod(*u, pow_u64(p, *v as u32), pk)) % pk;
                }
            }
            acc
        };
        let forward = fold(&mut terms.iter());
        let backward = fold(&mut terms.iter().rev());
        assert_eq!(forward, backward);
        assert_eq!(
            forward,
            truncated_f(&hd, &rat_int(-1), p, k).unwrap().to_residue_mod(k).unwrap()
        );
    }

    #[test]
    fn f5_first_term_factor() {
        // factor at m=0 is 1
        let r1 = rat(6, 12);
        let f = rat_int(1) + rat(0, 1) / &r1;
        assert_eq!(f, rat_int(1));
    }
}
