//! Special L-values of eta quotients by splitting the Mellin integral at
//! the Fricke point: both halves become exponentially convergent sums
//! against the q-expansion, with the lower half transported by the exact
//! eta transformation. Also the closed Beta form for the weight-2 family
//! and direct evaluation of quotients at points in the upper half plane.

use super::gamma::beta;
use super::{rel_agree, Ctx};
use crate::datum::{is_integer, rat, rat_int, to_i64, Rat};
use crate::error::{Error, Result};
use crate::qseries::eta::{k1_quotient, k2_quotient, EtaQuotient};
use crate::qseries::QSeries;
use rug::{Complex, Float};

/// Expansion order (exclusive, in q exponents) so that the first omitted
/// term of the split integral is below 10^{-(digits+8)}.
fn order_for(ctx: &Ctx, y0: f64) -> i64 {
    let decades = ctx.digits as f64 + 12.0;
    ((decades * std::f64::consts::LN_10) / (2.0 * std::f64::consts::PI * y0)).ceil() as i64 + 8
}

/// sum over nonzero coefficients of `series` of a_e * kernel(2 pi e),
/// where e runs over the exponents as rationals.
fn sum_against(
    series: &QSeries,
    ctx: &Ctx,
    kernel: &dyn Fn(&Float) -> Float,
) -> Float {
    let mut acc = ctx.float(0);
    let g = ctx.float(series.grid() as i64);
    let two_pi = ctx.pi() * 2u32;
    for (i, c) in series.coeffs().iter().enumerate() {
        if num::Zero::is_zero(c) {
            continue;
        }
        let e = ctx.float(series.offset() + i as i64) / g.clone();
        let beta = two_pi.clone() * e;
        acc += ctx.bigint(c) * kernel(&beta);
    }
    acc
}

/// L(f, k) for a cuspidal eta quotient via the split at y0 = 1/sqrt(N):
/// requires every scale to divide N with an admissible complement and
/// positive leading exponents on both sides. Supports weights 2 and 3,
/// with k = 2 only in weight 3.
pub fn lvalue_eta(etaq: &EtaQuotient, n_level: u64, k: u32, ctx: &Ctx) -> Result<Float> {
    use num::Signed;
    let w_rat = etaq.weight();
    if !is_integer(&w_rat) {
        return Err(Error::Domain(format!("half-integral weight {w_rat}")));
    }
    let w = to_i64(w_rat.numer());
    if !(w == 2 || w == 3) || (k == 2 && w != 3) || !(k == 1 || k == 2) {
        return Err(Error::Domain(format!(
            "unsupported (weight, k) = ({w}, {k})"
        )));
    }
    if !etaq.leading_exponent().is_positive() {
        return Err(Error::Domain("quotient not cuspidal at infinity".into()));
    }
    let (factor, image) = etaq.fricke(n_level)?;
    if !image.leading_exponent().is_positive() {
        return Err(Error::Domain(
            "transformed quotient not cuspidal; the integral split diverges".into(),
        ));
    }
    let y0f = 1.0 / (n_level as f64).sqrt();
    let order = order_for(ctx, y0f);
    let g_self = etaq.natural_grid();
    let f_series = etaq.expand(g_self, order.checked_mul(g_self as i64).ok_or_else(|| Error::Truncation("order overflow".into()))?)?;
    let g_img = image.natural_grid();
    let g_series = image.expand(g_img, order.checked_mul(g_img as i64).ok_or_else(|| Error::Truncation("order overflow".into()))?)?;
    let y0 = ctx.float(1) / ctx.float(n_level as i64).sqrt();
    let scalar = ctx.rat(&factor.scalar_sq).sqrt();
    // I0(b) = e^{-b y0}/b, I1(b) = (1 + b y0) e^{-b y0} / b^2
    let i0 = |b: &Float| -> Float {
        let e = (-(b.clone() * y0.clone())).exp();
        e / b.clone()
    };
    let i1 = |b: &Float| -> Float {
        let by = b.clone() * y0.clone();
        let e = (-by.clone()).exp();
        (ctx.float(1) + by) * e / (b.clone() * b.clone())
    };
    let nf = ctx.float(n_level as i64);
    match k {
        1 => {
            let upper = sum_against(&f_series, ctx, &i0);
            let lower = match w {
                2 => sum_against(&g_series, ctx, &i0),
                _ => sum_against(&g_series, ctx, &i1),
            };
            Ok((upper + scalar / nf * lower) * ctx.pi() * 2u32)
        }
        _ => {
            let upper = sum_against(&f_series, ctx, &i1);
            let lower = sum_against(&g_series, ctx, &i0);
            let pi2 = ctx.pi() * ctx.pi();
            Ok((upper + scalar / (nf.clone() * nf) * lower) * pi2 * 4u32)
        }
    }
}

/// A member combination sum_m c_m * quotient_m with complex coefficients.
pub struct Combination {
    pub members: Vec<(Complex, EtaQuotient)>,
    pub level: u64,
}

pub fn lvalue_combination(combo: &Combination, k: u32, ctx: &Ctx) -> Result<Complex> {
    let mut acc = ctx.complex_zero();
    for (c, q) in &combo.members {
        let l = lvalue_eta(q, combo.level, k, ctx)?;
        acc += c.clone() * l;
    }
    Ok(acc)
}

/// L(K1(r,s)(tau), 1) = 2^{1-4r} B(r, s-r-1/2), continued through the
/// Beta function where the first argument is negative non-integral.
pub fn l_k1_closed(r: &Rat, s: &Rat, ctx: &Ctx) -> Result<Float> {
    let b = beta(r, &(s - r - rat(1, 2)), ctx)?;
    Ok(ctx.two_pow(&(rat_int(1) - r * rat_int(4))) * b)
}

/// L-value of the non-cuspidal weight-2 partner at parameter r: the
/// normalization that the period reduction of the degree-5 identity
/// produces, L = 2^{3-10r} B(-r/2, r). (The cusp-form closed form above
/// does not continue to this member: its leading exponent is negative,
/// and the two normalizations differ by 2^{12r-1}.)
pub fn l_weight2_noncuspidal(r: &Rat, ctx: &Ctx) -> Result<Float> {
    let b = beta(&(-r / rat_int(2)), r, ctx)?;
    Ok(ctx.two_pow(&(rat_int(3) - r * rat_int(10))) * b)
}

/// The archimedean constant pi/sin(j pi/12) Gamma(j/12)^2/Gamma(j/12+1/2)^2.
pub fn omega_c(j: i64, ctx: &Ctx) -> Result<Float> {
    if !(1..=11).contains(&j) {
        return Err(Error::Parameter(format!("j={j} outside [1,11]")));
    }
    let r = rat(j, 12);
    let g1 = super::gamma::gamma_real(&r, ctx)?;
    let g2 = super::gamma::gamma_real(&(&r + rat(1, 2)), ctx)?;
    let sin = (ctx.pi() * ctx.rat(&r)).sin();
    Ok(ctx.pi() / sin * g1.clone() * g1 / (g2.clone() * g2))
}

/// Evaluate an eta quotient at a point in the upper half plane by the
/// defining product (no modular transformations involved).
pub fn eta_quotient_at(etaq: &EtaQuotient, tau: &Complex, ctx: &Ctx) -> Result<Complex> {
    let two_pi_i = ctx.complex(ctx.float(0), ctx.pi() * 2u32);
    let mut acc = ctx.complex(ctx.float(1), ctx.float(0));
    for (scale, e) in etaq.factors() {
        let m_tau = tau.clone() * ctx.rat(scale);
        // q_m = e^{2 pi i m tau}
        let qm = (two_pi_i.clone() * m_tau.clone()).exp();
        if qm.clone().abs().real().to_f64() >= 1.0 {
            return Err(Error::Domain("point not in the upper half plane".into()));
        }
        // eta(m tau) = e^{2 pi i m tau / 24} prod (1 - q_m^n)
        let mut v = (two_pi_i.clone() * m_tau / 24u32).exp();
        let mut qn = qm.clone();
        let tol = ctx.tol(ctx.digits + 10);
        loop {
            v *= ctx.complex(ctx.float(1), ctx.float(0)) - &qn;
            if qn.clone().abs().real().clone() < tol {
                break;
            }
            qn *= &qm;
        }
        use rug::ops::Pow;
        acc *= Complex::with_val(ctx.bits, (&v).pow(*e));
    }
    Ok(acc)
}

/// Numeric transformation consistency at one interior point:
/// |f(-1/(N tau0)) - c tau0^w i^{-w} g(tau0)| small, with (c, g) from the
/// exact transform.
pub fn fricke_numeric_residual(etaq: &EtaQuotient, n_level: u64, ctx: &Ctx) -> Result<Float> {
    let tau0 = ctx.complex(ctx.f64(0.3), ctx.f64(0.7));
    let (factor, image) = etaq.fricke(n_level)?;
    let minus_inv = -ctx.complex(ctx.float(1), ctx.float(0))
        / (tau0.clone() * ctx.float(n_level as i64));
    let lhs = eta_quotient_at(etaq, &minus_inv, ctx)?;
    if !is_integer(&factor.tau_power) {
        return Err(Error::Domain("half-integral total weight".into()));
    }
    let w = to_i64(factor.tau_power.numer());
    use rug::ops::Pow;
    let tau_pow = Complex::with_val(ctx.bits, (&tau0).pow(w as i32));
    // (tau/i)^w = tau^w i^{-w}
    let i_pow = match w.rem_euclid(4) {
        0 => ctx.complex(ctx.float(1), ctx.float(0)),
        1 => ctx.complex(ctx.float(0), ctx.float(-1)),
        2 => ctx.complex(ctx.float(-1), ctx.float(0)),
        _ => ctx.complex(ctx.float(0), ctx.float(1)),
    };
    let scalar = ctx.rat(&factor.scalar_sq).sqrt();
    let rhs = eta_quotient_at(&image, &tau0, ctx)? * tau_pow * i_pow * scalar;
    Ok(Complex::with_val(ctx.bits, lhs - rhs).abs().real().clone())
}

/// The weight-3 member's L-value via the split integral at base scale,
/// cross-checked against the period route; returns L(K2(r,s)(N tau), k).
pub fn lvalue_k2(r: &Rat, s: &Rat, n_scale: u64, k: u32, ctx: &Ctx) -> Result<Float> {
    let q = k2_quotient(r, s)?;
    let base = lvalue_eta(&q, 1, k, ctx)?;
    // L(f(N tau), k) = N^{-k} L(f, k)
    use rug::ops::Pow;
    let nf = ctx.float(n_scale as i64);
    let scale = Float::with_val(ctx.bits, (&nf).pow(k));
    let value = base.clone() / scale;
    // route consistency per the period identity:
    // P(r,s) = 2^{4r-1} N(r) pi L(K2(r,s)(N(r) tau), 1)
    //        = 2^{4s-4r-2} N(r)^2 L(K2(s-r,s)(N(r) tau), 2)
    if k == 1 {
        // the N-scaled L-value folds back: the cross-check reduces to
        // P(r,s) = 2^{4r-1} pi L(K2(r,s)(tau), 1)
        let p = super::pvalue::p_value(r, s, ctx)?;
        let lhs = ctx.two_pow(&(r * rat_int(4) - rat_int(1))) * ctx.pi() * base.clone();
        if !rel_agree(&p.value, &lhs, &ctx.tol(ctx.digits / 2)) {
            return Err(Error::Consistency(format!(
                "period route disagrees with the split integral at ({r},{s})"
            )));
        }
    }
    Ok(value)
}

/// Both equalities of the period identity for one pair, as floats:
/// (P(r,s), 2^{4r-1} N pi L(K2(r,s)(N tau),1), 2^{4s-4r-2} N^2 L(K2(s-r,s)(N tau),2)).
pub fn period_identity_sides(r: &Rat, s: &Rat, ctx: &Ctx) -> Result<(Float, Float, Float)> {
    let n_r = crate::datum::n_of(r)?;
    let p = super::pvalue::p_value(r, s, ctx)?;
    let l1 = lvalue_eta(&k2_quotient(r, s)?, 1, 1, ctx)? / ctx.float(n_r as i64);
    let middle = ctx.two_pow(&(r * rat_int(4) - rat_int(1))) * ctx.float(n_r as i64) * ctx.pi() * l1;
    let l2 = lvalue_eta(&k2_quotient(&(s - r), s)?, 1, 2, ctx)?
        / (ctx.float(n_r as i64) * ctx.float(n_r as i64));
    let right = ctx.two_pow(&((s - r) * rat_int(4) - rat_int(2))) * ctx.float((n_r * n_r) as i64) * l2;
    Ok((p.value, middle, right))
}

/// L-value of the weight-2 member via the split integral (for the
/// closed-form cross-checks).
pub fn lvalue_k1_split(r: &Rat, s: &Rat, scale_n: u64, ctx: &Ctx) -> Result<Float> {
    let q = k1_quotient(r, s)?.scaled(scale_n);
    // the scaled quotient has scales {N/2, N, 2N}; level N^2 keeps the
    // complements admissible
    lvalue_eta(&q, scale_n * scale_n, 1, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::gamma::gamma_real;
    use crate::numeric::rel_agree;

    #[test]
    fn lvalue_k1_closed_vs_split() {
        // f_{32.2.a.a} = K1(1/4,5/4)(8 tau): L = (1/8) 2^{1-1} B(1/4, 1/2)
        let ctx = Ctx::new(45);
        let closed = l_k1_closed(&rat(1, 4), &rat(5, 4), &ctx).unwrap() / ctx.float(8);
        let split = lvalue_k1_split(&rat(1, 4), &rat(5, 4), 8, &ctx).unwrap();
        assert!(rel_agree(&closed, &split, &ctx.tol(30)), "{closed} vs {split}");
        // explicit closed form (1/8) Gamma(1/4) Gamma(1/2) / Gamma(3/4)
        let g = gamma_real(&rat(1, 4), &ctx).unwrap() * gamma_real(&rat(1, 2), &ctx).unwrap()
            / gamma_real(&rat(3, 4), &ctx).unwrap();
        let want = g / ctx.float(8);
        assert!(rel_agree(&split, &want, &ctx.tol(30)));
    }

    #[test]
    fn scaling_law() {
        // L(f(N tau), k) = N^{-k} L(f, k): compare eta(4 tau)^6 at levels 16
        // against the same quotient rescaled by 2 at level 64
        let ctx = Ctx::new(40);
        let q = EtaQuotient::new(vec![(rat_int(4), 6)]).unwrap();
        let l = lvalue_eta(&q, 16, 1, &ctx).unwrap();
        let q2 = q.scaled(2);
        let l2 = lvalue_eta(&q2, 64, 1, &ctx).unwrap();
        let want = l.clone() / ctx.float(2);
        assert!(rel_agree(&l2, &want, &ctx.tol(30)), "{l2} vs {want}");
    }

    #[test]
    fn period_identity_on_fixture() {
        let ctx = Ctx::new(45);
        let (p, m, r2) = period_identity_sides(&rat(1, 4), &rat(3, 4), &ctx).unwrap();
        assert!(rel_agree(&p, &m, &ctx.tol(25)), "{p} vs {m}");
        assert!(rel_agree(&p, &r2, &ctx.tol(25)), "{p} vs {r2}");
    }

    #[test]
    fn fricke_numeric_point() {
        let ctx = Ctx::new(45);
        // weight-3 member at base scale, level 1
        let q = k2_quotient(&rat(1, 4), &rat(3, 4)).unwrap();
        let res = fricke_numeric_residual(&q, 1, &ctx).unwrap();
        assert!(res < ctx.tol(26), "residual {res}");
        // eta(4 tau)^6 at level 16
        let q = EtaQuotient::new(vec![(rat_int(4), 6)]).unwrap();
        let res = fricke_numeric_residual(&q, 16, &ctx).unwrap();
        assert!(res < ctx.tol(26), "residual {res}");
    }
}
