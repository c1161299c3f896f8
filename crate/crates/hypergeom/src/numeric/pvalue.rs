//! The period value P(r,s) = pi B(r, s-r) 3F2(1/2,1/2,r; 1,s; 1),
//! computed along two disjoint routes: double-exponential quadrature of
//! the Euler integral with the AGM kernel, and the accelerated defining
//! series. The quadrature value is returned; the routes must agree.

use super::agm::f21_agm_with_complement;
use super::gamma::beta;
use super::hyp::f32_unit_extrapolated;
use super::quad::tanh_sinh_01;
use super::{rel_agree, rel_residual, Ctx};
use crate::datum::{rat_int, HypergeometricDatum, Rat};
use crate::error::{Error, Result};
use num::Signed;
use rug::Float;

#[derive(Debug, Clone)]
pub struct PeriodValue {
    pub r: Rat,
    pub s: Rat,
    pub value: Float,
    /// bound combining the quadrature estimate and the route disagreement
    pub err: Float,
}

fn p_via_quadrature(r: &Rat, s: &Rat, ctx: &Ctx) -> Result<Float> {
    let rf = ctx.rat(r);
    let smrf = ctx.rat(&(s - r));
    let integrand = move |lam: &Float, om: &Float| -> Result<Float> {
        // lam^{r-1} (1-lam)^{s-r-1} / AGM(1, sqrt(1-lam))
        let a = (rf.clone() - 1u32) * lam.clone().ln();
        let b = (smrf.clone() - 1u32) * om.clone().ln();
        let kernel = f21_agm_with_complement(om, ctx)?;
        Ok((a + b).exp() * kernel)
    };
    let q = tanh_sinh_01(&integrand, ctx, ctx.digits + 6)?;
    Ok(ctx.pi() * q.value)
}

fn p_via_series(r: &Rat, s: &Rat, ctx: &Ctx) -> Result<Float> {
    let half = crate::datum::rat(1, 2);
    let hd = HypergeometricDatum::new(
        vec![half.clone(), half, r.clone()],
        vec![rat_int(1), rat_int(1), s.clone()],
    )?;
    let f = f32_unit_extrapolated(&hd, ctx)?;
    Ok(ctx.pi() * beta(r, &(s - r), ctx)? * f)
}

/// P(r, s) with both routes asserted against each other; escalates the
/// working precision once before reporting a failure.
pub fn p_value(r: &Rat, s: &Rat, ctx: &Ctx) -> Result<PeriodValue> {
    if !r.is_positive() || !(s - r).is_positive() {
        return Err(Error::Domain(format!(
            "period integral diverges at (r,s) = ({r},{s})"
        )));
    }
    let attempt = |c: &Ctx| -> Result<(Float, Float)> {
        let a = p_via_quadrature(r, s, c)?;
        let b = p_via_series(r, s, c)?;
        Ok((a, b))
    };
    let (a, b) = attempt(ctx)?;
    let tol = ctx.tol(ctx.digits / 2);
    if rel_agree(&a, &b, &tol) {
        let err = Float::with_val(ctx.bits, &a - &b).abs();
        return Ok(PeriodValue { r: r.clone(), s: s.clone(), value: a, err });
    }
    let hi = ctx.escalated();
    let (a2, b2) = attempt(&hi)?;
    if rel_agree(&a2, &b2, &hi.tol(hi.digits / 2)) {
        let err = Float::with_val(hi.bits, &a2 - &b2).abs();
        return Ok(PeriodValue { r: r.clone(), s: s.clone(), value: a2, err });
    }
    Err(Error::Precision(format!(
        "period routes disagree at ({r},{s}): residual {}",
        rel_residual(&a2, &b2)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::rat;
    use crate::numeric::gamma::gamma_real;

    #[test]
    fn closed_form_p_16_56() {
        // P(1/6,5/6) = 2^{1/6} 3^{-1/4} B(1/4,1/2)^2 and the 2^{-5/6} B(1/4,1/4)^2 form
        let ctx = Ctx::new(50);
        let p = p_value(&rat(1, 6), &rat(5, 6), &ctx).unwrap();
        let b = beta(&rat(1, 4), &rat(1, 2), &ctx).unwrap();
        let want = ctx.two_pow(&rat(1, 6)) * three_pow(&ctx, rat(-1, 4)) * b.clone() * b;
        assert!(rel_agree(&p.value, &want, &ctx.tol(25)), "{} vs {want}", p.value);
        let b2 = beta(&rat(1, 4), &rat(1, 4), &ctx).unwrap();
        let want2 = ctx.two_pow(&rat(-5, 6)) * three_pow(&ctx, rat(-1, 4)) * b2.clone() * b2;
        assert!(rel_agree(&p.value, &want2, &ctx.tol(25)));
    }

    fn three_pow(ctx: &Ctx, e: crate::datum::Rat) -> Float {
        (ctx.rat(&e) * ctx.float(3).ln()).exp()
    }

    #[test]
    fn specialized_kummer_relation() {
        // P(r,s) = sin(pi r) B(s-r, r)^2 / B(s-1/2, 1/2)^2 P(1-r, s-r+1/2)
        let ctx = Ctx::new(45);
        for (r, s) in [(rat(1, 4), rat(3, 4)), (rat(1, 3), rat(2, 3)), (rat(1, 6), rat(5, 6))] {
            let lhs = p_value(&r, &s, &ctx).unwrap().value;
            let p2 = p_value(&(rat_int(1) - &r), &(&s - &r + rat(1, 2)), &ctx).unwrap().value;
            let b1 = beta(&(&s - &r), &r, &ctx).unwrap();
            let b2 = beta(&(&s - rat(1, 2)), &rat(1, 2), &ctx).unwrap();
            let sin = (ctx.pi() * ctx.rat(&r)).sin();
            let rhs = sin * b1.clone() * b1 / (b2.clone() * b2) * p2;
            assert!(rel_agree(&lhs, &rhs, &ctx.tol(25)), "({r},{s}): {lhs} vs {rhs}");
        }
    }

    #[test]
    fn p_rejects_divergent() {
        let ctx = Ctx::new(40);
        assert!(p_value(&rat(1, 2), &rat(1, 4), &ctx).is_err());
    }

    #[test]
    fn watson_via_p() {
        // 3F2(1/2,1/2,1/2;1,1;1) = P(1/2,1)/(pi B(1/2,1/2)) = pi/Gamma(3/4)^4
        let ctx = Ctx::new(45);
        let p = p_value(&rat(1, 2), &rat_int(1), &ctx).unwrap();
        let b = beta(&rat(1, 2), &rat(1, 2), &ctx).unwrap();
        let f = p.value / (ctx.pi() * b);
        let g34 = gamma_real(&rat(3, 4), &ctx).unwrap();
        use rug::ops::Pow;
        let want = ctx.pi() / Float::with_val(ctx.bits, (&g34).pow(4u32));
        assert!(rel_agree(&f, &want, &ctx.tol(25)), "{f} vs {want}");
    }
}
