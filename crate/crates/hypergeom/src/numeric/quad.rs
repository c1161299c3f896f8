//! Double-exponential (tanh-sinh) quadrature on (0,1), tuned for
//! integrable endpoint singularities.
//!
//! With lambda(t) = 1/(1 + e^{-2u}), u = (pi/2) sinh t, the weight
//! d lambda/dt = pi cosh(t) lambda (1-lambda) decays double-exponentially,
//! so algebraic endpoint singularities x^{a-1}, (1-x)^{b-1} with a, b > 0
//! and logarithmic factors are absorbed. The integrand receives both
//! lambda and 1-lambda to stay accurate at the endpoints.

use super::Ctx;
use crate::error::{Error, Result};
use rug::Float;

pub struct QuadResult {
    pub value: Float,
    /// |I_l - I_{l-1}| of the final level doubling.
    pub err_estimate: Float,
    pub levels: u32,
}

/// Integrate f(lambda, 1-lambda) over (0,1).
pub fn tanh_sinh_01(
    f: &dyn Fn(&Float, &Float) -> Result<Float>,
    ctx: &Ctx,
    target_exp: u32,
) -> Result<QuadResult> {
    let pi = ctx.pi();
    let half_pi = pi.clone() / 2u32;
    let target = ctx.tol(target_exp + 5);
    // stop adding nodes when several consecutive contributions are below
    // floor * (current magnitude)
    let mut level: u32 = 3;
    let max_level: u32 = 13;
    let mut prev: Option<Float> = None;
    let mut sum_all = ctx.float(0); // accumulated f-contributions over all nodes so far
    let mut value;
    let mut err = ctx.float(1);
    loop {
        // at level l, h = 2^{-l}; new nodes are odd multiples of h (plus
        // t = 0 at the first level)
        let h = {
            let mut t = ctx.float(1);
            t >>= level;
            t
        };
        if prev.is_none() {
            let (lam, om, w) = node(&ctx.float(0), &half_pi, ctx);
            sum_all += w * f(&lam, &om)?;
        }
        let mut k: i64 = 1;
        let mut tiny_run = 0;
        loop {
            let t = h.clone() * ctx.float(k);
            let mut contributed = ctx.float(0);
            for tt in [t.clone(), -t.clone()] {
                let (lam, om, w) = node(&tt, &half_pi, ctx);
                if w.is_zero() || !lam.is_normal() || !om.is_normal() {
                    continue;
                }
                let fv = f(&lam, &om)?;
                contributed += w * fv;
            }
            sum_all += &contributed;
            let mag = Float::with_val(ctx.bits, &sum_all).abs().max(&ctx.float(1));
            if Float::with_val(ctx.bits, &contributed).abs() < mag * target.clone() {
                tiny_run += 1;
                if tiny_run >= 4 {
                    break;
                }
            } else {
                tiny_run = 0;
            }
            k += if prev.is_none() { 1 } else { 2 };
            if k > (1i64 << 24) {
                return Err(Error::Precision("quadrature node budget exhausted".into()));
            }
        }
        value = sum_all.clone() * h.clone();
        if let Some(p) = &prev {
            err = Float::with_val(ctx.bits, &value - p).abs();
            let mag = Float::with_val(ctx.bits, &value).abs().max(&ctx.float(1));
            if err < mag * target.clone() {
                return Ok(QuadResult { value, err_estimate: err, levels: level });
            }
        }
        prev = Some(value.clone());
        level += 1;
        if level > max_level {
            return Err(Error::Precision(format!(
                "quadrature did not converge to 1e-{target_exp} within {max_level} levels (last err {err})"
            )));
        }
    }
}

/// (lambda, 1-lambda, weight) at abscissa t.
fn node(t: &Float, half_pi: &Float, ctx: &Ctx) -> (Float, Float, Float) {
    let u = half_pi.clone() * t.clone().sinh();
    // lambda = 1/(1+e^{-2u}), 1-lambda = 1/(1+e^{2u})
    let e_neg = (-(u.clone() * 2u32)).exp();
    let e_pos = (u * 2u32).exp();
    let lam = ctx.float(1) / (ctx.float(1) + &e_neg);
    let om = ctx.float(1) / (ctx.float(1) + &e_pos);
    let w = ctx.pi() * t.clone().cosh() * lam.clone() * om.clone();
    (lam, om, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rel_agree, Ctx};

    #[test]
    fn polynomial_and_beta_integrals() {
        let ctx = Ctx::new(50);
        // int_0^1 x dx = 1/2
        let r = tanh_sinh_01(&|x, _| Ok(x.clone()), &ctx, 45).unwrap();
        let half = ctx.f64(0.5);
        assert!(rel_agree(&r.value, &half, &ctx.tol(42)));

        // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi (both endpoints singular)
        let r = tanh_sinh_01(
            &|x, omx| Ok(ctx.float(1) / (x.clone().sqrt() * omx.clone().sqrt())),
            &ctx,
            45,
        )
        .unwrap();
        assert!(rel_agree(&r.value, &ctx.pi(), &ctx.tol(40)), "got {}", r.value);

        // int_0^1 x^{-11/12} dx = 12
        let e = ctx.rat(&crate::datum::rat(-11, 12));
        let r = tanh_sinh_01(
            &|x, _| {
                let lx = x.clone().ln();
                Ok((e.clone() * lx).exp())
            },
            &ctx,
            45,
        )
        .unwrap();
        assert!(rel_agree(&r.value, &ctx.float(12), &ctx.tol(40)), "got {}", r.value);
    }

    #[test]
    fn log_singularity() {
        let ctx = Ctx::new(50);
        // int_0^1 ln(1/(1-x)) dx = 1
        let r = tanh_sinh_01(
            &|_, omx| Ok(-omx.clone().ln()),
            &ctx,
            45,
        )
        .unwrap();
        assert!(rel_agree(&r.value, &ctx.float(1), &ctx.tol(40)));
    }
}
