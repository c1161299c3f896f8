//! The arithmetic-geometric mean kernel for the complete elliptic
//! integral shape 2F1(1/2, 1/2; 1; x) = 1/AGM(1, sqrt(1-x)).

use super::Ctx;
use crate::error::{Error, Result};
use rug::Float;

/// 2F1(1/2,1/2;1;lambda) on [0,1), quadratically convergent. The
/// complement 1 - lambda is passed explicitly so callers near the
/// singular endpoint lose no digits.
pub fn f21_agm_with_complement(one_minus_lambda: &Float, ctx: &Ctx) -> Result<Float> {
    agm_inverse(one_minus_lambda, ctx)
}

fn agm_inverse(one_minus_lambda: &Float, ctx: &Ctx) -> Result<Float> {
    if !(one_minus_lambda.clone() > 0) {
        return Err(Error::Domain("argument at or beyond the singular point".into()));
    }
    let a = ctx.float(1);
    let b = one_minus_lambda.clone().sqrt();
    let m = a.agm(&b);
    Ok(ctx.float(1) / m)
}

/// 2F1(1/2,1/2;1;lambda) for lambda in [0,1).
pub fn f21_agm(lambda: &Float, ctx: &Ctx) -> Result<Float> {
    let one_minus = ctx.float(1) - lambda.clone();
    if !(one_minus > 0) || lambda.clone() < 0 {
        return Err(Error::Domain(format!("lambda = {lambda} outside [0,1)")));
    }
    agm_inverse(&one_minus, ctx)
}

/// Defining series of 2F1(1/2,1/2;1;x), for cross-checks (converges
/// linearly; used at moderate x or low target precision).
pub fn f21_series(x: &Float, ctx: &Ctx, terms: usize) -> Float {
    let mut sum = ctx.float(0);
    let mut term = ctx.float(1);
    for k in 0..terms {
        sum += &term;
        let kf = ctx.float(k as i64);
        let half = ctx.f64(0.5);
        let num = (kf.clone() + &half) * (kf.clone() + &half);
        let den = (kf.clone() + 1) * (kf + 1);
        term = term * num / den * x;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rel_agree, Ctx};

    #[test]
    fn agm_matches_series() {
        let ctx = Ctx::new(60);
        // lambda = 0 -> 1
        assert!(rel_agree(&f21_agm(&ctx.float(0), &ctx).unwrap(), &ctx.float(1), &ctx.tol(55)));
        // lambda = 1/2: series with enough terms
        let x = ctx.f64(0.5);
        let a = f21_agm(&x, &ctx).unwrap();
        let s = f21_series(&x, &ctx, 700);
        assert!(rel_agree(&a, &s, &ctx.tol(40)));
        assert!(f21_agm(&ctx.float(1), &ctx).is_err());
    }

    #[test]
    fn agm_at_sample_points() {
        // 20 sample points against the series at reduced precision
        let ctx = Ctx::new(40);
        for i in 1..=20 {
            let x = ctx.f64(i as f64 / 25.0);
            let a = f21_agm(&x, &ctx).unwrap();
            let terms = 40 * 40; // x <= 0.8: 0.8^1600 ~ 1e-155
            let s = f21_series(&x, &ctx, terms);
            assert!(rel_agree(&a, &s, &ctx.tol(30)), "i={i}");
        }
    }
}
