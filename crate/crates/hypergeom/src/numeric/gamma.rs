//! Gamma and Beta at working precision, plus evaluation of symbolic
//! Gamma quotients over the reals.

use super::Ctx;
use crate::datum::{is_integer, GammaQuotient, Rat};
use crate::error::{Error, Result};
use num::Signed;
use rug::Float;

fn is_nonpositive_integer(x: &Rat) -> bool {
    is_integer(x) && !x.is_positive()
}

/// Gamma at a rational argument; poles at nonpositive integers reported.
pub fn gamma_real(x: &Rat, ctx: &Ctx) -> Result<Float> {
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("Gamma pole at {x}")));
    }
    Ok(ctx.rat(x).gamma())
}

pub fn gamma_float(x: &Float) -> Float {
    x.clone().gamma()
}

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b); negative non-integer
/// arguments go through the Gamma function directly (the reflection is
/// inside the underlying implementation).
pub fn beta(a: &Rat, b: &Rat, ctx: &Ctx) -> Result<Float> {
    let sum = a + b;
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Err(Error::Domain(format!("Beta pole at ({a},{b})")));
    }
    if is_nonpositive_integer(&sum) {
        // Gamma(a+b) pole in the denominator: the Beta value vanishes
        return Ok(ctx.float(0));
    }
    Ok(gamma_real(a, ctx)? * gamma_real(b, ctx)? / gamma_real(&sum, ctx)?)
}

/// Evaluate a symbolic Gamma quotient (rational scalar times Gamma
/// factors with integer exponents).
pub fn gamma_quotient_real(q: &GammaQuotient, ctx: &Ctx) -> Result<Float> {
    let mut acc = ctx.rat(&q.scalar);
    for (arg, e) in &q.factors {
        let g = gamma_real(arg, ctx)?;
        use rug::ops::Pow;
        acc *= Float::with_val(ctx.bits, g.pow(*e));
    }
    Ok(acc)
}
