//! Complex-analytic backend at configurable precision: Gamma/Beta, the
//! AGM kernel, tanh-sinh quadrature, alternating-series acceleration,
//! tail-model extrapolation for slowly convergent unit-argument series,
//! and special L-values of eta quotients via the split integral.

pub mod agm;
pub mod checks;
pub mod gamma;
pub mod hyp;
pub mod lvalue;
pub mod pvalue;
pub mod quad;

pub use gamma::{beta, gamma_real};

use crate::datum::Rat;
use rug::{Complex, Float};

/// Working-precision context. Checks request a precision in decimal
/// digits; arithmetic runs with guard bits on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ctx {
    pub bits: u32,
    pub digits: u32,
}

impl Ctx {
    pub fn new(digits: u32) -> Self {
        let bits =
            ((digits as f64) * std::f64::consts::LN_10 / std::f64::consts::LN_2).ceil() as u32 + 96;
        Ctx { bits, digits }
    }

    /// Same request, doubled mantissa: the escalation step.
    pub fn escalated(&self) -> Ctx {
        Ctx { bits: self.bits * 2, digits: self.digits * 2 }
    }

    pub fn float(&self, x: i64) -> Float {
        Float::with_val(self.bits, x)
    }

    pub fn f64(&self, x: f64) -> Float {
        Float::with_val(self.bits, x)
    }

    pub fn rat(&self, x: &Rat) -> Float {
        let n = Float::parse(x.numer().to_string()).expect("integer parses");
        let n = Float::with_val(self.bits, n);
        let d = Float::parse(x.denom().to_string()).expect("integer parses");
        let d = Float::with_val(self.bits, d);
        n / d
    }

    pub fn bigint(&self, x: &num::BigInt) -> Float {
        let v = Float::parse(x.to_string()).expect("integer parses");
        Float::with_val(self.bits, v)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, rug::float::Constant::Pi)
    }

    pub fn complex(&self, re: Float, im: Float) -> Complex {
        Complex::with_val(self.bits, (re, im))
    }

    pub fn complex_zero(&self) -> Complex {
        Complex::with_val(self.bits, (0, 0))
    }

    /// 10^{-e} as a comparison threshold.
    pub fn tol(&self, e: u32) -> Float {
        let ten = self.float(10);
        use rug::ops::Pow;
        Float::with_val(self.bits, ten.pow(-(e as i64)))
    }

    /// 2^e for rational e via exp(e ln 2).
    pub fn two_pow(&self, e: &Rat) -> Float {
        let ln2 = self.float(2).ln();
        (self.rat(e) * ln2).exp()
    }
}

/// |a - b| <= tol * max(|a|, |b|, 1): the relative agreement predicate
/// used by the identity checks.
pub fn rel_agree(a: &Float, b: &Float, tol: &Float) -> bool {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let scale = Float::with_val(prec, a)
        .abs()
        .max(&Float::with_val(prec, b).abs())
        .max(&Float::with_val(prec, 1));
    diff <= scale * tol.clone()
}

pub fn rel_agree_complex(a: &Complex, b: &Complex, tol: &Float) -> bool {
    let prec = a.prec().0.max(b.prec().0);
    let diff = Complex::with_val(prec, a - b).abs().real().clone();
    let na = Complex::with_val(prec, a).abs().real().clone();
    let nb = Complex::with_val(prec, b).abs().real().clone();
    let scale = na.max(&nb).max(&Float::with_val(prec, 1));
    diff <= scale * tol.clone()
}

/// Residual |a - b| / max(|a|,|b|,1) as an f64 for reporting.
pub fn rel_residual(a: &Float, b: &Float) -> f64 {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let scale = Float::with_val(prec, a)
        .abs()
        .max(&Float::with_val(prec, b).abs())
        .max(&Float::with_val(prec, 1));
    (diff / scale).to_f64()
}

pub fn rel_residual_complex(a: &Complex, b: &Complex) -> f64 {
    let prec = a.prec().0.max(b.prec().0);
    let diff = Complex::with_val(prec, a - b).abs().real().clone();
    let na = Complex::with_val(prec, a).abs().real().clone();
    let nb = Complex::with_val(prec, b).abs().real().clone();
    let scale = na.max(&nb).max(&Float::with_val(prec, 1));
    (diff / scale).to_f64()
}

/// Short decimal rendering for reports.
pub fn show(x: &Float, digits: usize) -> String {
    x.clone().to_string_radix(10, Some(digits))
}

pub fn show_complex(x: &Complex, digits: usize) -> String {
    format!("{} + {}i", show(x.real(), digits), show(x.imag(), digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::rat;

    #[test]
    fn context_basics() {
        let ctx = Ctx::new(60);
        assert!(ctx.bits > 295);
        let x = ctx.rat(&rat(1, 3));
        let three = ctx.float(3);
        let one = x * three;
        assert!(rel_agree(&one, &ctx.float(1), &ctx.tol(55)));
        // 2^{1/2} * 2^{1/2} = 2
        let r = ctx.two_pow(&rat(1, 2));
        let two = r.clone() * r;
        assert!(rel_agree(&two, &ctx.float(2), &ctx.tol(55)));
    }
}
