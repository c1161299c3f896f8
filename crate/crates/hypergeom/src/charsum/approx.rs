//! Complex values with a conservative accumulated-rounding bound. The
//! finite-field sums at desk scale stay within hardware doubles with ten
//! digits of headroom; the ledger makes the rounding claim checkable at
//! the point where a value is rounded to an integer.

use num::complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct ComplexApprox {
    value: Complex64,
    abs_err: f64,
}

const EPS: f64 = f64::EPSILON;

impl ComplexApprox {
    pub fn new(value: Complex64, abs_err: f64) -> Self {
        ComplexApprox { value, abs_err }
    }

    pub fn exact(value: Complex64) -> Self {
        ComplexApprox { value, abs_err: 0.0 }
    }

    pub fn from_real(x: f64) -> Self {
        ComplexApprox::new(Complex64::new(x, 0.0), 2.0 * EPS * x.abs())
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn abs_err(&self) -> f64 {
        self.abs_err
    }

    pub fn add(&self, other: &Self) -> Self {
        let v = self.value + other.value;
        ComplexApprox::new(v, self.abs_err + other.abs_err + 2.0 * EPS * v.norm())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let v = self.value - other.value;
        ComplexApprox::new(v, self.abs_err + other.abs_err + 2.0 * EPS * v.norm())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let v = self.value * other.value;
        let err = self.abs_err * other.value.norm()
            + other.abs_err * self.value.norm()
            + self.abs_err * other.abs_err
            + 4.0 * EPS * v.norm();
        ComplexApprox::new(v, err)
    }

    pub fn div(&self, other: &Self) -> crate::Result<Self> {
        let bn = other.value.norm();
        if bn <= 2.0 * other.abs_err {
            return Err(crate::Error::Precision(
                "division by a value indistinguishable from zero".into(),
            ));
        }
        let v = self.value / other.value;
        let err = (self.abs_err + other.abs_err * v.norm()) / (bn - other.abs_err)
            + 4.0 * EPS * v.norm();
        Ok(ComplexApprox::new(v, err))
    }

    pub fn scale(&self, k: f64) -> Self {
        ComplexApprox::new(self.value * k, self.abs_err * k.abs() + 2.0 * EPS * (self.value * k).norm())
    }

    pub fn conj(&self) -> Self {
        ComplexApprox::new(self.value.conj(), self.abs_err)
    }

    pub fn norm_sq(&self) -> (f64, f64) {
        let n = self.value.norm_sqr();
        let err = 2.0 * self.value.norm() * self.abs_err + self.abs_err * self.abs_err + 4.0 * EPS * n;
        (n, err)
    }

    /// Two approximations agree within their combined certificates (plus
    /// a caller slack for quantities compared across backends).
    pub fn agrees_with(&self, other: &Self, slack: f64) -> bool {
        (self.value - other.value).norm() <= self.abs_err + other.abs_err + slack
    }
}

/// Certified rounding to a rational integer: requires the imaginary part
/// to be explained by the error bound and the bound itself below 1/4.
pub fn integer_reconstruct(x: &ComplexApprox) -> crate::Result<num::BigInt> {
    if x.abs_err >= 0.25 {
        return Err(crate::Error::Precision(format!(
            "error bound {} too large to round; increase working precision",
            x.abs_err
        )));
    }
    if x.value.im.abs() > x.abs_err + 1e-12 {
        return Err(crate::Error::Consistency(format!(
            "non-real value {} cannot be an integer (bound {})",
            x.value, x.abs_err
        )));
    }
    let rounded = x.value.re.round();
    if (x.value.re - rounded).abs() > 0.25 {
        return Err(crate::Error::Precision(format!(
            "real part {} too far from an integer",
            x.value.re
        )));
    }
    // exact conversion of a f64 integer value
    Ok(num::BigInt::from(rounded as i128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_good() {
        let x = ComplexApprox::new(Complex64::new(4.9999999991, 0.0), 1e-6);
        assert_eq!(integer_reconstruct(&x).unwrap(), num::BigInt::from(5));
    }

    #[test]
    fn reconstruct_uncertified() {
        let x = ComplexApprox::new(Complex64::new(4.6, 0.0), 0.5);
        assert!(matches!(integer_reconstruct(&x), Err(crate::Error::Precision(_))));
    }

    #[test]
    fn reconstruct_nonreal() {
        let x = ComplexApprox::new(Complex64::new(3.0, 0.3), 1e-9);
        assert!(matches!(integer_reconstruct(&x), Err(crate::Error::Consistency(_))));
    }
}
