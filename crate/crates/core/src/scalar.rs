//! Real and complex binary64 scalars.
//!
//! Every series, transform and result in the crate is generic over [`Scalar`],
//! which is implemented for `f64` and [`Complex64`]. All arithmetic is plain
//! IEEE-754 double precision.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use num_complex::Complex64;

/// A real or complex double-precision value.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;

    /// Builds a value from real and imaginary parts; reals drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;

    /// Absolute value for reals, magnitude for complex numbers.
    fn modulus(self) -> f64;

    fn re(self) -> f64;
    fn im(self) -> f64;

    fn is_finite(self) -> bool;

    /// Multiplies by a real factor.
    fn scale(self, factor: f64) -> Self;

    fn exp(self) -> Self;

    /// `exp(self) - 1`, accurate for small arguments.
    fn exp_m1(self) -> Self;

    /// `base^exponent` for a positive real base, principal branch.
    fn real_base_pow(base: f64, exponent: Self) -> Self;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }

    fn modulus(self) -> f64 {
        self.abs()
    }

    fn re(self) -> f64 {
        self
    }

    fn im(self) -> f64 {
        0.0
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn scale(self, factor: f64) -> Self {
        self * factor
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }

    fn real_base_pow(base: f64, exponent: Self) -> Self {
        base.powf(exponent)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }

    fn modulus(self) -> f64 {
        self.norm()
    }

    fn re(self) -> f64 {
        self.re
    }

    fn im(self) -> f64 {
        self.im
    }

    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn scale(self, factor: f64) -> Self {
        Complex64::new(self.re * factor, self.im * factor)
    }

    fn exp(self) -> Self {
        Complex64::exp(self)
    }

    fn exp_m1(self) -> Self {
        // exp(x + iy) - 1 = expm1(x) cos y - 2 sin^2(y/2) + i exp(x) sin y
        let (x, y) = (self.re, self.im);
        let half_sin = (0.5 * y).sin();
        let re = x.exp_m1() * y.cos() - 2.0 * half_sin * half_sin;
        let im = x.exp() * y.sin();
        Complex64::new(re, im)
    }

    fn real_base_pow(base: f64, exponent: Self) -> Self {
        if exponent.im == 0.0 {
            return Complex64::new(base.powf(exponent.re), 0.0);
        }
        (exponent * base.ln()).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_of_zero_is_zero() {
        assert_eq!(<f64 as Scalar>::zero().modulus(), 0.0);
        assert_eq!(<Complex64 as Scalar>::zero().modulus(), 0.0);
        assert_eq!((-2.5f64).modulus(), 2.5);
        assert_eq!(Complex64::new(3.0, -4.0).modulus(), 5.0);
    }

    #[test]
    fn complex_exp_m1_matches_real_path_and_small_arguments() {
        let z = Complex64::new(1e-10, 0.0);
        assert_eq!(z.exp_m1().re, 1e-10f64.exp_m1());
        let w = Complex64::new(0.3, -1.2);
        let direct = w.exp() - Complex64::new(1.0, 0.0);
        assert!((w.exp_m1() - direct).norm() < 1e-15);
        let tiny = Complex64::new(1e-12, 2e-12);
        let e = tiny.exp_m1();
        // z + z^2/2 = (1e-12 - 1.5e-24) + (2e-12 + 2e-24)i
        assert!((e.re - (1e-12 - 1.5e-24)).abs() < 1e-27);
        assert!((e.im - (2e-12 + 2e-24)).abs() < 1e-27);
    }

    #[test]
    fn real_base_pow_uses_principal_branch() {
        let z = Complex64::new(0.5, 13.7);
        let p = Complex64::real_base_pow(2.0, -z);
        let expected = Complex64::from_polar(2f64.powf(-0.5), -13.7 * 2f64.ln());
        assert!((p - expected).norm() < 1e-15);
        assert_eq!(f64::real_base_pow(4.0, -2.0), 0.0625);
    }
}
