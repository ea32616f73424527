//! Double-double arithmetic used inside the transform recursions.
//!
//! A [`Dd`] carries an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`,
//! giving about 106 bits of significand. Transform tables accumulate many
//! weighted differences with heavy cancellation; carrying them in double
//! double keeps the final quotient accurate to a few ulp of binary64.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub(crate) const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub(crate) fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 {
            return Dd::from(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

/// A real or complex value in double-double precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Wide {
    re: Dd,
    im: Dd,
}

impl Wide {
    pub(crate) const ZERO: Wide = Wide {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub(crate) fn from_scalar<S: Scalar>(x: S) -> Wide {
        Wide {
            re: x.re().into(),
            im: x.im().into(),
        }
    }

    pub(crate) fn to_scalar<S: Scalar>(self) -> S {
        S::from_parts(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn modulus(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub(crate) fn scale(self, c: Dd) -> Wide {
        Wide {
            re: self.re * c,
            im: self.im * c,
        }
    }

    pub(crate) fn recip(self) -> Wide {
        Wide {
            re: Dd::ONE,
            im: Dd::ZERO,
        } / self
    }
}

impl Add for Wide {
    type Output = Wide;
    fn add(self, b: Wide) -> Wide {
        Wide {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for Wide {
    type Output = Wide;
    fn sub(self, b: Wide) -> Wide {
        Wide {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for Wide {
    type Output = Wide;
    fn mul(self, b: Wide) -> Wide {
        if self.im.hi == 0.0 && b.im.hi == 0.0 {
            return Wide {
                re: self.re * b.re,
                im: Dd::ZERO,
            };
        }
        Wide {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for Wide {
    type Output = Wide;
    fn div(self, b: Wide) -> Wide {
        if b.im.hi == 0.0 {
            return Wide {
                re: self.re / b.re,
                im: self.im / b.re,
            };
        }
        // rescale by a power of two so |b|² cannot overflow
        let big = b.re.hi.abs().max(b.im.hi.abs());
        let s = 2f64.powi(-(big.log2().floor() as i32));
        let (br, bi) = (b.re.mul_f64(s), b.im.mul_f64(s));
        let (ar, ai) = (self.re.mul_f64(s), self.im.mul_f64(s));
        let d = br * br + bi * bi;
        Wide {
            re: (ar * br + ai * bi) / d,
            im: (ai * br - ar * bi) / d,
        }
    }
}
