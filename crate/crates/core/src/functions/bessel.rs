//! The model series `Σ_l (2l+1) j_l(i r y) h_l^(1)(i y)` built from
//! products of spherical Bessel and Hankel functions.
//!
//! With `j_l(ix) = (ix)^l / (2l+1)!! · Ĵ_l(x)` and
//! `h_l^(1)(iy) = (-i)^{l+1} e^{-y}/(iy) · Σ_k t_k`,
//! `t_k = (l+k)! / (k! (l-k)! (2y)^k)`, the phases cancel and
//!
//! ```text
//! a(l) = -(r^l / y) · Ĵ_l(r y) · Ĥ_l(y),    Ĥ_l(y) = e^{-y} Σ_k t_k / t_l
//! ```
//!
//! Both scaled factors tend to 1 as `l → ∞`, so no intermediate overflows
//! at any index.

use super::power::{check_complement, Power};
use super::FunctionError;
use crate::series::{SeriesTerms, SignPattern};

/// Relative size at which the scaled power series are truncated.
const SERIES_EPS: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselSumParams {
    pub r: f64,
    pub y: f64,
}

impl BesselSumParams {
    pub fn validate(&self) -> Result<(), FunctionError> {
        if !(self.r > 0.0 && self.r < 1.0) {
            return Err(FunctionError::Domain(format!(
                "need 0 < r < 1, got r = {}",
                self.r
            )));
        }
        if !(self.y > 0.0) || !self.y.is_finite() {
            return Err(FunctionError::Domain(format!(
                "need y > 0, got y = {}",
                self.y
            )));
        }
        Ok(())
    }
}

/// `Ĵ_l(x) = Σ_k (x²/2)^k / (k! Π_{i=1..k} (2l+2i+1))`.
fn scaled_j(l: f64, x: f64) -> f64 {
    let h = 0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= h / (k * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        if term < SERIES_EPS * sum {
            return sum;
        }
        k += 1.0;
    }
}

/// `Ĥ_l(y) = e^{-y} Σ_{k=0..l} t_k / t_l`, summed downward from the
/// dominant `k = l` term with `t_{k-1}/t_k = 2yk / ((l+k)(l-k+1))`.
fn scaled_h(l: f64, y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = l;
    while k >= 1.0 {
        term *= 2.0 * y * k / ((l + k) * (l - k + 1.0));
        sum += term;
        if term < SERIES_EPS * sum {
            break;
        }
        k -= 1.0;
    }
    (-y).exp() * sum
}

/// The scaled factors `(Ĵ_l(ry), Ĥ_l(y))`.
pub fn bessel_scaled_factors(params: &BesselSumParams, l: u64) -> (f64, f64) {
    let lf = l as f64;
    (scaled_j(lf, params.r * params.y), scaled_h(lf, params.y))
}

#[derive(Debug, Clone, Copy)]
pub struct BesselTerms {
    params: BesselSumParams,
    power: Power,
}

pub fn bessel_product_terms(params: BesselSumParams) -> Result<BesselTerms, FunctionError> {
    params.validate()?;
    Ok(BesselTerms {
        params,
        power: Power::new(params.r),
    })
}

/// The series at `r = 1 - w`, given the complement `w`. Near `r = 1` the
/// sum is dominated by `r^l` at large `l`, so `w` fixes it far more
/// accurately than the binary value of `r`.
pub fn bessel_product_terms_complement(w: f64, y: f64) -> Result<BesselTerms, FunctionError> {
    check_complement(w)?;
    let power = Power::from_complement(w);
    let mut terms = bessel_product_terms(BesselSumParams { r: power.base(), y })?;
    terms.power = power;
    Ok(terms)
}

impl SeriesTerms<f64> for BesselTerms {
    fn term(&self, k: u64) -> f64 {
        let y = self.params.y;
        let rl = self.power.pow(k);
        if rl == 0.0 {
            return -0.0;
        }
        let (j, h) = bessel_scaled_factors(&self.params, k);
        debug_assert!(j.is_finite() && h.is_finite() && j > 0.0 && h > 0.0);
        -(rl / y) * j * h
    }

    fn sign_pattern(&self) -> SignPattern {
        SignPattern::MonotoneNonpositive
    }
}

/// `e^{-y(1-r)} / (y(1-r))`; the model series sums to the negative of this.
pub fn bessel_sum_closed_form(params: &BesselSumParams) -> Result<f64, FunctionError> {
    params.validate()?;
    let t = params.y * (1.0 - params.r);
    if !(t > 0.0) {
        return Err(FunctionError::Pole("y (1 - r) = 0"));
    }
    Ok((-t).exp() / t)
}

/// [`bessel_sum_closed_form`] at `r = 1 - w`.
pub fn bessel_sum_closed_form_complement(w: f64, y: f64) -> Result<f64, FunctionError> {
    check_complement(w)?;
    bessel_sum_closed_form(&BesselSumParams { r: 1.0 - w, y })?;
    let t = y * w;
    Ok((-t).exp() / t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const P: BesselSumParams = BesselSumParams { r: 0.9999, y: 0.7 };

    #[test]
    fn order_zero_closed_form() {
        let p = BesselSumParams { r: 0.5, y: 1.0 };
        let t = bessel_product_terms(p).unwrap();
        let expected = -(0.5f64).sinh() * (-1.0f64).exp() / 0.5;
        assert!((t.term(0) - expected).abs() < 1e-16);
        assert!((t.term(0) + 0.383_401).abs() < 1e-6);
    }

    #[test]
    fn order_one_against_complex_closed_forms() {
        // j_1(z) = sin z/z² - cos z/z, h_1(z) = -e^{iz}(z + i)/z²
        let i = Complex64::i();
        for p in [P, BesselSumParams { r: 0.3, y: 2.5 }] {
            let x = i * (p.r * p.y);
            let w = i * p.y;
            let j1 = x.sin() / (x * x) - x.cos() / x;
            let h1 = -(i * w).exp() * (w + i) / (w * w);
            let prod = 3.0 * j1 * h1;
            assert!(prod.im.abs() < 1e-12 * prod.re.abs());
            let got = bessel_product_terms(p).unwrap().term(1);
            assert!((got - prod.re).abs() < 1e-14 * got.abs(), "{got} vs {prod}");
        }
    }

    #[test]
    fn leading_asymptotics() {
        let t = bessel_product_terms(P).unwrap();
        for l in [10_000u64, 100_000, 10_000_000] {
            let lead = -P.r.powf(l as f64) / P.y;
            if lead == 0.0 {
                assert_eq!(t.term(l), 0.0);
                continue;
            }
            let ratio = t.term(l) / lead;
            assert!((ratio - 1.0).abs() < 10.0 / l as f64, "l={l} ratio={ratio}");
        }
    }

    #[test]
    fn scaled_factors_are_bounded_and_tend_to_one() {
        let mut prev = f64::INFINITY;
        for l in [2u64, 4, 8, 16, 64, 256, 4096, 1 << 20, 1 << 40] {
            let (j, h) = bessel_scaled_factors(&P, l);
            assert!(j > 0.5 && j < 2.0 && h > 0.5 && h < 2.0, "l={l}");
            let resid = (j - 1.0).abs().max((h - 1.0).abs());
            // residual falls like 1/l; C = 1 is comfortably above the fitted constant
            assert!(resid <= 1.0 / l as f64, "l={l} resid={resid}");
            assert!(resid < prev);
            prev = resid;
        }
    }

    #[test]
    fn first_condensed_term_matches_table_start() {
        // S_0 = A_0 = Σ_k 2^k a(2^k - 1)
        let t = bessel_product_terms(P).unwrap();
        let a0: f64 = (0..40)
            .map(|k| 2f64.powi(k) * t.term((1u64 << k) - 1))
            .sum();
        // reference from -(2l+1) I_{l+1/2}(ry) K_{l+1/2}(y) / sqrt(r y²) at 30 digits,
        // with r the binary64 value of 0.9999
        assert!((a0 + 20_608.452_089_469_033).abs() < 1e-15 * a0.abs());
        // with decimal r the leading digits are 0.206084520894668e5
        assert!((a0 * 1e-5 + 0.206_084_520_894_668).abs() < 5e-13);
        // from the complement 1 - r = 1e-4, against the same reference
        // evaluated at decimal r
        let t = bessel_product_terms_complement(1e-4, 0.7).unwrap();
        let a0: f64 = (0..40)
            .map(|k| 2f64.powi(k) * t.term((1u64 << k) - 1))
            .sum();
        assert!(
            (a0 + 20_608.452_089_466_763).abs() < 1e-15 * a0.abs(),
            "{a0}"
        );
    }

    #[test]
    fn closed_form() {
        let v = bessel_sum_closed_form(&P).unwrap();
        // 0.9999 is not representable; the binary64 value of r shifts the
        // decimal result 14284.71432071347 by about 1.1e-13 relative
        assert!((v - 14_284.714_320_715_043).abs() < 1e-10);
        assert!((v - 14_284.714_320_713_47).abs() < 2e-13 * v);
        let v = bessel_sum_closed_form(&BesselSumParams { r: 0.5, y: 1.0 }).unwrap();
        assert!((v - 1.213_061_319_425_267).abs() < 1e-15);
        assert!(bessel_sum_closed_form(&BesselSumParams { r: 1.0, y: 1.0 }).is_err());
        let v = bessel_sum_closed_form_complement(1e-4, 0.7).unwrap();
        assert!((v - 14_284.714_320_713_469).abs() < 2e-12, "{v}");
        assert!(bessel_sum_closed_form_complement(0.0, 0.7).is_err());
        assert!(bessel_product_terms(BesselSumParams { r: 0.5, y: 0.0 }).is_err());
    }
}
