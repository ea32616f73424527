//! Closed forms for divergent alternating series on which the transforms
//! are exact.

use super::FunctionError;
use crate::series::{SeriesTerms, SignPattern};

/// Abel-summed tail `Σ_ν (-1)^ν (n+ν+2)^l` for `l ∈ 1..=4`.
pub fn alternating_power_tail(n: i64, l: u32) -> Result<f64, FunctionError> {
    let n = n as f64;
    match l {
        1 => Ok((2.0 * n + 3.0) / 4.0),
        2 => Ok((n + 1.0) * (n + 2.0) / 2.0),
        3 => Ok((2.0 * n + 3.0) * (2.0 * n * n + 6.0 * n + 3.0) / 8.0),
        4 => Ok((n + 1.0) * (n + 2.0) * (n * n + 3.0 * n + 1.0) / 2.0),
        l => Err(FunctionError::Unsupported(l)),
    }
}

/// `l! · 1F0(l+1; ; -1) = Σ_j (-1)^j (j+1)_l = l! / 2^{l+1}`.
pub fn one_f_zero_value(l: u32) -> Result<f64, FunctionError> {
    if l > 20 {
        return Err(FunctionError::Unsupported(l));
    }
    let fact: f64 = (1..=l).map(f64::from).product();
    Ok(fact / 2f64.powi(l as i32 + 1))
}

/// Terms `(-1)^j (j+1)_l` of the divergent series behind
/// [`one_f_zero_value`].
#[derive(Debug, Clone, Copy)]
pub struct OneFZeroTerms {
    l: u32,
}

pub fn one_f_zero_terms(l: u32) -> Result<OneFZeroTerms, FunctionError> {
    if l > 20 {
        return Err(FunctionError::Unsupported(l));
    }
    Ok(OneFZeroTerms { l })
}

impl SeriesTerms<f64> for OneFZeroTerms {
    fn term(&self, k: u64) -> f64 {
        let base = k as f64 + 1.0;
        let poch: f64 = (0..self.l).map(|i| base + i as f64).product();
        if k % 2 == 0 {
            poch
        } else {
            -poch
        }
    }

    fn sign_pattern(&self) -> SignPattern {
        SignPattern::Alternating
    }
}
