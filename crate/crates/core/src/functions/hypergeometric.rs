//! Terms of the generalized hypergeometric series
//! `p+1 F p (α; β; z) = Σ_m Π(α_i)_m / Π(β_j)_m · z^m / m!`.

use super::gamma::stirling_correction;
use super::power::{check_complement, Power};
use super::FunctionError;
use crate::series::{SeriesTerms, SignPattern};

#[derive(Debug, Clone, PartialEq)]
pub struct HypParams {
    /// `α_1..α_{p+1}`.
    pub numerator: Vec<f64>,
    /// `β_1..β_p`.
    pub denominator: Vec<f64>,
    pub z: f64,
}

impl HypParams {
    pub fn validate(&self) -> Result<(), FunctionError> {
        if self.numerator.len() != self.denominator.len() + 1 {
            return Err(FunctionError::Domain(format!(
                "expected p+1 numerator and p denominator parameters, got {} and {}",
                self.numerator.len(),
                self.denominator.len()
            )));
        }
        if let Some(x) = self
            .numerator
            .iter()
            .chain(&self.denominator)
            .find(|x| !x.is_finite())
        {
            return Err(FunctionError::Domain(format!(
                "parameter {x} is not finite"
            )));
        }
        for (index, &b) in self.denominator.iter().enumerate() {
            if b <= 0.0 && b == b.round() {
                return Err(FunctionError::ParameterPole { index, value: b });
            }
        }
        if !(self.z.abs() <= 1.0) {
            return Err(FunctionError::Domain(format!(
                "argument must satisfy |z| <= 1, got {}",
                self.z
            )));
        }
        Ok(())
    }
}

/// Term generator for `p+1 F p`, O(1) per term at any index.
///
/// Terms up to an anchor index `M0` are tabulated by the product
/// recurrence. Beyond it the ratio `a(m)/a(M0)` is formed from Stirling
/// expansions of the Gamma functions in which the large `(m - 1/2) ln m - m`
/// parts cancel analytically, so no large logarithms are subtracted.
#[derive(Debug, Clone)]
pub struct PfqTerms {
    params: HypParams,
    head: Vec<f64>,
    /// `(σ, a)` with `σ = +1` for numerator parameters and `-1` for
    /// denominator parameters and the `m!` factor.
    signed: Vec<(f64, f64)>,
    exponent: f64,
    anchor_g: f64,
    pattern: SignPattern,
    power: Power,
}

pub fn pfq_terms(params: HypParams) -> Result<PfqTerms, FunctionError> {
    let power = Power::new(params.z);
    build(params, power)
}

/// The series at `z = 1 - w`, given the complement `w`, for arguments too
/// close to 1 to be represented accurately themselves. `params.z` is
/// ignored and replaced by `1 - w`.
pub fn pfq_terms_complement(mut params: HypParams, w: f64) -> Result<PfqTerms, FunctionError> {
    check_complement(w)?;
    let power = Power::from_complement(w);
    params.z = power.base();
    build(params, power)
}

fn build(params: HypParams, power: Power) -> Result<PfqTerms, FunctionError> {
    params.validate()?;
    let largest = params
        .numerator
        .iter()
        .chain(&params.denominator)
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let m0 = 64 + (2.0 * largest).ceil() as usize;

    let mut head = Vec::with_capacity(m0 + 1);
    let mut a = 1.0;
    head.push(a);
    for m in 0..m0 {
        let mf = m as f64;
        let num: f64 = params.numerator.iter().map(|x| x + mf).product();
        let den: f64 = params.denominator.iter().map(|x| x + mf).product();
        a *= num / den / (mf + 1.0);
        head.push(a);
    }
    for (m, t) in head.iter_mut().enumerate() {
        *t *= power.pow(m as u64);
    }

    let signed: Vec<(f64, f64)> = params
        .numerator
        .iter()
        .map(|&x| (1.0, x))
        .chain(params.denominator.iter().map(|&x| (-1.0, x)))
        .chain(std::iter::once((-1.0, 1.0)))
        .collect();
    let exponent = signed.iter().map(|(s, x)| s * x).sum();

    let pattern = if params.z >= 0.0 {
        if head.iter().all(|&t| t >= 0.0) {
            SignPattern::MonotoneNonnegative
        } else if head.iter().all(|&t| t <= 0.0) {
            SignPattern::MonotoneNonpositive
        } else {
            SignPattern::General
        }
    } else {
        let unsigned = head
            .iter()
            .enumerate()
            .map(|(m, &t)| if m % 2 == 0 { t } else { -t });
        if unsigned.clone().all(|t| t >= 0.0) || unsigned.clone().all(|t| t <= 0.0) {
            SignPattern::Alternating
        } else {
            SignPattern::General
        }
    };

    let mut terms = PfqTerms {
        params,
        head,
        signed,
        exponent,
        anchor_g: 0.0,
        pattern,
        power,
    };
    terms.anchor_g = terms.g(m0 as f64);
    Ok(terms)
}

impl PfqTerms {
    pub fn params(&self) -> &HypParams {
        &self.params
    }

    fn anchor(&self) -> usize {
        self.head.len() - 1
    }

    /// `Σ σ [(m + a - 1/2) ln(1 + a/m) + corr(m + a)]`.
    fn g(&self, m: f64) -> f64 {
        self.signed
            .iter()
            .map(|&(s, a)| s * ((m + a - 0.5) * (a / m).ln_1p() + stirling_correction(m + a)))
            .sum()
    }
}

impl SeriesTerms<f64> for PfqTerms {
    fn term(&self, k: u64) -> f64 {
        let m0 = self.anchor();
        if k <= m0 as u64 {
            return self.head[k as usize];
        }
        let base = self.head[m0];
        let z = self.params.z;
        if base == 0.0 || z == 0.0 {
            return 0.0;
        }
        let zpow = self.power.pow(k - m0 as u64);
        if zpow == 0.0 {
            return 0.0;
        }
        let m = k as f64;
        let log_ratio = self.g(m) - self.anchor_g + self.exponent * (m / m0 as f64).ln();
        base * zpow * log_ratio.exp()
    }

    fn sign_pattern(&self) -> SignPattern {
        self.pattern
    }
}
