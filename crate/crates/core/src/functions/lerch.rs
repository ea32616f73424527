//! Lerch transcendent `Φ(z, s, α) = Σ_n z^n / (α+n)^s` and polylogarithms.

use super::power::{check_complement, Power};
use super::FunctionError;
use crate::series::{SeriesTerms, SignPattern};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchParams {
    pub z: f64,
    pub s: f64,
    pub alpha: f64,
}

impl LerchParams {
    pub fn validate(&self) -> Result<(), FunctionError> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(FunctionError::Domain(format!(
                "Lerch alpha must be positive, got {}",
                self.alpha
            )));
        }
        if !(self.z.abs() <= 1.0) {
            return Err(FunctionError::Domain(format!(
                "Lerch argument must satisfy |z| <= 1, got {}",
                self.z
            )));
        }
        if !self.s.is_finite() {
            return Err(FunctionError::Domain(format!(
                "Lerch s must be finite, got {}",
                self.s
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LerchTerms {
    params: LerchParams,
    power: Power,
}

pub fn lerch_terms(params: LerchParams) -> Result<LerchTerms, FunctionError> {
    params.validate()?;
    Ok(LerchTerms {
        params,
        power: Power::new(params.z),
    })
}

/// `Φ(1 - w, s, α)` from the complement `w`, for arguments too close to 1
/// to be represented accurately themselves.
pub fn lerch_terms_complement(w: f64, s: f64, alpha: f64) -> Result<LerchTerms, FunctionError> {
    check_complement(w)?;
    let power = Power::from_complement(w);
    let mut terms = lerch_terms(LerchParams {
        z: power.base(),
        s,
        alpha,
    })?;
    terms.power = power;
    Ok(terms)
}

impl LerchTerms {
    pub fn params(&self) -> &LerchParams {
        &self.params
    }
}

impl SeriesTerms<f64> for LerchTerms {
    fn term(&self, k: u64) -> f64 {
        let p = &self.params;
        self.power.pow(k) / (p.alpha + k as f64).powf(p.s)
    }

    fn sign_pattern(&self) -> SignPattern {
        if self.params.z < 0.0 {
            SignPattern::Alternating
        } else {
            SignPattern::MonotoneNonnegative
        }
    }
}

/// Terms `z^{k+1} / (k+1)^s` of `Li_s(z) = z Φ(z, s, 1)`.
#[derive(Debug, Clone, Copy)]
pub struct PolylogTerms {
    s: f64,
    z: f64,
    power: Power,
}

pub fn polylog_terms(s: f64, z: f64) -> Result<PolylogTerms, FunctionError> {
    LerchParams { z, s, alpha: 1.0 }.validate()?;
    Ok(PolylogTerms {
        s,
        z,
        power: Power::new(z),
    })
}

/// `Li_s(1 - w)` from the complement `w`.
pub fn polylog_terms_complement(s: f64, w: f64) -> Result<PolylogTerms, FunctionError> {
    check_complement(w)?;
    let power = Power::from_complement(w);
    let mut terms = polylog_terms(s, power.base())?;
    terms.power = power;
    Ok(terms)
}

impl SeriesTerms<f64> for PolylogTerms {
    fn term(&self, k: u64) -> f64 {
        let n = k.saturating_add(1);
        self.power.pow(n) / (n as f64).powf(self.s)
    }

    fn sign_pattern(&self) -> SignPattern {
        if self.z < 0.0 {
            SignPattern::Alternating
        } else {
            SignPattern::MonotoneNonnegative
        }
    }
}
