//! Riemann zeta function: Dirichlet series, its condensed alternating form
//! and reference values.

use num_traits::ToPrimitive;

use super::bernoulli::bernoulli;
use super::FunctionError;
use crate::condensation::alternate;
use crate::scalar::Scalar;
use crate::series::{PartialSums, SeriesTerms, SignPattern};

/// `(m+1)^{-z}` on the principal branch.
fn dirichlet<S: Scalar>(z: S, m: u64) -> S {
    if m == 0 {
        S::one()
    } else {
        S::real_base_pow(m as f64 + 1.0, -z)
    }
}

/// `1 / (1 - 2^{1-z})`, the factor relating `ζ(z)` to the alternating
/// (eta) series.
pub fn zeta_alt_prefactor<S: Scalar>(z: S) -> Result<S, FunctionError> {
    let w = S::one() - z;
    if w.is_zero() {
        return Err(FunctionError::Pole("zeta prefactor at z = 1"));
    }
    let denom = if w.modulus() < 0.5 {
        -w.scale(std::f64::consts::LN_2).exp_m1()
    } else {
        S::one() - S::real_base_pow(2.0, w)
    };
    Ok(S::one() / denom)
}

/// Terms of the Dirichlet series `ζ(z) = Σ_m (m+1)^{-z}`.
///
/// Real `z` is tagged monotone-nonnegative and carries the closed-form
/// condensed terms; complex `z` is tagged general.
#[derive(Debug, Clone, Copy)]
pub struct ZetaDirichlet<S> {
    z: S,
    prefactor: Option<S>,
}

pub fn zeta_dirichlet_terms<S: Scalar>(z: S) -> ZetaDirichlet<S> {
    ZetaDirichlet {
        z,
        prefactor: zeta_alt_prefactor(z).ok(),
    }
}

impl<S: Scalar> ZetaDirichlet<S> {
    pub fn z(&self) -> S {
        self.z
    }
}

impl<S: Scalar> SeriesTerms<S> for ZetaDirichlet<S> {
    fn term(&self, k: u64) -> S {
        dirichlet(self.z, k)
    }

    fn sign_pattern(&self) -> SignPattern {
        if self.z.im() == 0.0 {
            SignPattern::MonotoneNonnegative
        } else {
            SignPattern::General
        }
    }

    fn closed_form_condensed(&self, j: u64) -> Option<S> {
        if self.z.im() != 0.0 {
            return None;
        }
        self.prefactor.map(|p| p * dirichlet(self.z, j))
    }
}

/// `A_j = (j+1)^{-z} / (1 - 2^{1-z})`.
pub fn zeta_condensed_closed<S: Scalar>(z: S, j: u64) -> Result<S, FunctionError> {
    Ok(zeta_alt_prefactor(z)? * dirichlet(z, j))
}

/// The alternating series `Σ_j (-1)^j A_j` for `ζ(z)`, valid for any
/// `z ≠ 1` as a generator (it diverges for `Re z ≤ 0`).
#[derive(Debug, Clone, Copy)]
pub struct ZetaAltTerms<S> {
    z: S,
    prefactor: S,
}

pub fn zeta_alt_terms<S: Scalar>(z: S) -> Result<ZetaAltTerms<S>, FunctionError> {
    Ok(ZetaAltTerms {
        z,
        prefactor: zeta_alt_prefactor(z)?,
    })
}

impl<S: Scalar> ZetaAltTerms<S> {
    /// Magnitude-like term `A_j` without the alternating sign.
    pub fn condensed(&self, j: u64) -> S {
        self.prefactor * dirichlet(self.z, j)
    }

    /// `1/(1 - 2^{1-z})`, the common factor of every term.
    pub fn prefactor(&self) -> S {
        self.prefactor
    }

    /// The series with the prefactor removed: `Σ_k (-1)^k (k+1)^{-z}`.
    ///
    /// The transforms are quasi-linear, so accelerating these terms and
    /// multiplying by [`prefactor`](Self::prefactor) afterwards gives the
    /// same value without rounding the prefactor into every partial sum.
    pub fn unscaled(&self) -> EtaTerms<S> {
        EtaTerms { z: self.z }
    }
}

/// Terms `(-1)^k (k+1)^{-z}` of the alternating Dirichlet series.
#[derive(Debug, Clone, Copy)]
pub struct EtaTerms<S> {
    z: S,
}

impl<S: Scalar> SeriesTerms<S> for EtaTerms<S> {
    fn term(&self, k: u64) -> S {
        let a = dirichlet(self.z, k);
        if k % 2 == 0 {
            a
        } else {
            -a
        }
    }

    fn sign_pattern(&self) -> SignPattern {
        if self.z.im() == 0.0 {
            SignPattern::Alternating
        } else {
            SignPattern::General
        }
    }
}

impl<S: Scalar> SeriesTerms<S> for ZetaAltTerms<S> {
    fn term(&self, k: u64) -> S {
        let a = self.condensed(k);
        if k % 2 == 0 {
            a
        } else {
            -a
        }
    }

    fn sign_pattern(&self) -> SignPattern {
        if self.z.im() == 0.0 {
            SignPattern::Alternating
        } else {
            SignPattern::General
        }
    }
}

/// `S_0..S_n` of the alternating zeta series.
pub fn zeta_alt_partial_sums<S: Scalar>(z: S, n: u64) -> Result<PartialSums<S>, FunctionError> {
    let terms = zeta_alt_terms(z)?;
    let condensed: Vec<S> = (0..=n).map(|j| terms.condensed(j)).collect();
    Ok(alternate(&condensed))
}

/// Two-term estimate of the Dirichlet-series truncation error after `n+1`
/// terms: `(n+1)^{1-z}/(z-1) - (n+1)^{-z}/2`.
pub fn zeta_truncation_estimate(z: f64, n: u64) -> Result<f64, FunctionError> {
    if !(z > 1.0) {
        return Err(FunctionError::Domain(format!(
            "truncation estimate needs z > 1, got {z}"
        )));
    }
    let x = n as f64 + 1.0;
    Ok(x.powf(1.0 - z) / (z - 1.0) - 0.5 * x.powf(-z))
}

/// `ζ(-l)` from the Bernoulli numbers: `ζ(0) = -1/2`, `ζ(-2m) = 0`,
/// `ζ(1-2m) = -B_{2m}/(2m)`.
pub fn zeta_neg_int(l: u32) -> Result<f64, FunctionError> {
    match l {
        0 => Ok(-0.5),
        l if l % 2 == 0 => Ok(0.0),
        l if l < 60 => {
            let m2 = l as usize + 1;
            let value = -bernoulli(m2) / num_rational::BigRational::from_integer(m2.into());
            Ok(value.to_f64().unwrap_or(f64::NAN))
        }
        l => Err(FunctionError::Unsupported(l)),
    }
}

/// Euler–Maclaurin reference value of `ζ(z)` for real `z > 1`: `N` terms
/// summed directly, the tail replaced by its integral, the half endpoint
/// term and `q` Bernoulli corrections.
pub fn euler_maclaurin_zeta(z: f64, n_head: u32, q: u32) -> Result<f64, FunctionError> {
    if !(z > 1.0) || !z.is_finite() {
        return Err(FunctionError::Domain(format!(
            "Euler-Maclaurin needs z > 1, got {z}"
        )));
    }
    if n_head < 10 || !(1..=10).contains(&q) {
        return Err(FunctionError::Domain(format!(
            "Euler-Maclaurin needs N >= 10 and 1 <= q <= 10, got N={n_head}, q={q}"
        )));
    }
    // f(x) = (x+1)^{-z}; f^{(k)}(x) = (-1)^k (z)_k (x+1)^{-z-k}
    let x = n_head as f64 + 1.0;
    let fx = x.powf(-z);

    let mut corrections = 0.0;
    let mut poch = z; // (z)_{2j-1}
    let mut fact = 2.0; // (2j)!
    let mut power = fx / x; // x^{-z-2j+1}
    for j in 1..=q as usize {
        let b = bernoulli(2 * j).to_f64().unwrap_or(f64::NAN);
        corrections += b / fact * poch * power;
        let k = (2 * j) as f64;
        poch *= (z + k - 1.0) * (z + k);
        fact *= (k + 1.0) * (k + 2.0);
        power /= x * x;
    }

    let head: f64 = (0..n_head as u64).rev().map(|m| dirichlet(z, m)).sum();
    let integral = x * fx / (z - 1.0);
    Ok(corrections + 0.5 * fx + head + integral)
}
