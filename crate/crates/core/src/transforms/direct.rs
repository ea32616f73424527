//! Explicit binomial-sum evaluation, used for cross-validation.

use super::{
    check_beta, TransformError, TransformValue, Weights, MAX_DIRECT_ORDER, STABILITY_THRESHOLD,
};
use crate::scalar::Scalar;

/// A general weighted transform: positive weights `w(k, β+n)` and shift β.
pub struct WeightedTransformSpec<W> {
    pub beta: f64,
    pub weight: W,
}

impl<W: Fn(u32, f64) -> f64> WeightedTransformSpec<W> {
    pub fn new(beta: f64, weight: W) -> Self {
        Self { beta, weight }
    }
}

fn weighted_ratio<S: Scalar>(
    s: &[S],
    omega: &[S],
    k: u32,
    n: usize,
    weight: impl Fn(u32) -> Result<f64, TransformError>,
) -> Result<TransformValue<S>, TransformError> {
    if k > MAX_DIRECT_ORDER {
        return Err(TransformError::OrderTooHigh(k));
    }
    let needed = n + k as usize + 1;
    for len in [s.len(), omega.len()] {
        if len < needed {
            return Err(TransformError::InsufficientData { needed, got: len });
        }
    }
    if let Some(j) = (n..needed).find(|&i| omega[i].is_zero()) {
        return Ok(TransformValue::terminated(s[j]));
    }

    let mut num = S::zero();
    let mut den = S::zero();
    let mut largest = 0.0f64;
    let mut binom = 1.0f64;
    for j in 0..=k {
        let c = weight(j)? * binom;
        let c = if j % 2 == 0 { c } else { -c };
        let summand = S::from_f64(c) / omega[n + j as usize];
        largest = largest.max(summand.modulus());
        den += summand;
        num += summand * s[n + j as usize];
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    Ok(TransformValue {
        value: num / den,
        unstable: den.modulus() < STABILITY_THRESHOLD * largest,
        terminated: false,
    })
}

/// `T_k^(n)` for arbitrary positive weights.
pub fn weighted_transform_direct<S, W>(
    spec: &WeightedTransformSpec<W>,
    s: &[S],
    omega: &[S],
    k: u32,
    n: usize,
) -> Result<TransformValue<S>, TransformError>
where
    S: Scalar,
    W: Fn(u32, f64) -> f64,
{
    check_beta(spec.beta)?;
    let x = spec.beta + n as f64;
    let scale = (spec.weight)(k, x + k as f64);
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(TransformError::NonPositiveWeight {
            k,
            index: (n + k as usize) as u64,
            value: scale,
        });
    }
    weighted_ratio(s, omega, k, n, |j| {
        let w = (spec.weight)(k, x + j as f64);
        if w > 0.0 && w.is_finite() {
            Ok(w / scale)
        } else {
            Err(TransformError::NonPositiveWeight {
                k,
                index: (n + j as usize) as u64,
                value: w,
            })
        }
    })
}

/// Levin's transformation `L_k^(n)(β, s, ω)` by its explicit sum.
pub fn levin_direct<S: Scalar>(
    beta: f64,
    s: &[S],
    omega: &[S],
    k: u32,
    n: usize,
) -> Result<TransformValue<S>, TransformError> {
    check_beta(beta)?;
    let x = beta + n as f64;
    weighted_ratio(s, omega, k, n, |j| Ok(Weights::Levin.normalized(k, x, j)))
}

/// Weniger's transformation `S_k^(n)(β, s, ω)` by its explicit sum.
pub fn weniger_direct<S: Scalar>(
    beta: f64,
    s: &[S],
    omega: &[S],
    k: u32,
    n: usize,
) -> Result<TransformValue<S>, TransformError> {
    check_beta(beta)?;
    let x = beta + n as f64;
    weighted_ratio(s, omega, k, n, |j| Ok(Weights::Weniger.normalized(k, x, j)))
}
