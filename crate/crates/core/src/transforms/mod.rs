//! Levin-type sequence transformations.
//!
//! All transforms here are weighted difference ratios
//!
//! ```text
//!            Σ_j (-1)^j C(k,j) w_k(n+j) s_{n+j} / ω_{n+j}
//! T_k^(n) = ---------------------------------------------
//!            Σ_j (-1)^j C(k,j) w_k(n+j) / ω_{n+j}
//! ```
//!
//! with power weights (Levin) or Pochhammer weights (Weniger). Paired with
//! the Smith–Ford remainder estimates `ω_n = Δs_n` they become the `d` and
//! `δ` transformations.

mod direct;
mod euler;
mod recursive;

use thiserror::Error;

pub use direct::{levin_direct, weighted_transform_direct, weniger_direct, WeightedTransformSpec};
pub use euler::euler_transform;
pub use recursive::{levin_recursive, weniger_recursive, DiagonalAccelerator, RecursiveTables};

use crate::scalar::Scalar;
use crate::wide::Dd;

/// Relative size below which a denominator is flagged as unstable.
pub const STABILITY_THRESHOLD: f64 = 1e-12;

/// Highest order accepted by the direct (binomial-sum) formulas.
pub const MAX_DIRECT_ORDER: u32 = 60;

/// Weight family of a Levin-type transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weights {
    /// Power weights `(β+n)^{k-1}`: Levin `L`, or `d` with Smith–Ford estimates.
    Levin,
    /// Pochhammer weights `(β+n)_{k-1}`: Weniger `S`, or `δ`.
    Weniger,
}

impl Weights {
    /// `w_k(n+j) / w_k(n+k)` for `x = β+n`.
    pub(crate) fn normalized(self, k: u32, x: f64, j: u32) -> f64 {
        if k <= 1 {
            return 1.0;
        }
        match self {
            Self::Levin => ((x + j as f64) / (x + k as f64)).powi(k as i32 - 1),
            Self::Weniger => (0..k - 1)
                .map(|i| (x + (j + i) as f64) / (x + (k + i) as f64))
                .product(),
        }
    }

    /// Coefficient `c` of the three-term recursion
    /// `T_{k+1}^(n) = T_k^(n+1) - c * T_k^(n)` at `x = β+n`, in double-double.
    pub(crate) fn recursion_coefficient(self, k: u32, x: f64) -> Dd {
        if k == 0 {
            return Dd::ONE;
        }
        let x = Dd::from(x);
        let kf = Dd::from(k as f64);
        let one = Dd::ONE;
        match self {
            Self::Levin => x / (x + kf + one) * ((x + kf) / (x + kf + one)).powi(k - 1),
            Self::Weniger => {
                let two_k = kf + kf;
                (x + kf) * (x + kf - one) / ((x + two_k) * (x + two_k - one))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("need {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("beta must be positive and finite, got {0}")]
    InvalidBeta(f64),
    #[error("weight w_{k}(n={index}) = {value} is not positive")]
    NonPositiveWeight { k: u32, index: u64, value: f64 },
    #[error("order {0} exceeds the direct-formula limit")]
    OrderTooHigh(u32),
}

pub(crate) fn check_beta(beta: f64) -> Result<(), TransformError> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(TransformError::InvalidBeta(beta))
    }
}

/// One transform value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue<S> {
    pub value: S,
    /// The denominator is smaller than `STABILITY_THRESHOLD` times the
    /// size of its summands.
    pub unstable: bool,
    /// A remainder estimate in range was exactly zero, so the series has
    /// terminated and `value` is the matching partial sum.
    pub terminated: bool,
}

impl<S: Scalar> TransformValue<S> {
    pub(crate) fn terminated(value: S) -> Self {
        Self {
            value,
            unstable: false,
            terminated: true,
        }
    }
}

/// Triangular table `T_k^(n)` for `k + n ≤ m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformTable<S> {
    rows: Vec<Vec<TransformValue<S>>>,
}

impl<S: Scalar> TransformTable<S> {
    pub(crate) fn from_rows(rows: Vec<Vec<TransformValue<S>>>) -> Self {
        Self { rows }
    }

    /// Highest order `m` in the table.
    pub fn max_order(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize, n: usize) -> Option<&TransformValue<S>> {
        self.rows.get(k)?.get(n)
    }

    pub fn value(&self, k: usize, n: usize) -> Option<S> {
        self.get(k, n).map(|t| t.value)
    }

    /// Row `k`: `T_k^(0), T_k^(1), …`.
    pub fn row(&self, k: usize) -> &[TransformValue<S>] {
        &self.rows[k]
    }

    /// The diagonal path `T_0^(0), T_1^(0), …, T_m^(0)`.
    pub fn diagonal(&self) -> Vec<TransformValue<S>> {
        self.rows.iter().map(|row| row[0]).collect()
    }
}

/// Smith–Ford remainder estimates `ω_n = t_{n+1}` from the terms `t_j` of an
/// alternating series, so that `ω_n = s_{n+1} - s_n`.
pub fn smith_ford_estimates<S: Scalar>(terms: &[S]) -> Vec<S> {
    terms.iter().skip(1).copied().collect()
}

/// Smith–Ford estimates `ω_n = (-1)^{n+1} A_{n+1}` from condensed terms.
pub fn smith_ford_from_condensed<S: Scalar>(condensed: &[S]) -> Vec<S> {
    condensed
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &a)| if j % 2 == 0 { a } else { -a })
        .collect()
}
