//! Three-term recursions for the Levin and Weniger transformations.
//!
//! Numerators and denominators obey the same recursion
//! `X_{k+1}^(n) = X_k^(n+1) - c_k(β+n) X_k^(n)` started from `s_n/ω_n` and
//! `1/ω_n`. Alongside the denominator the sum of absolute summands is
//! propagated with `|c|`, which drives the stability flag.
//!
//! Numerators and denominators are carried in double-double precision and
//! rounded once, at the final quotient.

use super::{
    check_beta, TransformError, TransformTable, TransformValue, Weights, STABILITY_THRESHOLD,
};
use crate::scalar::Scalar;
use crate::wide::Wide;

/// Numerator, denominator and value tables of a recursive evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursiveTables<S> {
    /// `numerator[k][n]` for `k + n ≤ m`.
    pub numerator: Vec<Vec<S>>,
    pub denominator: Vec<Vec<S>>,
    pub values: TransformTable<S>,
}

fn seeds<S: Scalar>(s: S, omega: S) -> (Wide, Wide, f64) {
    if omega.is_zero() {
        // terminated series; the entry's value is overridden downstream
        (Wide::ZERO, Wide::ZERO, 0.0)
    } else {
        let inv = Wide::from_scalar(omega).recip();
        (Wide::from_scalar(s) * inv, inv, inv.modulus())
    }
}

fn entry<S: Scalar>(num: Wide, den: Wide, abs: f64) -> TransformValue<S> {
    TransformValue {
        value: (num / den).to_scalar(),
        unstable: den.modulus() < STABILITY_THRESHOLD * abs,
        terminated: false,
    }
}

fn narrow<S: Scalar>(table: &[Vec<Wide>]) -> Vec<Vec<S>> {
    table
        .iter()
        .map(|row| row.iter().map(|x| x.to_scalar()).collect())
        .collect()
}

fn tables<S: Scalar>(
    weights: Weights,
    beta: f64,
    s: &[S],
    omega: &[S],
    max_order: usize,
) -> Result<RecursiveTables<S>, TransformError> {
    check_beta(beta)?;
    let m = max_order;
    for len in [s.len(), omega.len()] {
        if len < m + 1 {
            return Err(TransformError::InsufficientData {
                needed: m + 1,
                got: len,
            });
        }
    }

    // first index ≥ n with ω exactly zero
    let mut next_zero = vec![None; m + 2];
    for n in (0..=m).rev() {
        next_zero[n] = if omega[n].is_zero() {
            Some(n)
        } else {
            next_zero[n + 1]
        };
    }

    let mut num = Vec::with_capacity(m + 1);
    let mut den = Vec::with_capacity(m + 1);
    let mut abs = Vec::with_capacity(m + 1);
    let (n0, d0, a0): (Vec<Wide>, Vec<Wide>, Vec<f64>) = {
        let mut n0 = Vec::with_capacity(m + 1);
        let mut d0 = Vec::with_capacity(m + 1);
        let mut a0 = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let (x, y, z) = seeds(s[i], omega[i]);
            n0.push(x);
            d0.push(y);
            a0.push(z);
        }
        (n0, d0, a0)
    };
    num.push(n0);
    den.push(d0);
    abs.push(a0);
    for k in 0..m {
        let len = m - k;
        let mut nk = Vec::with_capacity(len);
        let mut dk = Vec::with_capacity(len);
        let mut ak = Vec::with_capacity(len);
        for n in 0..len {
            let c = weights.recursion_coefficient(k as u32, beta + n as f64);
            nk.push(num[k][n + 1] - num[k][n].scale(c));
            dk.push(den[k][n + 1] - den[k][n].scale(c));
            ak.push(abs[k][n + 1] + c.abs().to_f64() * abs[k][n]);
        }
        num.push(nk);
        den.push(dk);
        abs.push(ak);
    }

    let rows = (0..=m)
        .map(|k| {
            (0..=m - k)
                .map(|n| match next_zero[n] {
                    Some(z) if z <= n + k => TransformValue::terminated(s[z]),
                    _ if k == 0 => TransformValue {
                        value: s[n],
                        unstable: false,
                        terminated: false,
                    },
                    _ => entry(num[k][n], den[k][n], abs[k][n]),
                })
                .collect()
        })
        .collect();

    Ok(RecursiveTables {
        numerator: narrow(&num),
        denominator: narrow(&den),
        values: TransformTable::from_rows(rows),
    })
}

/// Levin tables `L_k^(n)` for `k + n ≤ max_order`.
///
/// Needs `s_0..s_m` and `ω_0..ω_m` with `m = max_order`.
pub fn levin_recursive<S: Scalar>(
    beta: f64,
    s: &[S],
    omega: &[S],
    max_order: usize,
) -> Result<RecursiveTables<S>, TransformError> {
    tables(Weights::Levin, beta, s, omega, max_order)
}

/// Weniger tables `S_k^(n)` for `k + n ≤ max_order`.
pub fn weniger_recursive<S: Scalar>(
    beta: f64,
    s: &[S],
    omega: &[S],
    max_order: usize,
) -> Result<RecursiveTables<S>, TransformError> {
    tables(Weights::Weniger, beta, s, omega, max_order)
}

/// Builds the diagonal `T_m^(0)` one anti-diagonal at a time.
///
/// Each [`push`](Self::push) of `(s_m, ω_m)` costs `O(m)` and yields
/// `T_m^(0)`, bit-identical to the corresponding entry of the full table.
#[derive(Debug, Clone)]
pub struct DiagonalAccelerator<S> {
    weights: Weights,
    beta: f64,
    sums: Vec<S>,
    first_zero: Option<usize>,
    // entry j holds X_j^(m-j) of the latest anti-diagonal
    num: Vec<Wide>,
    den: Vec<Wide>,
    abs: Vec<f64>,
}

impl<S: Scalar> DiagonalAccelerator<S> {
    pub fn new(weights: Weights, beta: f64) -> Result<Self, TransformError> {
        check_beta(beta)?;
        Ok(Self {
            weights,
            beta,
            sums: Vec::new(),
            first_zero: None,
            num: Vec::new(),
            den: Vec::new(),
            abs: Vec::new(),
        })
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    /// Number of `(s, ω)` pairs consumed.
    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    pub fn push(&mut self, s: S, omega: S) -> TransformValue<S> {
        let m = self.sums.len();
        self.sums.push(s);
        if self.first_zero.is_none() && omega.is_zero() {
            self.first_zero = Some(m);
        }

        let (n0, d0, a0) = seeds(s, omega);
        let mut num = Vec::with_capacity(m + 1);
        let mut den = Vec::with_capacity(m + 1);
        let mut abs = Vec::with_capacity(m + 1);
        num.push(n0);
        den.push(d0);
        abs.push(a0);
        for j in 0..m {
            let c = self
                .weights
                .recursion_coefficient(j as u32, self.beta + (m - j - 1) as f64);
            num.push(num[j] - self.num[j].scale(c));
            den.push(den[j] - self.den[j].scale(c));
            abs.push(abs[j] + c.abs().to_f64() * self.abs[j]);
        }
        self.num = num;
        self.den = den;
        self.abs = abs;

        match self.first_zero {
            Some(z) => TransformValue::terminated(self.sums[z]),
            None if m == 0 => TransformValue {
                value: s,
                unstable: false,
                terminated: false,
            },
            None => entry(self.num[m], self.den[m], self.abs[m]),
        }
    }
}
