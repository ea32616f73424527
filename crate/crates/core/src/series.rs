//! Term generators, partial sums and simple convergence diagnostics.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::Scalar;

/// Number of leading terms checked against a declared sign pattern.
pub const SIGN_CHECK_TERMS: u64 = 64;

/// Caller-declared sign structure of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignPattern {
    MonotoneNonnegative,
    MonotoneNonpositive,
    Alternating,
    General,
}

impl SignPattern {
    pub fn is_monotone(self) -> bool {
        matches!(self, Self::MonotoneNonnegative | Self::MonotoneNonpositive)
    }

    /// Whether `value` is compatible with the pattern. Only the monotone
    /// patterns constrain individual terms; they also require a real value.
    pub fn admits<S: Scalar>(self, value: S) -> bool {
        match self {
            Self::MonotoneNonnegative => value.im() == 0.0 && value.re() >= 0.0,
            Self::MonotoneNonpositive => value.im() == 0.0 && value.re() <= 0.0,
            Self::Alternating | Self::General => true,
        }
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::MonotoneNonnegative => "monotone-nonnegative",
            Self::MonotoneNonpositive => "monotone-nonpositive",
            Self::Alternating => "alternating",
            Self::General => "general",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("term {index} = {value} violates the declared {pattern} sign pattern")]
    SignContract {
        index: u64,
        value: String,
        pattern: SignPattern,
    },
    #[error("need at least {needed} partial sums, got {got}")]
    TooFewSums { needed: usize, got: usize },
    #[error("ratio indeterminate: difference at index {index} is zero")]
    Indeterminate { index: usize },
}

/// A pure, random-access term generator `k -> a(k)`.
///
/// Implementations must return bit-identical values for repeated calls with
/// the same index and must never panic for any `u64` index; terms too small
/// to represent underflow to zero.
pub trait SeriesTerms<S: Scalar>: Send + Sync {
    fn term(&self, k: u64) -> S;

    fn sign_pattern(&self) -> SignPattern;

    /// The condensed sum `A_j` in closed form, for generators that know one.
    ///
    /// Used by the condensation stage instead of the numerical inner sum when
    /// the configuration allows it.
    fn closed_form_condensed(&self, _j: u64) -> Option<S> {
        None
    }
}

impl<S: Scalar, T: SeriesTerms<S> + ?Sized> SeriesTerms<S> for &T {
    fn term(&self, k: u64) -> S {
        (**self).term(k)
    }
    fn sign_pattern(&self) -> SignPattern {
        (**self).sign_pattern()
    }
    fn closed_form_condensed(&self, j: u64) -> Option<S> {
        (**self).closed_form_condensed(j)
    }
}

impl<S: Scalar, T: SeriesTerms<S> + ?Sized> SeriesTerms<S> for Arc<T> {
    fn term(&self, k: u64) -> S {
        (**self).term(k)
    }
    fn sign_pattern(&self) -> SignPattern {
        (**self).sign_pattern()
    }
    fn closed_form_condensed(&self, j: u64) -> Option<S> {
        (**self).closed_form_condensed(j)
    }
}

impl<S: Scalar, T: SeriesTerms<S> + ?Sized> SeriesTerms<S> for Box<T> {
    fn term(&self, k: u64) -> S {
        (**self).term(k)
    }
    fn sign_pattern(&self) -> SignPattern {
        (**self).sign_pattern()
    }
    fn closed_form_condensed(&self, j: u64) -> Option<S> {
        (**self).closed_form_condensed(j)
    }
}

/// Adapts a closure into a [`SeriesTerms`] generator.
pub struct FnTerms<F> {
    f: F,
    pattern: SignPattern,
}

impl<F> FnTerms<F> {
    pub fn new(pattern: SignPattern, f: F) -> Self {
        Self { f, pattern }
    }
}

pub fn from_fn<S, F>(pattern: SignPattern, f: F) -> FnTerms<F>
where
    S: Scalar,
    F: Fn(u64) -> S + Send + Sync,
{
    FnTerms::new(pattern, f)
}

impl<S, F> SeriesTerms<S> for FnTerms<F>
where
    S: Scalar,
    F: Fn(u64) -> S + Send + Sync,
{
    fn term(&self, k: u64) -> S {
        (self.f)(k)
    }

    fn sign_pattern(&self) -> SignPattern {
        self.pattern
    }
}

/// The tail `k -> a(k + offset)` of a series.
///
/// Series whose leading terms have irregular signs are handled by summing the
/// head directly and condensing the shifted monotone tail.
pub struct Shifted<T> {
    inner: T,
    offset: u64,
    pattern: SignPattern,
}

pub fn shift<T>(inner: T, offset: u64, pattern: SignPattern) -> Shifted<T> {
    Shifted {
        inner,
        offset,
        pattern,
    }
}

impl<S: Scalar, T: SeriesTerms<S>> SeriesTerms<S> for Shifted<T> {
    fn term(&self, k: u64) -> S {
        match k.checked_add(self.offset) {
            Some(idx) => self.inner.term(idx),
            None => S::zero(),
        }
    }

    fn sign_pattern(&self) -> SignPattern {
        self.pattern
    }
}

/// Checks the first [`SIGN_CHECK_TERMS`] terms against the declared pattern.
pub fn validate_sign_pattern<S: Scalar>(terms: &impl SeriesTerms<S>) -> Result<(), SeriesError> {
    let pattern = terms.sign_pattern();
    if !pattern.is_monotone() {
        return Ok(());
    }
    for k in 0..SIGN_CHECK_TERMS {
        let value = terms.term(k);
        if !pattern.admits(value) {
            return Err(SeriesError::SignContract {
                index: k,
                value: format!("{value:?}"),
                pattern,
            });
        }
    }
    Ok(())
}

/// Ordered partial sums `σ_0, …, σ_n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PartialSums<S>(Vec<S>);

impl<S: Scalar> PartialSums<S> {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Accumulates `terms` left to right.
    pub fn from_terms(terms: impl IntoIterator<Item = S>) -> Self {
        let mut sums = Self::new();
        for t in terms {
            sums.push_term(t);
        }
        sums
    }

    /// Appends `σ_{n+1} = σ_n + term`.
    pub fn push_term(&mut self, term: S) {
        let next = match self.0.last() {
            Some(&last) => last + term,
            None => term,
        };
        self.0.push(next);
    }

    pub fn last(&self) -> Option<S> {
        self.0.last().copied()
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }
}

impl<S> Deref for PartialSums<S> {
    type Target = [S];

    fn deref(&self) -> &[S] {
        &self.0
    }
}

impl<S> From<Vec<S>> for PartialSums<S> {
    fn from(v: Vec<S>) -> Self {
        Self(v)
    }
}

/// Partial sums `σ_0..σ_n` of `terms`, accumulated left to right.
pub fn partial_sums<S: Scalar>(terms: &impl SeriesTerms<S>, n: u64) -> PartialSums<S> {
    PartialSums::from_terms((0..=n).map(|k| terms.term(k)))
}

/// Ratio of the last two differences of `sums`, a proxy for the limit ratio
/// ρ of the remainders. A heuristic aid only: it does not classify
/// convergence.
pub fn estimate_rho<S: Scalar>(sums: &[S]) -> Result<S, SeriesError> {
    if sums.len() < 3 {
        return Err(SeriesError::TooFewSums {
            needed: 3,
            got: sums.len(),
        });
    }
    let n = sums.len() - 1;
    let last = sums[n] - sums[n - 1];
    let prev = sums[n - 1] - sums[n - 2];
    if prev.is_zero() {
        return Err(SeriesError::Indeterminate { index: n - 1 });
    }
    if last.is_zero() {
        return Err(SeriesError::Indeterminate { index: n });
    }
    Ok(last / prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(z: f64) -> impl SeriesTerms<f64> {
        from_fn(SignPattern::MonotoneNonnegative, move |k| z.powi(k as i32))
    }

    #[test]
    fn partial_sums_of_simple_series() {
        let s = partial_sums(&geometric(0.5), 2);
        assert_eq!(&s[..], &[1.0, 1.5, 1.75]);

        let inv_sq = from_fn(SignPattern::MonotoneNonnegative, |k| {
            ((k + 1) as f64).powi(-2)
        });
        assert_eq!(&partial_sums(&inv_sq, 1)[..], &[1.0, 1.25]);
    }

    #[test]
    fn partial_sums_of_li1_half_terms() {
        // a(k) = 0.5^(k+1)/(k+1): 0.5, 0.125, 0.041666...
        let li1 = from_fn(SignPattern::MonotoneNonnegative, |k| {
            0.5f64.powi(k as i32 + 1) / (k + 1) as f64
        });
        let s = partial_sums(&li1, 2);
        assert_eq!(s[0], 0.5);
        assert_eq!(s[1], 0.625);
        assert!((s[2] - (0.625 + 1.0 / 24.0)).abs() < 1e-16);
        assert!((s[2] - 0.666_666_666_666_667).abs() < 1e-15);
    }

    #[test]
    fn estimate_rho_geometric_is_exact() {
        let s = partial_sums(&geometric(0.5), 10);
        assert_eq!(estimate_rho(&s).unwrap(), 0.5);

        let s = partial_sums(&geometric(0.9), 20);
        assert!((estimate_rho(&s).unwrap() - 0.9).abs() < 1e-14);
    }

    #[test]
    fn estimate_rho_logarithmic_tends_to_one() {
        let zeta2 = from_fn(SignPattern::MonotoneNonnegative, |k| {
            ((k + 1) as f64).powi(-2)
        });
        let n = 1000u64;
        let rho = estimate_rho(&partial_sums(&zeta2, n)).unwrap();
        let expected = ((n as f64) / (n as f64 + 1.0)).powi(2);
        // differences of sums near 1.64 lose about ten digits
        assert!((rho - expected).abs() < 1e-8);
        assert!(rho < 1.0 && rho > 0.99);
    }

    #[test]
    fn estimate_rho_errors() {
        assert_eq!(
            estimate_rho(&[1.0, 2.0]),
            Err(SeriesError::TooFewSums { needed: 3, got: 2 })
        );
        assert_eq!(
            estimate_rho(&[1.0, 2.0, 2.0]),
            Err(SeriesError::Indeterminate { index: 2 })
        );
    }

    #[test]
    fn sign_validation_catches_violations() {
        let ok = geometric(0.5);
        assert!(validate_sign_pattern(&ok).is_ok());

        let bad = from_fn(SignPattern::MonotoneNonnegative, |k| {
            if k == 17 {
                -1.0
            } else {
                1.0 / (k + 1) as f64
            }
        });
        match validate_sign_pattern(&bad) {
            Err(SeriesError::SignContract { index, .. }) => assert_eq!(index, 17),
            other => panic!("unexpected {other:?}"),
        }

        let alt = from_fn(SignPattern::Alternating, |k| {
            if k % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        });
        assert!(validate_sign_pattern(&alt).is_ok());
    }

    #[test]
    fn shift_offsets_indices_and_saturates() {
        let base = from_fn(SignPattern::General, |k| k as f64);
        let tail = shift(&base, 5, SignPattern::MonotoneNonnegative);
        assert_eq!(tail.term(0), 5.0);
        assert_eq!(tail.term(3), 8.0);
        assert_eq!(tail.term(u64::MAX), 0.0);
        assert_eq!(tail.sign_pattern(), SignPattern::MonotoneNonnegative);
    }
}
