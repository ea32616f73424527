//! Van Wijngaarden condensation of monotone series.
//!
//! A monotone series `Σ a(k)` is rearranged into the alternating series
//! `Σ (-1)^j A_j` with condensed terms
//!
//! ```text
//! A_j = Σ_k 2^k a(2^k (j+1) - 1)
//! ```
//!
//! The inner sums sample the original series at exponentially growing
//! indices and are summed directly, without acceleration.

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::series::{PartialSums, SeriesError, SeriesTerms, SignPattern, SIGN_CHECK_TERMS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensationConfig {
    /// Stop once `|b_k| < inner_rel_tol * |A_j|`.
    pub inner_rel_tol: f64,
    /// Stop once `|b_k|` falls below this floor.
    pub inner_abs_floor: f64,
    pub max_inner_terms: u32,
    /// Largest original index the inner sum may request.
    pub max_index: u64,
    /// Prefer a generator's closed-form condensed terms when it has them.
    pub use_closed_form: bool,
}

impl Default for CondensationConfig {
    fn default() -> Self {
        Self {
            inner_rel_tol: 1e-16,
            inner_abs_floor: 5e-324,
            max_inner_terms: 64,
            max_index: 1 << 62,
            use_closed_form: true,
        }
    }
}

impl CondensationConfig {
    pub fn validate(&self) -> Result<(), CondensationError> {
        if !(self.inner_rel_tol > 0.0) {
            return Err(CondensationError::InvalidConfig(
                "inner_rel_tol must be positive",
            ));
        }
        if !(self.inner_abs_floor > 0.0) {
            return Err(CondensationError::InvalidConfig(
                "inner_abs_floor must be positive",
            ));
        }
        if self.max_inner_terms == 0 {
            return Err(CondensationError::InvalidConfig(
                "max_inner_terms must be at least 1",
            ));
        }
        Ok(())
    }
}

/// One condensed term `A_j` with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensedTerm<S> {
    pub j: u64,
    pub value: S,
    /// Number of inner terms `b_k` summed; zero for closed-form terms.
    pub inner_terms_used: u32,
    /// Highest original index sampled, `None` when no term was fetched.
    pub max_original_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CondensationError {
    #[error("condensation requires a monotone series, got {0}")]
    NotMonotone(SignPattern),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(
        "non-convergent inner sum for A_{j}: last of {inner_terms} terms is {last_term:e}, \
         running sum {running_sum:e} (index limit reached: {index_limited})"
    )]
    NonConvergentInnerSum {
        j: u64,
        inner_terms: u32,
        last_term: f64,
        running_sum: f64,
        index_limited: bool,
    },
    #[error("invalid condensation config: {0}")]
    InvalidConfig(&'static str),
}

/// `2^k (j+1) - 1`, or `None` past `max_index` or on overflow.
fn inner_index(j: u64, k: u32, max_index: u64) -> Option<u64> {
    let pow = 1u64.checked_shl(k)?;
    let idx = (j.checked_add(1)?).checked_mul(pow)? - 1;
    (idx <= max_index).then_some(idx)
}

fn condense_with<S, F>(
    j: u64,
    cfg: &CondensationConfig,
    mut fetch: F,
) -> Result<CondensedTerm<S>, CondensationError>
where
    S: Scalar,
    F: FnMut(u64) -> Result<S, CondensationError>,
{
    let mut acc = S::zero();
    let mut last_idx;
    let mut k = 0u32;
    loop {
        let Some(idx) = inner_index(j, k, cfg.max_index) else {
            // k = 0 always yields idx = j; only an index past max_index lands here
            return Err(CondensationError::NonConvergentInnerSum {
                j,
                inner_terms: k,
                last_term: f64::NAN,
                running_sum: acc.modulus(),
                index_limited: true,
            });
        };
        let b = fetch(idx)?.scale(2f64.powi(k as i32));
        acc += b;
        last_idx = idx;
        k += 1;

        let mag = b.modulus();
        if mag < cfg.inner_rel_tol * acc.modulus() || mag < cfg.inner_abs_floor {
            break;
        }
        let index_limited = inner_index(j, k, cfg.max_index).is_none();
        if k >= cfg.max_inner_terms || index_limited {
            return Err(CondensationError::NonConvergentInnerSum {
                j,
                inner_terms: k,
                last_term: mag,
                running_sum: acc.modulus(),
                index_limited,
            });
        }
    }
    Ok(CondensedTerm {
        j,
        value: acc,
        inner_terms_used: k,
        max_original_index: Some(last_idx),
    })
}

/// Computes `A_j` for a monotone series without caching.
pub fn condensed_term<S: Scalar>(
    terms: &impl SeriesTerms<S>,
    j: u64,
    cfg: &CondensationConfig,
) -> Result<CondensedTerm<S>, CondensationError> {
    cfg.validate()?;
    let pattern = terms.sign_pattern();
    if !pattern.is_monotone() {
        return Err(CondensationError::NotMonotone(pattern));
    }
    if cfg.use_closed_form {
        if let Some(value) = terms.closed_form_condensed(j) {
            return Ok(CondensedTerm {
                j,
                value,
                inner_terms_used: 0,
                max_original_index: None,
            });
        }
    }
    condense_with(j, cfg, |idx| checked_term(terms, pattern, idx))
}

fn checked_term<S: Scalar>(
    terms: &impl SeriesTerms<S>,
    pattern: SignPattern,
    idx: u64,
) -> Result<S, CondensationError> {
    let value = terms.term(idx);
    if idx < SIGN_CHECK_TERMS && !pattern.admits(value) {
        return Err(SeriesError::SignContract {
            index: idx,
            value: format!("{value:?}"),
            pattern,
        }
        .into());
    }
    Ok(value)
}

/// Van Wijngaarden partial sums together with the condensed terms.
#[derive(Debug, Clone, PartialEq)]
pub struct VwSums<S> {
    /// `S_m = Σ_{j≤m} (-1)^j A_j`.
    pub sums: PartialSums<S>,
    /// `A_0..A_n`.
    pub condensed: Vec<S>,
}

/// Computes `S_0..S_n` and `A_0..A_n` without caching.
pub fn vw_partial_sums<S: Scalar>(
    terms: &impl SeriesTerms<S>,
    n: u64,
    cfg: &CondensationConfig,
) -> Result<VwSums<S>, CondensationError> {
    let condensed = (0..=n)
        .map(|j| condensed_term(terms, j, cfg).map(|c| c.value))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VwSums {
        sums: alternate(&condensed),
        condensed,
    })
}

/// Partial sums of `Σ (-1)^j A_j`.
pub fn alternate<S: Scalar>(condensed: &[S]) -> PartialSums<S> {
    PartialSums::from_terms(
        condensed
            .iter()
            .enumerate()
            .map(|(j, &a)| if j % 2 == 0 { a } else { -a }),
    )
}

/// Condensation bound to one series and config, with memoized `A_j` and
/// original terms.
///
/// Safe to share between threads; concurrent requests for distinct `j` may
/// each compute their inner sum, and results are identical regardless of
/// order. [`Condenser::term_evaluations`] counts distinct original indices
/// fetched.
pub struct Condenser<T, S> {
    terms: T,
    cfg: CondensationConfig,
    pattern: SignPattern,
    condensed: Mutex<HashMap<u64, CondensedTerm<S>>>,
    originals: Mutex<HashMap<u64, S>>,
}

impl<T: SeriesTerms<S>, S: Scalar> Condenser<T, S> {
    pub fn new(terms: T, cfg: CondensationConfig) -> Result<Self, CondensationError> {
        cfg.validate()?;
        let pattern = terms.sign_pattern();
        if !pattern.is_monotone() {
            return Err(CondensationError::NotMonotone(pattern));
        }
        Ok(Self {
            terms,
            cfg,
            pattern,
            condensed: Mutex::new(HashMap::new()),
            originals: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &CondensationConfig {
        &self.cfg
    }

    fn original(&self, idx: u64) -> Result<S, CondensationError> {
        if let Some(&v) = self.originals.lock().unwrap().get(&idx) {
            return Ok(v);
        }
        let v = checked_term(&self.terms, self.pattern, idx)?;
        self.originals.lock().unwrap().insert(idx, v);
        Ok(v)
    }

    pub fn condensed(&self, j: u64) -> Result<CondensedTerm<S>, CondensationError> {
        if let Some(&c) = self.condensed.lock().unwrap().get(&j) {
            return Ok(c);
        }
        let closed = if self.cfg.use_closed_form {
            self.terms.closed_form_condensed(j)
        } else {
            None
        };
        let c = match closed {
            Some(value) => CondensedTerm {
                j,
                value,
                inner_terms_used: 0,
                max_original_index: None,
            },
            None => condense_with(j, &self.cfg, |idx| self.original(idx))?,
        };
        self.condensed.lock().unwrap().insert(j, c);
        Ok(c)
    }

    pub fn partial_sums(&self, n: u64) -> Result<VwSums<S>, CondensationError> {
        let condensed = (0..=n)
            .map(|j| self.condensed(j).map(|c| c.value))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VwSums {
            sums: alternate(&condensed),
            condensed,
        })
    }

    /// Number of distinct original-series indices fetched so far.
    pub fn term_evaluations(&self) -> u64 {
        self.originals.lock().unwrap().len() as u64
    }
}
