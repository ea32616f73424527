//! The full pipeline: condensation of a monotone series followed by
//! acceleration of the resulting alternating series along the diagonal
//! `T_m^(0)`, with a convergence rule and evaluation accounting.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::condensation::{CondensationConfig, CondensationError, Condenser};
use crate::functions::{zeta_alt_terms, FunctionError};
use crate::scalar::Scalar;
use crate::series::SeriesTerms;
use crate::transforms::{
    check_beta, euler_transform, DiagonalAccelerator, TransformError, TransformValue, Weights,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    LevinD,
    WenigerDelta,
    Euler,
    /// Weniger δ as the primary result with Levin d as companion.
    Both,
}

impl Transform {
    pub fn name(self) -> &'static str {
        match self {
            Self::LevinD => "levin-d",
            Self::WenigerDelta => "weniger-delta",
            Self::Euler => "euler",
            Self::Both => "both",
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Terms are monotone; condense them first.
    #[default]
    CondenseThenAccelerate,
    /// Terms already form an alternating (or generalized alternating) series.
    AccelerateGivenAlternating,
}

/// Settings for the acceleration stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelerationOptions {
    pub transform: Transform,
    pub beta: f64,
    pub target_rel_tol: f64,
    pub max_order: usize,
}

impl Default for AccelerationOptions {
    fn default() -> Self {
        Self {
            transform: Transform::Both,
            beta: 1.0,
            target_rel_tol: 1e-14,
            max_order: 30,
        }
    }
}

impl AccelerationOptions {
    pub fn validate(&self) -> Result<(), DriverError> {
        check_beta(self.beta)?;
        if !(self.target_rel_tol > 0.0) || !self.target_rel_tol.is_finite() {
            return Err(DriverError::InvalidRequest(
                "target_rel_tol must be positive",
            ));
        }
        if self.max_order < 2 {
            return Err(DriverError::InvalidRequest("max_order must be at least 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AccelerationRequest<T> {
    pub terms: T,
    pub options: AccelerationOptions,
    pub condensation: CondensationConfig,
    pub mode: Mode,
}

impl<T> AccelerationRequest<T> {
    /// Default options and condensation settings.
    pub fn new(terms: T) -> Self {
        Self {
            terms,
            options: AccelerationOptions::default(),
            condensation: CondensationConfig::default(),
            mode: Mode::default(),
        }
    }

    pub fn transform(mut self, transform: Transform) -> Self {
        self.options.transform = transform;
        self
    }

    pub fn beta(mut self, beta: f64) -> Self {
        self.options.beta = beta;
        self
    }

    pub fn target_rel_tol(mut self, tol: f64) -> Self {
        self.options.target_rel_tol = tol;
        self
    }

    pub fn max_order(mut self, max_order: usize) -> Self {
        self.options.max_order = max_order;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

/// A diagonal entry whose denominator was flagged as unstable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityWarning {
    pub transform: Transform,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccelerationResult<S> {
    pub transform: Transform,
    pub value: S,
    pub order_used: usize,
    /// Modulus of the last diagonal increment. A heuristic, not a bound.
    pub error_estimate: f64,
    /// Distinct original-series indices fetched.
    pub term_evaluations: u64,
    pub converged: bool,
    pub stability_warnings: Vec<StabilityWarning>,
    /// The Levin d result when the request asked for both transforms.
    pub companion: Option<Box<AccelerationResult<S>>>,
}

#[derive(Debug, Error)]
pub enum DriverError {
    #[error(transparent)]
    Condensation(#[from] CondensationError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error("invalid request: {0}")]
    InvalidRequest(&'static str),
    #[error("need at least {needed} terms, got {got}")]
    TooFewTerms { needed: usize, got: usize },
}

impl<S: Scalar> AccelerationResult<S> {
    /// The result for the series multiplied by a constant `factor`.
    pub fn scaled(mut self, factor: S) -> Self {
        self.value *= factor;
        self.error_estimate *= factor.modulus();
        self.companion = self.companion.map(|c| Box::new(c.scaled(factor)));
        self
    }
}

/// One row of the acceleration table: the partial sum and each diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalRow<S> {
    pub n: usize,
    /// Term `t_n` of the alternating series.
    pub term: S,
    pub partial_sum: S,
    pub euler: S,
    pub levin_d: TransformValue<S>,
    pub weniger_delta: TransformValue<S>,
}

impl<S: Scalar> DiagonalRow<S> {
    /// The row for the series multiplied by a constant `factor`.
    pub fn scaled(self, factor: S) -> Self {
        let t = |v: TransformValue<S>| TransformValue {
            value: v.value * factor,
            ..v
        };
        Self {
            n: self.n,
            term: self.term * factor,
            partial_sum: self.partial_sum * factor,
            euler: self.euler * factor,
            levin_d: t(self.levin_d),
            weniger_delta: t(self.weniger_delta),
        }
    }
}

/// Tracks one diagonal and applies the two-increment stopping rule.
#[derive(Debug, Clone)]
struct Tracker<S> {
    transform: Transform,
    tol: f64,
    value: Option<S>,
    order: usize,
    increment: f64,
    /// Consecutive unflagged increments within tolerance.
    streak: u32,
    done: bool,
    warnings: Vec<StabilityWarning>,
}

impl<S: Scalar> Tracker<S> {
    fn new(transform: Transform, tol: f64) -> Self {
        Self {
            transform,
            tol,
            value: None,
            order: 0,
            increment: f64::INFINITY,
            streak: 0,
            done: false,
            warnings: Vec::new(),
        }
    }

    fn observe(&mut self, order: usize, value: S, unstable: bool) {
        if self.done {
            return;
        }
        if unstable {
            self.warnings.push(StabilityWarning {
                transform: self.transform,
                order,
            });
        }
        if let Some(prev) = self.value {
            self.increment = (value - prev).modulus();
            if !unstable && self.increment <= self.tol * value.modulus() {
                self.streak += 1;
            } else {
                self.streak = 0;
            }
        }
        self.value = Some(value);
        self.order = order;
        if self.streak >= 2 {
            self.done = true;
        }
    }

    fn result(self, term_evaluations: u64) -> AccelerationResult<S> {
        AccelerationResult {
            transform: self.transform,
            value: self.value.unwrap_or_else(S::zero),
            order_used: self.order,
            error_estimate: if self.increment.is_finite() {
                self.increment
            } else {
                0.0
            },
            term_evaluations,
            converged: self.done,
            stability_warnings: self.warnings,
            companion: None,
        }
    }
}

/// Incremental state of all diagonals for one alternating series.
struct Diagonals<S> {
    terms: Vec<S>,
    sum: S,
    levin: DiagonalAccelerator<S>,
    weniger: DiagonalAccelerator<S>,
}

impl<S: Scalar> Diagonals<S> {
    fn new(beta: f64) -> Result<Self, TransformError> {
        Ok(Self {
            terms: Vec::new(),
            sum: S::zero(),
            levin: DiagonalAccelerator::new(Weights::Levin, beta)?,
            weniger: DiagonalAccelerator::new(Weights::Weniger, beta)?,
        })
    }

    /// Add `t_{n+1}`, completing row `n`.
    fn advance(
        &mut self,
        fetch: &mut impl FnMut(usize) -> Result<S, DriverError>,
    ) -> Result<DiagonalRow<S>, DriverError> {
        if self.terms.is_empty() {
            self.terms.push(fetch(0)?);
        }
        let n = self.terms.len() - 1;
        let next = fetch(n + 1)?;
        self.terms.push(next);
        self.sum = self.sum + self.terms[n];
        let levin_d = self.levin.push(self.sum, next);
        let weniger_delta = self.weniger.push(self.sum, next);
        Ok(DiagonalRow {
            n,
            term: self.terms[n],
            partial_sum: self.sum,
            euler: S::zero(),
            levin_d,
            weniger_delta,
        })
    }

    /// Euler values `E_0..E_n` for the terms consumed so far.
    fn euler(&self, n: usize) -> Vec<S> {
        let u: Vec<S> = self.terms[..=n]
            .iter()
            .enumerate()
            .map(|(j, &t)| if j % 2 == 0 { t } else { -t })
            .collect();
        euler_transform(&u).into_vec()
    }
}

/// Drives the diagonals until the primary transform converges or
/// `max_order` is reached.
fn run<S: Scalar>(
    options: &AccelerationOptions,
    mut fetch: impl FnMut(usize) -> Result<S, DriverError>,
    evaluations: impl Fn() -> u64,
) -> Result<AccelerationResult<S>, DriverError> {
    options.validate()?;
    let mut diag = Diagonals::new(options.beta)?;
    let (primary, companion) = match options.transform {
        Transform::Both => (Transform::WenigerDelta, Some(Transform::LevinD)),
        t => (t, None),
    };
    let mut main = Tracker::new(primary, options.target_rel_tol);
    let mut side = companion.map(|t| Tracker::new(t, options.target_rel_tol));

    for m in 0..=options.max_order {
        let row = diag.advance(&mut fetch)?;
        for tracker in std::iter::once(&mut main).chain(side.as_mut()) {
            let (value, unstable) = match tracker.transform {
                Transform::LevinD => (row.levin_d.value, row.levin_d.unstable),
                Transform::WenigerDelta => (row.weniger_delta.value, row.weniger_delta.unstable),
                _ => (diag.euler(m)[m], false),
            };
            tracker.observe(m, value, unstable);
        }
        if main.done && side.as_ref().is_none_or(|s| s.done) {
            break;
        }
    }

    let evals = evaluations();
    let mut result = main.result(evals);
    result.companion = side.map(|s| Box::new(s.result(evals)));
    Ok(result)
}

/// Source of alternating terms `t_j` for a request.
enum Source<'a, T, S> {
    Condensed(Condenser<&'a T, S>),
    Direct(&'a T, HashSet<u64>),
}

impl<'a, T: SeriesTerms<S>, S: Scalar> Source<'a, T, S> {
    fn new(req: &'a AccelerationRequest<T>) -> Result<Self, DriverError> {
        Ok(match req.mode {
            Mode::CondenseThenAccelerate => {
                Source::Condensed(Condenser::new(&req.terms, req.condensation)?)
            }
            Mode::AccelerateGivenAlternating => Source::Direct(&req.terms, HashSet::new()),
        })
    }

    fn term(&mut self, j: usize) -> Result<S, DriverError> {
        match self {
            Source::Condensed(c) => {
                let a = c.condensed(j as u64)?.value;
                Ok(if j % 2 == 0 { a } else { -a })
            }
            Source::Direct(terms, seen) => {
                seen.insert(j as u64);
                Ok(terms.term(j as u64))
            }
        }
    }

    fn evaluations(&self) -> u64 {
        match self {
            Source::Condensed(c) => c.term_evaluations(),
            Source::Direct(_, seen) => seen.len() as u64,
        }
    }
}

/// Condense (unless the request says the terms already alternate) and
/// accelerate along the diagonal `T_m^(0)`.
///
/// Stops once two consecutive diagonal increments are within
/// `target_rel_tol` of the current value and neither entry is flagged as
/// unstable. Reaching `max_order` first is reported through
/// `converged = false`, not as an error.
pub fn cnct<T: SeriesTerms<S>, S: Scalar>(
    req: &AccelerationRequest<T>,
) -> Result<AccelerationResult<S>, DriverError> {
    let source = std::cell::RefCell::new(Source::new(req)?);
    run(
        &req.options,
        |j| source.borrow_mut().term(j),
        || source.borrow().evaluations(),
    )
}

/// Rows `0..=max_n` of every diagonal for the series of `req`, regardless
/// of convergence.
pub fn diagonal_rows<T: SeriesTerms<S>, S: Scalar>(
    req: &AccelerationRequest<T>,
    max_n: usize,
) -> Result<Vec<DiagonalRow<S>>, DriverError> {
    req.options.validate()?;
    let mut source = Source::new(req)?;
    let mut diag = Diagonals::new(req.options.beta)?;
    let mut rows = (0..=max_n)
        .map(|_| diag.advance(&mut |j| source.term(j)))
        .collect::<Result<Vec<_>, _>>()?;
    for (row, e) in rows.iter_mut().zip(diag.euler(max_n)) {
        row.euler = e;
    }
    Ok(rows)
}

/// Accelerate an alternating series given its terms `t_0..t_M`.
///
/// Partial sums are accumulated from the terms and the Smith–Ford
/// estimates are `ω_n = t_{n+1}`, so the highest order reachable is
/// `M - 1`. Divergent series are summed in the same way.
pub fn accelerate_alternating<S: Scalar>(
    terms: &[S],
    options: &AccelerationOptions,
) -> Result<AccelerationResult<S>, DriverError> {
    if terms.len() < 4 {
        return Err(DriverError::TooFewTerms {
            needed: 4,
            got: terms.len(),
        });
    }
    let opts = AccelerationOptions {
        max_order: options.max_order.min(terms.len() - 2),
        ..*options
    };
    run(
        &opts,
        |j| Ok(terms[j]),
        || terms.len().min(opts.max_order + 2) as u64,
    )
}

fn eta_request<S: Scalar>(
    z: S,
    options: &AccelerationOptions,
) -> Result<(AccelerationRequest<crate::functions::EtaTerms<S>>, S), DriverError> {
    let terms = zeta_alt_terms(z)?;
    let mut req = AccelerationRequest::new(terms.unscaled()).mode(Mode::AccelerateGivenAlternating);
    req.options = *options;
    Ok((req, terms.prefactor()))
}

/// `ζ(z)` from the alternating series `Σ (-1)^j A_j`, bypassing
/// condensation. Works for complex `z` and, as a summation of a divergent
/// series, for `Re z ≤ 0`.
///
/// The prefactor `1/(1 - 2^{1-z})` is applied after the transform.
pub fn accelerate_zeta_alt<S: Scalar>(
    z: S,
    options: &AccelerationOptions,
) -> Result<AccelerationResult<S>, DriverError> {
    let (req, prefactor) = eta_request(z, options)?;
    Ok(cnct(&req)?.scaled(prefactor))
}

/// Table rows `0..=max_n` of the alternating zeta series.
pub fn zeta_alt_rows<S: Scalar>(
    z: S,
    options: &AccelerationOptions,
    max_n: usize,
) -> Result<Vec<DiagonalRow<S>>, DriverError> {
    let (req, prefactor) = eta_request(z, options)?;
    Ok(diagonal_rows(&req, max_n)?
        .into_iter()
        .map(|r| r.scaled(prefactor))
        .collect())
}
