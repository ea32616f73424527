//! The series a command can evaluate and the code that turns one into a
//! [`Report`].

use std::collections::BTreeMap;

use cnct::driver::{
    accelerate_alternating, accelerate_zeta_alt, cnct, diagonal_rows, zeta_alt_rows,
    AccelerationOptions, AccelerationRequest, AccelerationResult, DiagonalRow, DriverError, Mode,
};
use cnct::functions::{
    bessel_product_terms, bessel_product_terms_complement, lerch_terms, lerch_terms_complement,
    pfq_terms, pfq_terms_complement, polylog_terms, polylog_terms_complement, zeta_dirichlet_terms,
    BesselSumParams, HypParams, LerchParams,
};
use cnct::series::{from_fn, SeriesTerms, SignPattern};
use cnct::{Complex64, Scalar};
use serde_json::Value;

use crate::number::{Num, Real};
use crate::report::{Companion, Report, Row};
use crate::CliError;

/// `complement` is `1 - z` when known more accurately than `z` itself; it
/// then takes precedence over `z`.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Zeta {
        z: Complex64,
    },
    Lerch {
        params: LerchParams,
        complement: Option<f64>,
    },
    Polylog {
        s: f64,
        z: f64,
        complement: Option<f64>,
    },
    Hyp {
        params: HypParams,
        complement: Option<f64>,
    },
    BesselSum {
        params: BesselSumParams,
        complement: Option<f64>,
    },
    /// Terms `t_j` of an alternating series read from a file.
    Terms(Vec<Complex64>),
}

/// Flags shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub options: AccelerationOptions,
    /// Display multiplier applied to every printed value.
    pub scale: f64,
    /// Highest row index to print; defaults to the order used.
    pub orders: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            options: AccelerationOptions::default(),
            scale: 1.0,
            orders: None,
        }
    }
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Zeta { .. } => "zeta",
            Problem::Lerch { .. } => "lerch",
            Problem::Polylog { .. } => "polylog",
            Problem::Hyp { .. } => "hyp",
            Problem::BesselSum { .. } => "bessel-sum",
            Problem::Terms(_) => "accelerate",
        }
    }

    fn params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            p.insert(k.to_string(), v);
        };
        match self {
            Problem::Zeta { z } if z.im == 0.0 => put("z", z.re.into()),
            Problem::Zeta { z } => put("z", vec![z.re, z.im].into()),
            Problem::Lerch { params: l, .. } => {
                put("z", l.z.into());
                put("s", l.s.into());
                put("alpha", l.alpha.into());
            }
            Problem::Polylog { s, z, .. } => {
                put("s", (*s).into());
                put("z", (*z).into());
            }
            Problem::Hyp { params: h, .. } => {
                put("num", h.numerator.clone().into());
                put("den", h.denominator.clone().into());
                put("z", h.z.into());
            }
            Problem::BesselSum { params: b, .. } => {
                put("r", b.r.into());
                put("y", b.y.into());
            }
            Problem::Terms(t) => put("terms", t.len().into()),
        }
        p
    }

    pub fn evaluate(&self, settings: &Settings) -> Result<Report, CliError> {
        settings.options.validate().map_err(domain)?;
        if !settings.scale.is_finite() || settings.scale == 0.0 {
            return Err(CliError::Usage("--scale must be finite and nonzero".into()));
        }
        let opts = &settings.options;
        let mut report = match self {
            Problem::Zeta { z } if z.im != 0.0 => {
                let result = accelerate_zeta_alt(*z, opts).map_err(domain)?;
                let rows = zeta_alt_rows(*z, opts, row_limit(settings, &result)).map_err(domain)?;
                assemble(result, rows, settings, true)
            }
            Problem::Zeta { z } if z.re > 1.0 => {
                let req = request(
                    zeta_dirichlet_terms(z.re),
                    Mode::CondenseThenAccelerate,
                    opts,
                );
                solve(&req, settings, true)?
            }
            Problem::Zeta { z } => {
                let result = accelerate_zeta_alt(z.re, opts).map_err(domain)?;
                let rows =
                    zeta_alt_rows(z.re, opts, row_limit(settings, &result)).map_err(domain)?;
                assemble(result, rows, settings, true)
            }
            Problem::Lerch {
                params: p,
                complement,
            } => {
                let terms = match complement {
                    Some(w) => lerch_terms_complement(*w, p.s, p.alpha),
                    None => lerch_terms(*p),
                };
                solve_auto(terms.map_err(domain)?, settings)?
            }
            Problem::Polylog { s, z, complement } => {
                let terms = match complement {
                    Some(w) => polylog_terms_complement(*s, *w),
                    None => polylog_terms(*s, *z),
                };
                solve_auto(terms.map_err(domain)?, settings)?
            }
            Problem::Hyp {
                params: p,
                complement,
            } => {
                let terms = match complement {
                    Some(w) => pfq_terms_complement(p.clone(), *w),
                    None => pfq_terms(p.clone()),
                };
                solve_auto(terms.map_err(domain)?, settings)?
            }
            Problem::BesselSum {
                params: p,
                complement,
            } => {
                let terms = match complement {
                    Some(w) => bessel_product_terms_complement(*w, p.y),
                    None => bessel_product_terms(*p),
                };
                solve_auto(terms.map_err(domain)?, settings)?
            }
            Problem::Terms(t) if t.iter().all(|z| z.im == 0.0) => {
                let re: Vec<f64> = t.iter().map(|z| z.re).collect();
                given_terms(&re, settings)?
            }
            Problem::Terms(t) => given_terms(t, settings)?,
        };
        report.problem = self.name().to_string();
        report.params = self.params();
        report.params.insert("scale".into(), settings.scale.into());
        Ok(report)
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn request<T>(terms: T, mode: Mode, opts: &AccelerationOptions) -> AccelerationRequest<T> {
    let mut req = AccelerationRequest::new(terms).mode(mode);
    req.options = *opts;
    req
}

fn row_limit<S>(settings: &Settings, result: &AccelerationResult<S>) -> usize {
    settings.orders.unwrap_or(result.order_used)
}

/// Condense monotone series, accelerate alternating ones directly.
fn solve_auto<T: SeriesTerms<f64>>(terms: T, settings: &Settings) -> Result<Report, CliError> {
    let mode = match terms.sign_pattern() {
        p if p.is_monotone() => Mode::CondenseThenAccelerate,
        SignPattern::Alternating => Mode::AccelerateGivenAlternating,
        p => {
            return Err(CliError::Domain(format!(
                "cannot accelerate a series with {p} terms"
            )))
        }
    };
    solve(&request(terms, mode, &settings.options), settings, false)
}

fn solve<T: SeriesTerms<S>, S: Scalar>(
    req: &AccelerationRequest<T>,
    settings: &Settings,
    euler: bool,
) -> Result<Report, CliError> {
    let result = cnct(req).map_err(domain)?;
    let rows = diagonal_rows(req, row_limit(settings, &result)).map_err(domain)?;
    Ok(assemble(result, rows, settings, euler))
}

fn given_terms<S: Scalar>(terms: &[S], settings: &Settings) -> Result<Report, CliError> {
    let result = accelerate_alternating(terms, &settings.options).map_err(|e| match e {
        DriverError::TooFewTerms { .. } => CliError::Usage(e.to_string()),
        e => domain(e),
    })?;
    let owned = terms.to_vec();
    let series = from_fn(SignPattern::Alternating, move |j: u64| {
        owned.get(j as usize).copied().unwrap_or_else(S::zero)
    });
    let req = request(series, Mode::AccelerateGivenAlternating, &settings.options);
    let max_n = row_limit(settings, &result).min(terms.len() - 2);
    let rows = diagonal_rows(&req, max_n).map_err(domain)?;
    Ok(assemble(result, rows, settings, true))
}

fn assemble<S: Scalar>(
    result: AccelerationResult<S>,
    rows: Vec<DiagonalRow<S>>,
    settings: &Settings,
    euler: bool,
) -> Report {
    let factor = S::from_f64(settings.scale);
    let result = result.scaled(factor);
    let rows = rows
        .into_iter()
        .map(|r| {
            let r = r.scaled(factor);
            Row {
                n: r.n,
                partial_sum: Num::of(r.partial_sum),
                euler: euler.then(|| Num::of(r.euler)),
                levin_d: Some(Num::of(r.levin_d.value)),
                weniger_delta: Some(Num::of(r.weniger_delta.value)),
            }
        })
        .collect();
    let mut warnings: Vec<String> = result
        .stability_warnings
        .iter()
        .chain(
            result
                .companion
                .iter()
                .flat_map(|c| c.stability_warnings.iter()),
        )
        .map(|w| {
            format!(
                "{} denominator flagged unstable at order {}",
                w.transform, w.order
            )
        })
        .collect();
    warnings.dedup();
    Report {
        problem: String::new(),
        params: BTreeMap::new(),
        rows,
        transform: result.transform.to_string(),
        value: Num::of(result.value),
        order_used: result.order_used,
        error_estimate: Real(result.error_estimate),
        term_evaluations: result.term_evaluations,
        converged: result.converged,
        companion: result.companion.map(|c| Companion {
            transform: c.transform.to_string(),
            value: Num::of(c.value),
            order_used: c.order_used,
            converged: c.converged,
        }),
        warnings,
        check: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_lerch_skips_condensation() {
        let p = Problem::Lerch {
            params: LerchParams {
                z: -0.5,
                s: 1.0,
                alpha: 1.0,
            },
            complement: None,
        };
        let r = p.evaluate(&Settings::default()).unwrap();
        // Φ(-1/2, 1, 1) = 2 ln(3/2)
        assert!((r.value.re() - 2.0 * 1.5f64.ln()).abs() < 1e-14);
        assert!(r.converged);
        assert!(r.rows.iter().all(|row| row.euler.is_none()));
    }

    #[test]
    fn rows_end_at_order_used_by_default() {
        let r = Problem::Polylog {
            s: 2.0,
            z: 0.5,
            complement: None,
        }
        .evaluate(&Settings::default())
        .unwrap();
        assert_eq!(r.rows.len(), r.order_used + 1);
        assert_eq!(r.rows.last().unwrap().weniger_delta, Some(r.value));
    }

    #[test]
    fn complement_gives_log_to_full_precision() {
        let p = Problem::Polylog {
            s: 1.0,
            z: 0.99999,
            complement: Some(1e-5),
        };
        let r = p.evaluate(&Settings::default()).unwrap();
        let exact = -(1e-5f64).ln();
        assert!(
            (r.value.re() - exact).abs() <= 1e-14 * exact,
            "{:?}",
            r.value
        );
    }

    #[test]
    fn zeta_pole_is_a_domain_error() {
        let err = Problem::Zeta {
            z: Complex64::new(1.0, 0.0),
        }
        .evaluate(&Settings::default())
        .unwrap_err();
        assert!(matches!(err, CliError::Domain(_)), "{err}");
    }
}
