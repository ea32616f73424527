//! The reference tables: problem setup, display scaling, row count and the
//! values each one must reproduce.

use std::f64::consts::PI;

use cnct::functions::{bessel_sum_closed_form_complement, BesselSumParams, HypParams, LerchParams};
use cnct::Complex64;

use crate::number::Num;
use crate::problem::{Problem, Settings};
use crate::report::{Check, Report, Row};
use crate::CliError;

pub const TABLE_IDS: [&str; 11] = [
    "4.1", "4.2", "4.3", "5.1", "5.2", "5.3", "5.4", "6.1", "6.2", "6.3", "7.1",
];

/// How close a value has to be to the reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Relative(f64),
    Ulps(f64),
    /// Absolute bound on the real and imaginary parts separately.
    PerComponent(f64),
}

impl Tolerance {
    pub fn accepts(self, got: Num, want: Num) -> bool {
        let (dr, di) = (got.re() - want.re(), got.im() - want.im());
        let err = dr.hypot(di);
        let size = want.re().hypot(want.im());
        match self {
            Tolerance::Relative(t) => err <= t * size,
            Tolerance::Ulps(u) => err <= u * f64::EPSILON * size,
            Tolerance::PerComponent(t) => dr.abs() <= t && di.abs() <= t,
        }
    }

    fn describe(self) -> String {
        match self {
            Tolerance::Relative(t) => format!("relative {t:e}"),
            Tolerance::Ulps(u) => format!("{u} ulp"),
            Tolerance::PerComponent(t) => format!("{t:e} per component"),
        }
    }
}

/// A diagonal that must have reached the reference by a given row.
#[derive(Debug, Clone, Copy)]
pub struct Reach {
    pub column: Column,
    pub by: usize,
    /// Every later row must stay within tolerance too.
    pub stays: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Euler,
    LevinD,
    WenigerDelta,
}

impl Column {
    fn get(self, row: &Row) -> Option<Num> {
        match self {
            Column::Euler => row.euler,
            Column::LevinD => row.levin_d,
            Column::WenigerDelta => row.weniger_delta,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Column::Euler => "euler",
            Column::LevinD => "levin-d",
            Column::WenigerDelta => "weniger-delta",
        }
    }
}

pub struct Table {
    pub id: &'static str,
    pub problem: Problem,
    /// Display multiplier used for the printed columns.
    pub scale: f64,
    /// Last row index printed.
    pub max_n: usize,
    /// Limit of the series, unscaled.
    pub reference: Complex64,
    pub tolerance: Tolerance,
    /// Tolerance for the Levin d diagonal when it differs.
    pub levin_tolerance: Option<Tolerance>,
    pub reaches: Vec<Reach>,
    /// Euler column entry at a given row, unscaled.
    pub euler_at: Option<(usize, f64)>,
    pub max_term_evaluations: Option<u64>,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Arguments given as `1 - w` use the complement so that the decimal
/// argument is honoured to full precision.
fn hyp(numerator: &[f64], denominator: &[f64], w: f64) -> Problem {
    Problem::Hyp {
        params: HypParams {
            numerator: numerator.to_vec(),
            denominator: denominator.to_vec(),
            z: 1.0 - w,
        },
        complement: (w > 0.0).then_some(w),
    }
}

const W: f64 = 1e-5;

/// `1 - r` and `y` of the Bessel–Hankel sum.
const BESSEL: (f64, f64) = (1e-4, 0.7);

pub fn table(id: &str) -> Option<Table> {
    let rel = Tolerance::Relative(5e-13);
    let base = |problem, scale, max_n, reference| Table {
        id: "",
        problem,
        scale,
        max_n,
        reference,
        tolerance: rel,
        levin_tolerance: None,
        reaches: Vec::new(),
        euler_at: None,
        max_term_evaluations: None,
    };
    let reach = |column, by, stays| Reach { column, by, stays };
    let zeta = |re, im| Problem::Zeta {
        z: Complex64::new(re, im),
    };
    let polylog = |s| Problem::Polylog {
        s,
        z: 1.0 - W,
        complement: Some(W),
    };
    let mut t = match id {
        "4.1" => Table {
            reaches: vec![
                reach(Column::LevinD, 15, false),
                reach(Column::WenigerDelta, 15, false),
            ],
            euler_at: Some((15, 0.100_577_817_763_434e3)),
            ..base(zeta(1.01, 0.0), 1e-3, 15, real(0.100_577_943_338_497e3))
        },
        "4.2" => Table {
            tolerance: Tolerance::Ulps(8.0),
            levin_tolerance: Some(rel),
            reaches: vec![
                reach(Column::WenigerDelta, 3, true),
                reach(Column::LevinD, 13, false),
            ],
            ..base(zeta(-1.0, 0.0), 10.0, 15, real(-1.0 / 12.0))
        },
        "4.3" => Table {
            tolerance: Tolerance::PerComponent(1e-12),
            reaches: vec![
                reach(Column::LevinD, 19, false),
                reach(Column::WenigerDelta, 21, false),
            ],
            ..base(
                zeta(0.5, 13.7),
                1.0,
                25,
                Complex64::new(0.107_439_455_835_313, -0.312_976_660_556_163),
            )
        },
        "5.1" => base(polylog(1.0), 1e-2, 20, real(0.115_129_254_649_702e2)),
        "5.2" => base(polylog(2.0), 1e-1, 15, real(0.164_480_893_699_293e1)),
        "5.3" => base(polylog(3.0), 1e-1, 15, real(0.120_204_045_438_733e1)),
        "5.4" => base(
            Problem::Lerch {
                params: LerchParams {
                    z: 1.0 - W,
                    s: 2.0,
                    alpha: 1e4,
                },
                complement: Some(W),
            },
            1e4,
            20,
            real(0.798_585_139_222_548e-4),
        ),
        "6.1" => base(
            hyp(&[1.0, 1.5, 5.0], &[1.125, 5.875], W),
            1e-4,
            20,
            real(0.238_434_298_763_330e4),
        ),
        "6.2" => base(
            hyp(&[1.0, 3.0, 7.0], &[2.5, 14.0], W),
            1e-1,
            20,
            real(0.267_102_823_984_762e1),
        ),
        "6.3" => base(
            hyp(&[1.0, 3.0, 7.0], &[2.5, 14.0], 0.0),
            1e-1,
            20,
            real(567_567.0 * PI * PI / 2_097_152.0),
        ),
        "7.1" => Table {
            max_term_evaluations: Some(600),
            ..base(
                Problem::BesselSum {
                    params: BesselSumParams {
                        r: 1.0 - BESSEL.0,
                        y: BESSEL.1,
                    },
                    complement: Some(BESSEL.0),
                },
                1e-5,
                25,
                real(
                    -bessel_sum_closed_form_complement(BESSEL.0, BESSEL.1)
                        .expect("valid parameters"),
                ),
            )
        },
        _ => return None,
    };
    t.id = TABLE_IDS.iter().find(|&&k| k == id)?;
    Some(t)
}

impl Table {
    /// Settings for this table: its own scale and row count unless the
    /// caller overrides them.
    pub fn settings(&self, base: &Settings, scale: Option<f64>, orders: Option<usize>) -> Settings {
        Settings {
            options: base.options,
            scale: scale.unwrap_or(self.scale),
            orders: Some(orders.unwrap_or(self.max_n)),
        }
    }

    pub fn report(&self, settings: &Settings) -> Result<Report, CliError> {
        let mut r = self.problem.evaluate(settings)?;
        r.params.insert("table".into(), self.id.into());
        Ok(r)
    }

    fn tolerance_for(&self, transform: &str) -> Tolerance {
        match (transform, self.levin_tolerance) {
            ("levin-d", Some(t)) => t,
            _ => self.tolerance,
        }
    }

    /// Compare a report produced with `scale` against the references.
    pub fn check(&self, report: &Report, scale: f64) -> Check {
        let reference = if self.reference.im == 0.0 {
            Num::of(self.reference.re * scale)
        } else {
            Num::of(self.reference * scale)
        };
        let mut passed = true;
        let mut details = Vec::new();
        let mut verdict = |ok: bool, text: String| {
            passed &= ok;
            details.push(format!("{} {text}", if ok { "ok  " } else { "FAIL" }));
        };

        let mut finals = vec![(report.transform.as_str(), report.value, report.converged)];
        if let Some(c) = &report.companion {
            finals.push((c.transform.as_str(), c.value, c.converged));
        }
        for (transform, value, converged) in finals {
            let tol = self.tolerance_for(transform);
            verdict(
                converged && tol.accepts(value, reference),
                format!(
                    "{transform} converged value {} within {}{}",
                    value,
                    tol.describe(),
                    if converged { "" } else { " (not converged)" }
                ),
            );
        }

        for r in &self.reaches {
            let tol = self.tolerance_for(r.column.name());
            let within = |row: &Row| r.column.get(row).is_some_and(|v| tol.accepts(v, reference));
            let ok = match report.rows.get(r.by) {
                None => false,
                Some(_) if r.stays => report.rows[r.by..].iter().all(within),
                Some(row) => within(row),
            };
            let how = if r.stays { "from" } else { "at" };
            verdict(
                ok,
                format!(
                    "{} within {} {how} order {}",
                    r.column.name(),
                    tol.describe(),
                    r.by
                ),
            );
        }

        if let Some((n, e)) = self.euler_at {
            let want = Num::of(real(e * scale));
            let got = report.rows.get(n).and_then(|row| row.euler);
            let ok = got.is_some_and(|g| self.tolerance.accepts(g, want));
            verdict(
                ok,
                format!(
                    "euler at n={n} equals {want} within {}",
                    self.tolerance.describe()
                ),
            );
        }

        if let Some(limit) = self.max_term_evaluations {
            let used = report.term_evaluations;
            verdict(
                used <= limit,
                format!("{used} term evaluations, limit {limit}"),
            );
        }

        Check {
            passed,
            reference,
            details,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_resolves() {
        for id in TABLE_IDS {
            assert_eq!(table(id).unwrap().id, id);
        }
        assert!(table("9.9").is_none());
    }

    #[test]
    fn watson_constant() {
        let t = table("6.3").unwrap();
        assert!((t.reference.re * 0.1 - 0.267_108_047_538_428).abs() < 5e-16);
    }

    #[test]
    fn tolerances() {
        let one = Num::of(1.0f64);
        assert!(Tolerance::Ulps(8.0).accepts(Num::of(1.0 + 4.0 * f64::EPSILON), one));
        assert!(!Tolerance::Ulps(8.0).accepts(Num::of(1.0 + 16.0 * f64::EPSILON), one));
        assert!(Tolerance::Relative(1e-3).accepts(Num::of(1.0005), one));
        let z = Num::of(Complex64::new(1.0, -1.0));
        assert!(
            Tolerance::PerComponent(1e-12).accepts(Num::of(Complex64::new(1.0 + 5e-13, -1.0)), z)
        );
        assert!(
            !Tolerance::PerComponent(1e-12).accepts(Num::of(Complex64::new(1.0, -1.0 + 2e-12)), z)
        );
    }
}
