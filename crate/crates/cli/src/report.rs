//! The record every command produces, and its text, JSON and CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::number::{Num, Real};

/// One table row. Missing columns stay empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub partial_sum: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levin_d: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weniger_delta: Option<Num>,
}

/// Outcome of comparing a table against its reference value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub reference: Num,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Companion {
    pub transform: String,
    pub value: Num,
    pub order_used: usize,
    pub converged: bool,
}

/// Everything a command reports. All values are already multiplied by the
/// display scale recorded in `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub problem: String,
    pub params: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
    pub transform: String,
    pub value: Num,
    pub order_used: usize,
    pub error_estimate: Real,
    pub term_evaluations: u64,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub companion: Option<Companion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<Check>,
}

fn param_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", param_text(v)))
            .collect();
        let _ = writeln!(out, "{}  {}", self.problem, params.join("  "));
        out.push('\n');

        type Column = (&'static str, fn(&Row) -> Option<Num>);
        let all: [Column; 4] = [
            ("S_n", |r| Some(r.partial_sum)),
            ("E_n", |r| r.euler),
            ("d_n", |r| r.levin_d),
            ("delta_n", |r| r.weniger_delta),
        ];
        let columns: Vec<&Column> = all
            .iter()
            .filter(|(_, get)| self.rows.iter().any(|r| get(r).is_some()))
            .collect();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                std::iter::once(r.n.to_string())
                    .chain(
                        columns
                            .iter()
                            .map(|(_, get)| get(r).map_or_else(|| "-".to_string(), Num::grouped)),
                    )
                    .collect()
            })
            .collect();
        let headers: Vec<&str> = std::iter::once("n")
            .chain(columns.iter().map(|(h, _)| *h))
            .collect();
        let widths: Vec<usize> = (0..headers.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|c| c[i].len())
                    .chain([headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: &[&str]| -> String {
            let parts: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            parts.join("  ")
        };
        let _ = writeln!(out, "{}", line(&headers));
        for c in &cells {
            let refs: Vec<&str> = c.iter().map(String::as_str).collect();
            let _ = writeln!(out, "{}", line(&refs));
        }
        out.push('\n');

        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "value             {}", self.value);
        let _ = writeln!(out, "transform         {}", self.transform);
        let _ = writeln!(out, "order             {}", self.order_used);
        let _ = writeln!(out, "error estimate    {:e}", self.error_estimate.0);
        let _ = writeln!(out, "term evaluations  {}", self.term_evaluations);
        let _ = writeln!(out, "converged         {}", yes(self.converged));
        if let Some(c) = &self.companion {
            let _ = writeln!(
                out,
                "{:<18}{} (order {}, converged {})",
                c.transform,
                c.value,
                c.order_used,
                yes(c.converged)
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning           {w}");
        }
        if let Some(check) = &self.check {
            let _ = writeln!(out, "reference         {}", check.reference);
            for d in &check.details {
                let _ = writeln!(out, "  {d}");
            }
            let _ = writeln!(
                out,
                "check             {}",
                if check.passed { "pass" } else { "FAIL" }
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,partial_sum,euler,levin_d,weniger_delta\n");
        let cell = |v: Option<Num>| v.map(Num::plain).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.n,
                r.partial_sum.plain(),
                cell(r.euler),
                cell(r.levin_d),
                cell(r.weniger_delta)
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let row = |n, x: f64| Row {
            n,
            partial_sum: Num::of(x),
            euler: None,
            levin_d: Some(Num::of(x / 3.0)),
            weniger_delta: Some(Num::of(x / 7.0)),
        };
        let mut params = BTreeMap::new();
        params.insert("z".to_string(), Value::from(1.01));
        params.insert("scale".to_string(), Value::from(0.001));
        Report {
            problem: "zeta".into(),
            params,
            rows: vec![row(0, 1.0), row(1, 0.1)],
            transform: "weniger-delta".into(),
            value: Num::of(0.1 / 7.0),
            order_used: 1,
            error_estimate: Real(1.5e-17),
            term_evaluations: 4,
            converged: false,
            companion: None,
            warnings: vec![],
            check: None,
        }
    }

    #[test]
    fn empty_columns_are_dropped_from_text() {
        let text = sample().to_text();
        assert!(!text.contains("E_n"));
        assert!(text.contains("delta_n"));
        assert!(text.contains("error estimate    1.5e-17"));
    }

    #[test]
    fn csv_keeps_every_column() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("n,partial_sum,euler,levin_d,weniger_delta")
        );
        assert_eq!(
            lines.next(),
            Some("0,1,,0.3333333333333333,0.14285714285714285")
        );
    }

    #[test]
    fn json_round_trip_reproduces_text() {
        let r = sample();
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back.to_text(), r.to_text());
    }
}
