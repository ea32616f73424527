//! Command-line front end for the `cnct` library.
//!
//! [`run`] parses arguments, evaluates the requested series and returns
//! what the `cnct` binary writes to stdout and stderr along with its exit
//! status: 0 ok, 1 failed table check, 2 usage or domain error, 3 no
//! convergence within `--max-order`.

pub mod input;
pub mod number;
pub mod problem;
pub mod report;
pub mod tables;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cnct::driver::{AccelerationOptions, Transform};
use cnct::functions::{BesselSumParams, HypParams, LerchParams};
use cnct::Complex64;
use thiserror::Error;

use crate::problem::{Problem, Settings};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cnct",
    version,
    about = "Sum slowly convergent series by condensation and nonlinear acceleration"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Relative tolerance of the stopping rule
    #[arg(long, global = true, default_value_t = 1e-14)]
    pub tol: f64,
    /// Highest transformation order tried
    #[arg(long, global = true, default_value_t = 30)]
    pub max_order: usize,
    /// Shift parameter of the weights
    #[arg(long, global = true, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, global = true, value_enum, default_value_t = TransformArg::Both)]
    pub transform: TransformArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Multiply every printed value by this factor
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub scale: Option<f64>,
    /// Print rows 0..=N
    #[arg(long, global = true)]
    pub orders: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    LevinD,
    WenigerDelta,
    Euler,
    Both,
}

impl From<TransformArg> for Transform {
    fn from(t: TransformArg) -> Self {
        match t {
            TransformArg::LevinD => Transform::LevinD,
            TransformArg::WenigerDelta => Transform::WenigerDelta,
            TransformArg::Euler => Transform::Euler,
            TransformArg::Both => Transform::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Riemann zeta function; complex arguments as `0.5+13.7i`
    Zeta {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
    },
    /// Lerch transcendent Φ(z, s, α)
    Lerch {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_argument)]
        z: Argument,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Polylogarithm Li_s(z)
    Polylog {
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_argument)]
        z: Argument,
    },
    /// Generalized hypergeometric series p+1Fp
    Hyp {
        /// Numerator parameters, comma separated; fractions like 3/2 allowed
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_fraction)]
        num: Vec<f64>,
        /// Denominator parameters
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_fraction)]
        den: Vec<f64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_argument)]
        z: Argument,
    },
    /// Sum of Bessel–Hankel products over the angular momentum l
    BesselSum {
        #[arg(long, value_parser = parse_argument)]
        r: Argument,
        #[arg(long)]
        y: f64,
    },
    /// Reproduce one of the reference tables
    Table {
        #[arg(required_unless_present = "all", value_parser = tables::TABLE_IDS)]
        id: Option<String>,
        /// Compare against the reference values
        #[arg(long)]
        check: bool,
        /// Every table, in id order
        #[arg(long, conflicts_with = "id")]
        all: bool,
    },
    /// Accelerate an alternating series whose terms are listed in a file
    Accelerate {
        #[arg(long)]
        input: PathBuf,
    },
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let bad = || format!("'{s}' is not a number or fraction");
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (
                a.trim().parse::<f64>().map_err(|_| bad())?,
                b.trim().parse::<f64>().map_err(|_| bad())?,
            );
            Ok(a / b)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// A real series argument as typed, with `1 - z` when the decimal text
/// determines it more accurately than the binary value of `z` does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argument {
    pub value: f64,
    pub complement: Option<f64>,
}

/// `1 - z` for a plain decimal `0.ddd…` above one half, computed from the
/// digits so that it is correctly rounded.
pub fn decimal_complement(text: &str) -> Option<f64> {
    let t = text.trim().trim_start_matches('+');
    let frac = t.strip_prefix("0.").or_else(|| t.strip_prefix('.'))?;
    if frac.is_empty()
        || frac.len() > 38
        || !frac.bytes().all(|b| b.is_ascii_digit())
        || !frac.starts_with(['5', '6', '7', '8', '9'])
    {
        return None;
    }
    let digits: u128 = frac.parse().ok()?;
    let k = frac.len() as u32;
    let w = 10u128.pow(k) - digits;
    format!("{w}e-{k}").parse().ok()
}

fn parse_argument(s: &str) -> Result<Argument, String> {
    let value: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    Ok(Argument {
        value,
        complement: decimal_complement(s),
    })
}

/// `x`, `x+yi`, `x-yi` or `yi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("'{s}' is not a real or complex number");
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse().map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// What the binary prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    execute(&cli).unwrap_or_else(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: EXIT_USAGE,
    })
}

fn settings(g: &Global) -> Settings {
    Settings {
        options: AccelerationOptions {
            transform: g.transform.into(),
            beta: g.beta,
            target_rel_tol: g.tol,
            max_order: g.max_order,
        },
        scale: g.scale.unwrap_or(1.0),
        orders: g.orders,
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let base = settings(g);
    let problem = match &cli.command {
        Command::Zeta { z } => Problem::Zeta { z: *z },
        Command::Lerch { z, s, alpha } => Problem::Lerch {
            params: LerchParams {
                z: z.value,
                s: *s,
                alpha: *alpha,
            },
            complement: z.complement,
        },
        Command::Polylog { s, z } => Problem::Polylog {
            s: *s,
            z: z.value,
            complement: z.complement,
        },
        Command::Hyp { num, den, z } => Problem::Hyp {
            params: HypParams {
                numerator: num.clone(),
                denominator: den.clone(),
                z: z.value,
            },
            complement: z.complement,
        },
        Command::BesselSum { r, y } => Problem::BesselSum {
            params: BesselSumParams { r: r.value, y: *y },
            complement: r.complement,
        },
        Command::Accelerate { input } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
            Problem::Terms(input::parse_terms(&text)?)
        }
        Command::Table { id, check, all } => {
            let ids: Vec<&str> = if *all {
                tables::TABLE_IDS.to_vec()
            } else {
                id.iter().map(String::as_str).collect()
            };
            return run_tables(&ids, *check, g, &base);
        }
    };
    let report = problem.evaluate(&base)?;
    let code = if report.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    };
    Ok(Outcome {
        stdout: render(std::slice::from_ref(&report), &[], g.format),
        stderr: String::new(),
        code,
    })
}

fn run_tables(ids: &[&str], check: bool, g: &Global, base: &Settings) -> Result<Outcome, CliError> {
    let specs: Vec<tables::Table> = ids
        .iter()
        .map(|id| tables::table(id).ok_or_else(|| CliError::Usage(format!("unknown table {id}"))))
        .collect::<Result<_, _>>()?;
    let one = |t: &tables::Table| -> Result<Report, CliError> {
        let s = t.settings(base, g.scale, g.orders);
        let mut r = t.report(&s)?;
        if check {
            r.check = Some(t.check(&r, s.scale));
        }
        Ok(r)
    };
    let reports: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs.iter().map(|t| scope.spawn(move || one(t))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect::<Result<_, _>>()
    })?;
    let code = if reports
        .iter()
        .any(|r| r.check.as_ref().is_some_and(|c| !c.passed))
    {
        EXIT_CHECK_FAILED
    } else if reports.iter().any(|r| !r.converged) {
        EXIT_NOT_CONVERGED
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        stdout: render(&reports, ids, g.format),
        stderr: String::new(),
        code,
    })
}

/// One report renders on its own; several are separated (text), wrapped in
/// an array (JSON) or preceded by `# table <id>` lines (CSV).
fn render(reports: &[Report], ids: &[&str], format: Format) -> String {
    if let [single] = reports {
        return match format {
            Format::Text => single.to_text(),
            Format::Json => single.to_json(),
            Format::Csv => single.to_csv(),
        };
    }
    match format {
        Format::Text => reports
            .iter()
            .map(Report::to_text)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => reports
            .iter()
            .zip(ids)
            .map(|(r, id)| format!("# table {id}\n{}", r.to_csv()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_arguments() {
        assert_eq!(
            parse_complex("0.5+13.7i").unwrap(),
            Complex64::new(0.5, 13.7)
        );
        assert_eq!(
            parse_complex("0.5 - 13.7i").unwrap(),
            Complex64::new(0.5, -13.7)
        );
        assert_eq!(parse_complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(
            parse_complex("1e-3-2e+1i").unwrap(),
            Complex64::new(1e-3, -20.0)
        );
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert!(parse_complex("1+2j").is_err());
    }

    #[test]
    fn complements_from_decimal_text() {
        assert_eq!(decimal_complement("0.99999"), Some(1e-5));
        assert_eq!(decimal_complement(".75"), Some(0.25));
        assert_eq!(decimal_complement("0.9999999999999999999"), Some(1e-19));
        assert_eq!(decimal_complement("0.25"), None);
        assert_eq!(decimal_complement("1"), None);
        assert_eq!(decimal_complement("-0.9"), None);
        assert_eq!(decimal_complement("9.9e-1"), None);
        let a = parse_argument("0.99999").unwrap();
        assert_eq!(a.value, 0.99999);
    }

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("47/8").unwrap(), 5.875);
        assert_eq!(parse_fraction("-2.5").unwrap(), -2.5);
        assert!(parse_fraction("1/x").is_err());
    }

    #[test]
    fn unknown_table_is_a_usage_error() {
        let out = run(["cnct", "table", "9.9"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn domain_errors_exit_with_two() {
        let out = run(["cnct", "polylog", "--s", "2", "--z", "1.5"]);
        assert_eq!(out.code, EXIT_USAGE, "{out:?}");
        assert!(out.stderr.starts_with("error:"));
    }

    #[test]
    fn non_convergence_exits_with_three() {
        let out = run([
            "cnct",
            "bessel-sum",
            "--r",
            "0.9999",
            "--y",
            "0.7",
            "--max-order",
            "4",
        ]);
        assert_eq!(out.code, EXIT_NOT_CONVERGED);
        assert!(out.stdout.contains("converged         no"));
    }
}
