//! Command-line front end.
//!
//! Rationals are printed as `p/q` in lowest terms; decimal renderings use
//! `--precision` digits. Exit codes: 0 success, 1 domain error or failed
//! verification (a JSON error object goes to stderr), 2 usage error.
//! `TAU_MEAN_THREADS` caps the worker count (0 or unset = automatic).

use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::asymptotics::{error_curve, limit_highprecision, ErrorCurveRow};
use crate::decimal::{ratio_string, to_fixed};
use crate::error::{Error, Result};
use crate::irrationality::{density_profile, erdos_criterion, CriterionConfig};
use crate::lcm_engine::BProfile;
use crate::series::{average_bruteforce, average_closedform, series_partial, AverageReport};
use crate::set_model::{split_set_list, SetSpec};
use crate::tau::{phi_bruteforce, phi_closed, tau_bruteforce, tau_structured};
use crate::verify::{self, VerifyConfig};
use crate::ExactRational;

pub const THREADS_ENV: &str = "TAU_MEAN_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Per-invocation output settings.
#[derive(Clone, Debug)]
pub struct OutputConfig {
    pub format: Option<Format>,
    pub precision: usize,
    pub seed: Option<u64>,
}

impl OutputConfig {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tau-mean",
    version,
    about = "Smallest non-divisors, lcm series and their averages"
)]
struct Cli {
    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Decimal digits in rendered rationals.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    precision: u64,
    /// Seed for randomized test sets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TauMethod {
    Brute,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AverageMethod {
    Brute,
    Closed,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// tau_N, or (n, tau_n) rows over a range.
    Tau {
        #[arg(long)]
        set: String,
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        n: Option<u64>,
        /// `A..B`, inclusive.
        #[arg(long)]
        range: Option<String>,
        #[arg(long, value_enum, default_value = "structured")]
        method: TauMethod,
    },
    /// Occurrences of alpha among tau_1..tau_x.
    Phi {
        #[arg(long)]
        set: String,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        x: u64,
    },
    /// The reduced-set table (k, b_k, L_k, Lambda_k).
    Profile {
        #[arg(long)]
        set: String,
        #[arg(long)]
        up_to: u64,
    },
    /// Running average of tau up to N.
    Average {
        #[arg(long)]
        set: String,
        #[arg(long = "N", alias = "n")]
        n: u64,
        #[arg(long, value_enum, default_value = "closed")]
        method: AverageMethod,
    },
    /// Partial sum of the lcm series through n_max.
    Series {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n_max: u64,
    },
    /// Empirically stabilized value of the lcm series.
    Limit {
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Error of the running average against the limit on a grid of N.
    Errcurve {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "1e3,1e4,1e5,1e6")]
        grid: String,
        #[arg(long, default_value_t = 40)]
        limit_digits: usize,
    },
    /// count(N)/N on a grid of N.
    Density {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "1e3,1e4,1e5,1e6")]
        grid: String,
    },
    /// Whether the density condition for an irrational limit applies.
    Criterion {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "1e3,1e4,1e5,1e6")]
        grid: String,
        #[arg(long, default_value_t = 0.02)]
        margin: f64,
    },
    /// Run the full invariant suite.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        max_n: u64,
        #[arg(
            long,
            default_value = "naturals,primes,squarefree,prime-powers,geometric:2,arithmetic:3,4"
        )]
        sets: String,
        #[arg(long, default_value_t = 1_000_000)]
        boundary_max: u64,
        #[arg(long, default_value_t = 100_000)]
        squarefree_max: u64,
    },
}

/// Parse `1e3`-style or plain integers.
pub fn parse_count(s: &str) -> Result<u64> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a positive integer"));
    let t = s.trim();
    match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m: u64 = m.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            10u64
                .checked_pow(e)
                .and_then(|p| p.checked_mul(m))
                .ok_or_else(bad)
        }
        None => t.parse().map_err(|_| bad()),
    }
}

pub fn parse_grid(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_count)
        .collect()
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a range A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a = parse_count(a)?;
    let b = parse_count(b.trim_start_matches('='))?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn rational_json(r: &ExactRational) -> String {
    ratio_string(r)
}

#[derive(Serialize)]
struct AverageJson {
    #[serde(rename = "N")]
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(rename = "S1", skip_serializing_if = "Option::is_none")]
    s1: Option<String>,
    #[serde(rename = "S2", skip_serializing_if = "Option::is_none")]
    s2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    average: String,
    average_decimal: String,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

impl AverageJson {
    fn from_report(rep: &AverageReport, precision: usize) -> Self {
        AverageJson {
            n: rep.n,
            r: Some(rep.r),
            s1: Some(rational_json(&rep.s1)),
            s2: Some(rational_json(&rep.s2)),
            f: Some(rational_json(&rep.f)),
            average: rational_json(&rep.average),
            average_decimal: to_fixed(&rep.average, precision),
            matches: None,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn parse_set(s: &str) -> Result<SetSpec> {
    s.parse()
}

/// Output text plus whether the run counts as a success.
fn execute(cli: &Cli) -> Result<(String, bool)> {
    let out = OutputConfig {
        format: cli.format,
        precision: cli.precision as usize,
        seed: cli.seed,
    };
    let p = out.precision;
    let mut text = String::new();
    match &cli.command {
        Command::Tau {
            set,
            n,
            range,
            method,
        } => {
            let spec = parse_set(set)?;
            let mut profile = BProfile::empty(&spec);
            let mut eval = |n: u64| match method {
                TauMethod::Brute => tau_bruteforce(&spec, n),
                TauMethod::Structured => tau_structured(&mut profile, n),
            };
            let (a, b) = match (n, range) {
                (Some(n), _) => (*n, *n),
                (None, Some(r)) => parse_range(r)?,
                (None, None) => unreachable!("clap requires --n or --range"),
            };
            let rows: Vec<(u64, u64)> = (a..=b)
                .map(|n| eval(n).map(|t| (n, t)))
                .collect::<Result<_>>()?;
            match (
                out.format_or(if n.is_some() {
                    Format::Json
                } else {
                    Format::Csv
                }),
                n,
            ) {
                (Format::Json, Some(_)) => {
                    text = to_json(&json!({"set": spec.label(), "n": rows[0].0, "tau": rows[0].1}))
                }
                (Format::Json, None) => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|(n, t)| json!({"n": n, "tau": t}))
                        .collect();
                    text = to_json(&items);
                }
                (Format::Csv, _) => {
                    text.push_str("n,tau\n");
                    for (n, t) in rows {
                        writeln!(text, "{n},{t}").unwrap();
                    }
                }
            }
        }
        Command::Phi { set, alpha, x } => {
            let spec = parse_set(set)?;
            let mut profile = BProfile::empty(&spec);
            let r = phi_closed(&mut profile, *alpha, *x)?;
            let brute = phi_bruteforce(&spec, *alpha, *x)?;
            match out.format_or(Format::Json) {
                Format::Json => {
                    text = to_json(&json!({
                        "alpha": r.alpha,
                        "x": r.x,
                        "count": r.count,
                        "main_term": rational_json(&r.main_term),
                        "correction": rational_json(&r.correction),
                        "brute_count": brute,
                        "match": brute == r.count,
                    }))
                }
                Format::Csv => {
                    text.push_str("alpha,x,count,main_term,correction,brute_count\n");
                    writeln!(
                        text,
                        "{},{},{},{},{},{}",
                        r.alpha,
                        r.x,
                        r.count,
                        rational_json(&r.main_term),
                        rational_json(&r.correction),
                        brute
                    )
                    .unwrap();
                }
            }
        }
        Command::Profile { set, up_to } => {
            let spec = parse_set(set)?;
            let profile = BProfile::build(&spec, *up_to)?;
            match out.format_or(Format::Csv) {
                Format::Csv => {
                    text.push_str("k,b,L,Lambda\n");
                    for e in profile.elements() {
                        writeln!(text, "{},{},{},{}", e.index, e.value, e.jump, e.lcm).unwrap();
                    }
                }
                Format::Json => {
                    let items: Vec<_> = profile
                        .elements()
                        .iter()
                        .map(|e| {
                            json!({"k": e.index, "b": e.value, "L": e.jump, "Lambda": e.lcm.to_string()})
                        })
                        .collect();
                    text = to_json(&items);
                }
            }
        }
        Command::Average { set, n, method } => {
            let spec = parse_set(set)?;
            let mut profile = BProfile::empty(&spec);
            let body = match method {
                AverageMethod::Brute => {
                    let avg = average_bruteforce(&spec, *n)?;
                    AverageJson {
                        n: *n,
                        r: None,
                        s1: None,
                        s2: None,
                        f: None,
                        average: rational_json(&avg),
                        average_decimal: to_fixed(&avg, p),
                        matches: None,
                    }
                }
                AverageMethod::Closed => {
                    AverageJson::from_report(&average_closedform(&mut profile, *n)?, p)
                }
                AverageMethod::Both => {
                    let rep = average_closedform(&mut profile, *n)?;
                    let brute = average_bruteforce(&spec, *n)?;
                    let mut j = AverageJson::from_report(&rep, p);
                    j.matches = Some(brute == rep.average);
                    j
                }
            };
            match out.format_or(Format::Json) {
                Format::Json => text = to_json(&body),
                Format::Csv => {
                    text.push_str("N,r,S1,S2,f,average,average_decimal\n");
                    let opt = |o: &Option<String>| o.clone().unwrap_or_default();
                    writeln!(
                        text,
                        "{},{},{},{},{},{},{}",
                        body.n,
                        body.r.map(|r| r.to_string()).unwrap_or_default(),
                        opt(&body.s1),
                        opt(&body.s2),
                        opt(&body.f),
                        body.average,
                        body.average_decimal
                    )
                    .unwrap();
                }
            }
            if body.matches == Some(false) {
                return Ok((text, false));
            }
        }
        Command::Series { set, n_max } => {
            let spec = parse_set(set)?;
            let s = series_partial(&spec, *n_max)?;
            let value = rational_json(&s.value);
            let last = rational_json(&s.last_term);
            let decimal = to_fixed(&s.value, p);
            match out.format_or(Format::Json) {
                Format::Json => {
                    text = to_json(&json!({
                        "terms_through_n": s.terms_through_n,
                        "value": value,
                        "last_term": last,
                        "decimal": decimal,
                    }))
                }
                Format::Csv => {
                    text.push_str("terms_through_n,value,last_term,decimal\n");
                    writeln!(text, "{},{value},{last},{decimal}", s.terms_through_n).unwrap();
                }
            }
        }
        Command::Limit { set, digits } => {
            let spec = parse_set(set)?;
            let est = limit_highprecision(&spec, *digits)?;
            match out.format_or(Format::Json) {
                Format::Json => {
                    text = to_json(&json!({
                        "set": spec.label(),
                        "digits": est.digits,
                        "value": est.decimal,
                        "terms_through_n": est.terms_through_n,
                        "blocks": est.blocks,
                        "status": "empirically stabilized",
                    }))
                }
                Format::Csv => {
                    text.push_str("set,digits,value,terms_through_n,blocks\n");
                    writeln!(
                        text,
                        "{},{},{},{},{}",
                        spec.label(),
                        est.digits,
                        est.decimal,
                        est.terms_through_n,
                        est.blocks
                    )
                    .unwrap();
                }
            }
        }
        Command::Errcurve {
            set,
            grid,
            limit_digits,
        } => {
            let spec = parse_set(set)?;
            let grid = parse_grid(grid)?;
            let limit = limit_highprecision(&spec, *limit_digits)?;
            let rows = error_curve(&spec, &limit.decimal, &grid, p)?;
            match out.format_or(Format::Csv) {
                Format::Csv => {
                    text.push_str(ErrorCurveRow::CSV_HEADER);
                    text.push('\n');
                    for row in &rows {
                        text.push_str(&row.csv_line());
                        text.push('\n');
                    }
                }
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({"N": r.n, "average": r.average, "limit": r.limit,
                                   "abs_error": r.abs_error, "bound": r.bound, "ratio": r.ratio})
                        })
                        .collect();
                    text = to_json(&items);
                }
            }
        }
        Command::Density { set, grid } => {
            let spec = parse_set(set)?;
            let est = density_profile(&spec, &parse_grid(grid)?)?;
            let analytic = est.analytic.as_ref().map(|a| a.render(p));
            match out.format_or(Format::Json) {
                Format::Json => {
                    let ratios: Vec<_> = est
                        .grid
                        .iter()
                        .zip(&est.ratios)
                        .map(|(n, r)| json!({"N": n, "ratio": rational_json(r), "decimal": to_fixed(r, p)}))
                        .collect();
                    text = to_json(&json!({
                        "set": spec.label(),
                        "ratios": ratios,
                        "running_min_tail": rational_json(&est.running_min_tail),
                        "running_min_tail_status": "empirical",
                        "analytic_density": analytic,
                    }))
                }
                Format::Csv => {
                    text.push_str("N,ratio,decimal\n");
                    for (n, r) in est.grid.iter().zip(&est.ratios) {
                        writeln!(text, "{n},{},{}", rational_json(r), to_fixed(r, p)).unwrap();
                    }
                }
            }
        }
        Command::Criterion { set, grid, margin } => {
            let spec = parse_set(set)?;
            let est = density_profile(&spec, &parse_grid(grid)?)?;
            let report = erdos_criterion(
                &est,
                &CriterionConfig {
                    digits: p,
                    margin: *margin,
                },
            );
            match out.format_or(Format::Json) {
                Format::Json => text = to_json(&report),
                Format::Csv => {
                    text.push_str("set,verdict,threshold,density,evidence,transfer\n");
                    writeln!(
                        text,
                        "{},{},{},{},{},{}",
                        report.set,
                        serde_json::to_value(report.verdict)
                            .unwrap()
                            .as_str()
                            .unwrap(),
                        report.threshold,
                        report.density,
                        serde_json::to_value(report.evidence)
                            .unwrap()
                            .as_str()
                            .unwrap(),
                        report.transfer.as_deref().unwrap_or("").replace(',', ";"),
                    )
                    .unwrap();
                }
            }
        }
        Command::Verify {
            max_n,
            sets,
            boundary_max,
            squarefree_max,
        } => {
            let mut specs = split_set_list(sets)
                .iter()
                .map(|s| parse_set(s))
                .collect::<Result<Vec<_>>>()?;
            if let Some(seed) = out.seed {
                specs.push(SetSpec::random(64, 400, seed)?);
            }
            let config = VerifyConfig {
                sets: specs,
                max_n: *max_n,
                boundary_max: *boundary_max,
                squarefree_max: *squarefree_max,
                ..VerifyConfig::default()
            };
            let report = verify::run(&config)?;
            match out.format_or(Format::Csv) {
                Format::Csv => text = report.to_csv(),
                Format::Json => text = to_json(&report),
            }
            let ok = report.passed();
            if !ok {
                let first = report.failures().next().expect("a failure exists");
                let _ = writeln!(
                    text,
                    "# FAILED {} [{}]: {}",
                    first.check,
                    first.set,
                    first.counterexample.as_deref().unwrap_or("")
                );
            }
            return Ok((text, ok));
        }
    }
    Ok((text, true))
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Parse `argv`, dispatch, write output; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = thread_count() {
        // Fails only if a pool already exists (e.g. repeated in-process calls).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let err = json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{err}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_grids() {
        assert_eq!(parse_count("1e3").unwrap(), 1000);
        assert_eq!(parse_count("25").unwrap(), 25);
        assert_eq!(parse_count("2e2").unwrap(), 200);
        assert!(parse_count("x").is_err());
        assert!(parse_count("1e30").is_err());
        assert_eq!(parse_grid("1e3, 1e4").unwrap(), vec![1000, 10_000]);
        assert_eq!(parse_range("3..7").unwrap(), (3, 7));
        assert!(parse_range("7..3").is_err());
    }

    fn output(args: &[&str]) -> String {
        let mut argv = vec!["tau-mean"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).unwrap();
        execute(&cli).unwrap().0
    }

    #[test]
    fn average_both_reports_a_match() {
        let text = output(&[
            "average", "--set", "naturals", "--N", "10", "--method", "both", "--format", "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["average"], "13/5");
        assert_eq!(v["match"], true);
        assert_eq!(v["r"], 3);
    }

    #[test]
    fn profile_csv() {
        let text = output(&["profile", "--set", "primes", "--up-to", "10"]);
        assert_eq!(
            text,
            "k,b,L,Lambda\n1,2,2,2\n2,3,3,6\n3,5,5,30\n4,7,7,210\n"
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["tau-mean", "frobnicate"]), 2);
        assert_eq!(
            run(["tau-mean", "tau", "--set", "naturals", "--bogus", "1"]),
            2
        );
    }

    #[test]
    fn domain_errors_exit_one() {
        assert_eq!(
            run(["tau-mean", "phi", "--set", "naturals", "--alpha", "6", "--x", "10"]),
            1
        );
        assert_eq!(
            run(["tau-mean", "tau", "--set", "geometric:1", "--n", "3"]),
            1
        );
    }
}
