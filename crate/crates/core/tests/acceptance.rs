//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::BigRational;

use tau_mean::asymptotics::{error_curve, limit_highprecision};
use tau_mean::decimal::to_fixed;
use tau_mean::irrationality::{
    density_profile, erdos_criterion, erdos_threshold, squarefree_primorial_identity,
    CriterionConfig, Verdict,
};
use tau_mean::verify::{self, CheckResult, VerifyConfig};
use tau_mean::{average_closedform, series_partial, BProfile, Result, SetSpec};

const GRID: [u64; 4] = [1_000, 10_000, 100_000, 1_000_000];
const RATIO_CEILING: f64 = 10.0;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }

    fn from_checks(checks: &[CheckResult]) -> Self {
        match checks.iter().find(|c| !c.passed) {
            Some(c) => Outcome::new(
                false,
                format!(
                    "{} [{}]: {}",
                    c.check,
                    c.set,
                    c.counterexample.as_deref().unwrap_or("")
                ),
            ),
            None => Outcome::new(true, format!("{} checks", checks.len())),
        }
    }
}

fn builtin_sets() -> Vec<SetSpec> {
    VerifyConfig::default_sets()
}

fn tau_oracle() -> Result<Outcome> {
    let mut sets: Vec<SetSpec> = [
        "naturals",
        "primes",
        "squarefree",
        "geometric:2",
        "arithmetic:3,4",
    ]
    .iter()
    .map(|s| s.parse())
    .collect::<Result<_>>()?;
    sets.push(SetSpec::random(64, 400, 2024)?);
    let checks = sets
        .iter()
        .map(|s| verify::check_tau(s, 10_000))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::from_checks(&checks))
}

fn phi_oracle() -> Result<Outcome> {
    let config = VerifyConfig::default();
    let checks = builtin_sets()
        .iter()
        .map(|s| verify::check_phi(s, &config))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::from_checks(&checks))
}

fn average_identity() -> Result<Outcome> {
    let mut checks = Vec::new();
    for spec in [SetSpec::naturals(), SetSpec::primes()] {
        checks.push(verify::check_averages(&spec, 10_000)?);
        checks.push(verify::check_boundaries(&spec, 1_000_000)?);
    }
    Ok(Outcome::from_checks(&checks))
}

fn error_bound(spec: SetSpec) -> Result<Outcome> {
    let limit = limit_highprecision(&spec, 40)?;
    let rows = error_curve(&spec, &limit.decimal, &GRID, 12)?;
    let worst = rows
        .iter()
        .map(|r| r.ratio_value)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Outcome::new(
        worst <= RATIO_CEILING,
        format!(
            "limit={} max ratio={worst:.4} ceiling={RATIO_CEILING}",
            limit.decimal
        ),
    ))
}

fn divergent_geometric() -> Result<Outcome> {
    let spec = SetSpec::geometric(2)?;
    let mut profile = BProfile::empty(&spec);
    let mut average = |m: u32| -> Result<BigRational> {
        Ok(average_closedform(&mut profile, 1u64 << m)?.average)
    };
    for m in 2..=20u32 {
        let a = average(m)?;
        if a < BigRational::from_integer((m as i64 - 5).into()) {
            return Ok(Outcome::new(
                false,
                format!("average(2^{m}) = {a} < {}", m as i64 - 5),
            ));
        }
    }
    let growth = average(20)? - average(10)?;
    let five = BigRational::from_integer(5.into());
    Ok(Outcome::new(
        growth > five,
        format!(
            "average(2^m) >= m-5 for 2<=m<=20; growth 2^10->2^20 = {}",
            to_fixed(&growth, 6)
        ),
    ))
}

fn structural() -> Result<Outcome> {
    let mut checks = Vec::new();
    for spec in builtin_sets() {
        checks.push(verify::check_lcm_structure(&spec, 10_000)?);
        checks.push(verify::check_block_series(&spec, 10_000)?);
    }
    Ok(Outcome::from_checks(&checks))
}

fn squarefree_transfer() -> Result<Outcome> {
    let identity = squarefree_primorial_identity(100_000);
    if !identity.holds {
        return Ok(Outcome::new(
            false,
            format!("identity fails at n={:?}", identity.first_counterexample),
        ));
    }
    let squarefree = SetSpec::squarefree();
    let primes = SetSpec::primes();
    for n in 1..=1_000 {
        if series_partial(&squarefree, n)?.value != series_partial(&primes, n)?.value {
            return Ok(Outcome::new(false, format!("series differ at n={n}")));
        }
    }
    Ok(Outcome::new(true, "identity n<=100000, series n<=1000"))
}

fn criterion_verdicts() -> Result<Outcome> {
    let config = CriterionConfig::default();
    let verdict = |spec: SetSpec| -> Result<_> {
        Ok(erdos_criterion(&density_profile(&spec, &GRID)?, &config))
    };
    let naturals = verdict(SetSpec::naturals())?;
    let squarefree = verdict(SetSpec::squarefree())?;
    let geometric = verdict(SetSpec::geometric(2)?)?;
    let primes = verdict(SetSpec::primes())?;
    let threshold = to_fixed(&erdos_threshold(5), 5);
    let ok = naturals.verdict == Verdict::Passes
        && squarefree.verdict == Verdict::Passes
        && geometric.verdict == Verdict::Fails
        && primes.verdict == Verdict::Fails
        && primes.transfer.is_some()
        && threshold == "0.30685"
        && naturals.threshold.starts_with("0.30685");
    let name = |v: Verdict| format!("{v:?}").to_lowercase();
    Ok(Outcome::new(
        ok,
        format!(
            "naturals={} squarefree={} geometric:2={} primes={}{} threshold={}",
            name(naturals.verdict),
            name(squarefree.verdict),
            name(geometric.verdict),
            name(primes.verdict),
            if primes.transfer.is_some() {
                "(transfer)"
            } else {
                ""
            },
            naturals.threshold
        ),
    ))
}

fn determinism() -> Result<Outcome> {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_tau-mean"))
            .arg("verify")
            .env("TAU_MEAN_THREADS", threads)
            .output()
            .expect("spawn tau-mean")
    };
    let one = run("1");
    let eight = run("8");
    let ok = one.status.success() && eight.status.success() && one.stdout == eight.stdout;
    Ok(Outcome::new(
        ok,
        format!(
            "exit {:?}/{:?}, {} vs {} bytes",
            one.status.code(),
            eight.status.code(),
            one.stdout.len(),
            eight.stdout.len()
        ),
    ))
}

type Criterion = (&'static str, Option<Duration>, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 10] = [
        ("tau oracle equivalence", secs(30), tau_oracle),
        ("phi oracle equivalence", secs(60), phi_oracle),
        ("average identity", None, average_identity),
        ("naturals error bound", secs(5), || {
            error_bound(SetSpec::naturals())
        }),
        ("primes error bound", secs(5), || {
            error_bound(SetSpec::primes())
        }),
        ("geometric:2 divergence", secs(5), divergent_geometric),
        ("structural invariants", None, structural),
        ("squarefree transfer", secs(60), squarefree_transfer),
        ("criterion verdicts", None, criterion_verdicts),
        ("determinism", None, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let passed = outcome.passed && in_time;
        if !passed {
            failed += 1;
        }
        let budget_note = budget.map_or(String::new(), |b| format!(" (limit {}s)", b.as_secs()));
        println!(
            "{} {:>2} {name}: {} [{:.2}s{budget_note}]",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            elapsed.as_secs_f64(),
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
