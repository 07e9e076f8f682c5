//! The invariant suite behind `tau-mean verify`.
//!
//! Every check pairs two independent routes to the same exact value and
//! reports the smallest failing parameter. Reports contain no timing or
//! thread-dependent data, so the rendered output is byte-identical across
//! runs and worker counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::irrationality::squarefree_primorial_identity;
use crate::lcm_engine::{BProfile, PrefixLcms};
use crate::series::{
    average_bruteforce, average_in, blockform_numerator, running_averages, series_partial,
};
use crate::set_model::SetSpec;
use crate::tau::{phi_in, tau_bruteforce, tau_in};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub sets: Vec<SetSpec>,
    /// Range of `n` (and `N`) for the exhaustive checks.
    pub max_n: u64,
    /// Occurrence counts are checked for reduced-set values up to this bound.
    pub phi_alpha_max: u64,
    /// Every `x` up to this bound is checked, plus `10^3` and `10^4` when within `max_n`.
    pub phi_dense_x: u64,
    /// Boundary triples `Lambda_r - 1, Lambda_r, Lambda_r + 1` for `Lambda_r` up to this bound.
    pub boundary_max: u64,
    pub squarefree_max: u64,
    /// Squarefree and prime lcm series are compared term by term up to here.
    pub series_compare_max: u64,
}

impl VerifyConfig {
    pub fn default_sets() -> Vec<SetSpec> {
        vec![
            SetSpec::naturals(),
            SetSpec::primes(),
            SetSpec::squarefree(),
            SetSpec::prime_powers(),
            SetSpec::geometric(2).expect("valid base"),
            SetSpec::arithmetic(3, 4).expect("valid progression"),
        ]
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            sets: Self::default_sets(),
            max_n: 10_000,
            phi_alpha_max: 50,
            phi_dense_x: 500,
            boundary_max: 1_000_000,
            squarefree_max: 100_000,
            series_compare_max: 1_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub set: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn outcome(check: &str, set: &str, detail: String, failure: Option<String>) -> Self {
        CheckResult {
            check: check.to_string(),
            set: set.to_string(),
            passed: failure.is_none(),
            detail,
            counterexample: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,set,status,detail,counterexample\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.check,
                c.set.replace(',', ";"),
                if c.passed { "PASS" } else { "FAIL" },
                c.detail.replace(',', ";"),
                c.counterexample.as_deref().unwrap_or("").replace(',', ";"),
            ));
        }
        out
    }
}

/// A profile whose running lcm exceeds `n`, or the complete profile of a
/// finite set that never gets there.
fn profile_past(spec: &SetSpec, n: u64) -> Result<BProfile> {
    let mut profile = BProfile::empty(spec);
    match profile.ensure_lcm_exceeds(n) {
        Ok(_) => Ok(profile),
        Err(Error::SetExhausted { .. }) if spec.is_finite() => {
            profile.extend(spec.max_member().expect("finite set has a maximum"))?;
            Ok(profile)
        }
        Err(e) => Err(e),
    }
}

/// Largest `N <= max_n` for which every `tau_n` with `n <= N` exists.
fn defined_through(profile: &BProfile, max_n: u64) -> u64 {
    if !profile.spec().is_finite() {
        return max_n;
    }
    let last = profile.lcm_at(profile.len());
    if last > &BigUint::from(max_n) {
        max_n
    } else {
        // n = Lambda_final is divisible by every member
        last.to_string().parse::<u64>().expect("below max_n") - 1
    }
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    for spec in &config.sets {
        checks.push(check_tau(spec, config.max_n)?);
        checks.push(check_phi(spec, config)?);
        checks.push(check_averages(spec, config.max_n)?);
        checks.push(check_boundaries(spec, config.boundary_max)?);
        checks.push(check_lcm_structure(spec, config.max_n)?);
        checks.push(check_block_series(spec, config.max_n)?);
    }
    checks.push(check_squarefree_transfer(config)?);
    Ok(VerifyReport { checks })
}

/// `tau_n` by scan and by structure, `1 <= n <= max_n`.
pub fn check_tau(spec: &SetSpec, max_n: u64) -> Result<CheckResult> {
    let profile = profile_past(spec, max_n)?;
    let agrees = |n: u64| -> bool {
        let brute = tau_bruteforce(spec, n).ok();
        let structured = tau_in(&profile, n).ok();
        brute == structured
    };
    let failure = (1..=max_n)
        .into_par_iter()
        .find_first(|&n| !agrees(n))
        .map(|n| {
            format!(
                "n={n} brute={:?} structured={:?}",
                tau_bruteforce(spec, n).ok(),
                tau_in(&profile, n).ok()
            )
        });
    Ok(CheckResult::outcome(
        "tau-oracle",
        spec.label(),
        format!("n<={max_n}"),
        failure,
    ))
}

fn phi_grid(config: &VerifyConfig) -> Vec<u64> {
    let mut xs: Vec<u64> = (1..=config.phi_dense_x.min(config.max_n)).collect();
    xs.extend(
        [1_000, 10_000]
            .into_iter()
            .filter(|&x| x > config.phi_dense_x && x <= config.max_n),
    );
    xs
}

/// Closed-form occurrence counts against counts of brute-force `tau_n`.
pub fn check_phi(spec: &SetSpec, config: &VerifyConfig) -> Result<CheckResult> {
    let xs = phi_grid(config);
    let x_max = xs.last().copied().unwrap_or(0);
    let alpha_bound = match spec.max_member() {
        Some(max) => config.phi_alpha_max.min(max),
        None => config.phi_alpha_max,
    };
    let profile = BProfile::build(spec, alpha_bound.max(1))?;
    let alphas: Vec<u64> = profile.elements().iter().map(|e| e.value).collect();

    let taus: Vec<Option<u64>> = (1..=x_max)
        .into_par_iter()
        .map(|n| tau_bruteforce(spec, n).ok())
        .collect();

    let mut failure = None;
    'outer: for &alpha in &alphas {
        let mut count = 0u64;
        let mut next = xs.iter().peekable();
        for (i, t) in taus.iter().enumerate() {
            let x = i as u64 + 1;
            if *t == Some(alpha) {
                count += 1;
            }
            if next.peek() == Some(&&x) {
                next.next();
                let closed = phi_in(&profile, alpha, x)?;
                if closed.count != count || !closed.correction_in_bounds() {
                    failure = Some(format!(
                        "alpha={alpha} x={x} brute={count} closed={} correction={}",
                        closed.count, closed.correction
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(CheckResult::outcome(
        "phi-oracle",
        spec.label(),
        format!("alphas={} x-points={} |c|<1", alphas.len(), xs.len()),
        failure,
    ))
}

/// Closed-form running averages, exact against brute force for every `N <= max_n`,
/// with `|f| < 1` and the divergence lower bound.
pub fn check_averages(spec: &SetSpec, max_n: u64) -> Result<CheckResult> {
    let profile = profile_past(spec, max_n)?;
    let max_n = defined_through(&profile, max_n);
    let brute = running_averages(spec, max_n)?;
    let failure = (1..=max_n)
        .into_par_iter()
        .map(|n| -> Result<Option<String>> {
            let rep = average_in(&profile, n)?;
            let expected = &brute[n as usize - 1];
            let r = rep.r;
            let bound = crate::series::series_blockform(&profile, r - 1)?
                - crate::ExactRational::from_integer(4.into());
            Ok(if &rep.average != expected {
                Some(format!("N={n} brute={expected} closed={}", rep.average))
            } else if !rep.f_in_bounds() || rep.average != &rep.s1 + &rep.s2 * &rep.f {
                Some(format!("N={n} f={} out of bounds", rep.f))
            } else if bound > rep.average {
                Some(format!("N={n} lower bound {bound} exceeds average"))
            } else {
                None
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(CheckResult::outcome(
        "average-identity",
        spec.label(),
        format!("N<={max_n} |f|<1"),
        failure,
    ))
}

/// Brute force against closed form at `Lambda_r - 1, Lambda_r, Lambda_r + 1`.
pub fn check_boundaries(spec: &SetSpec, boundary_max: u64) -> Result<CheckResult> {
    let profile = profile_past(spec, boundary_max.saturating_add(1))?;
    let limit = defined_through(&profile, boundary_max.saturating_add(1));
    let target = BigUint::from(boundary_max);
    let points: Vec<u64> = profile
        .elements()
        .iter()
        .filter(|e| e.lcm <= target)
        .flat_map(|e| {
            let l: u64 = e.lcm.to_string().parse().expect("below a u64 bound");
            [l - 1, l, l + 1]
        })
        .filter(|&n| n >= 1 && n <= limit)
        .collect();
    let mut failure = None;
    for &n in &points {
        let brute = average_bruteforce(spec, n)?;
        let closed = average_in(&profile, n)?;
        if closed.average != brute || !closed.f_in_bounds() {
            failure = Some(format!("N={n} brute={brute} closed={}", closed.average));
            break;
        }
    }
    Ok(CheckResult::outcome(
        "average-boundaries",
        spec.label(),
        format!("points={} Lambda<={boundary_max}", points.len()),
        failure,
    ))
}

/// `L_k >= 2`, `Lambda_k = Lambda_{k-1} L_k >= 2^k`, `b_k <= Lambda_k`, and the
/// prefix lcm over `A` equal to the one over the reduced set for every `n <= max_n`.
pub fn check_lcm_structure(spec: &SetSpec, max_n: u64) -> Result<CheckResult> {
    let bound = spec.max_member().map_or(max_n, |m| m.min(max_n));
    let profile = BProfile::build(spec, bound)?;
    let mut failure = None;
    let mut prev = BigUint::one();
    for (i, e) in profile.elements().iter().enumerate() {
        let k = i + 1;
        if e.jump < 2 {
            failure = Some(format!("k={k} L={}", e.jump));
        } else if e.lcm != &prev * e.jump {
            failure = Some(format!("k={k} Lambda_k != Lambda_(k-1) * L_k"));
        } else if e.lcm < BigUint::one() << k {
            failure = Some(format!("k={k} Lambda_k < 2^k"));
        } else if BigUint::from(e.value) > e.lcm {
            failure = Some(format!("k={k} b_k > Lambda_k"));
        }
        if failure.is_some() {
            break;
        }
        prev = e.lcm.clone();
    }
    if failure.is_none() {
        let mut direct = PrefixLcms::new(spec).peekable();
        let mut current = BigUint::one();
        for n in 1..=bound {
            while let Some((a, _)) = direct.peek() {
                if *a > n {
                    break;
                }
                current = direct.next().expect("peeked").1;
            }
            if &current != profile.lcm_through(n) {
                failure = Some(format!("n={n} lcm over A differs from lcm over B"));
                break;
            }
        }
    }
    Ok(CheckResult::outcome(
        "lcm-structure",
        spec.label(),
        format!("k<={} n<={bound}", profile.len()),
        failure,
    ))
}

/// Term-by-term lcm series through `b_r - 1` against the block form, for every
/// `r` in the profile. Both sides share the denominator `Lambda_{r-1}`, so the
/// comparison is on numerators.
pub fn check_block_series(spec: &SetSpec, max_n: u64) -> Result<CheckResult> {
    let bound = spec.max_member().map_or(max_n, |m| m.min(max_n));
    let profile = BProfile::build(spec, bound)?;
    let mut direct = PrefixLcms::new(spec).peekable();
    let mut den = BigUint::one();
    let mut num = BigUint::zero();
    let mut next_n = 0u64;
    let mut failure = None;
    for (i, e) in profile.elements().iter().enumerate() {
        let r = i + 1;
        // add terms n = next_n ..= b_r - 1
        for n in next_n..e.value {
            while let Some((a, _)) = direct.peek() {
                if *a > n {
                    break;
                }
                let lcm = direct.next().expect("peeked").1;
                if lcm != den {
                    num *= &lcm / &den;
                    den = lcm;
                }
            }
            num += 1u32;
        }
        next_n = e.value;
        if &den != profile.lcm_at(r - 1) || num != blockform_numerator(&profile, r) {
            failure = Some(format!("r={r} b_r={}", e.value));
            break;
        }
    }
    Ok(CheckResult::outcome(
        "series-blockform",
        spec.label(),
        format!("r<={}", profile.len()),
        failure,
    ))
}

/// The squarefree prefix lcm equals the primorial, so both sets share one lcm series.
pub fn check_squarefree_transfer(config: &VerifyConfig) -> Result<CheckResult> {
    let identity = squarefree_primorial_identity(config.squarefree_max);
    let mut failure = identity
        .first_counterexample
        .map(|n| format!("n={n} lcm(squarefree) != primorial"));
    if failure.is_none() {
        let squarefree = SetSpec::squarefree();
        let primes = SetSpec::primes();
        failure = (1..=config.series_compare_max)
            .into_par_iter()
            .map(|n| -> Result<Option<u64>> {
                let a = series_partial(&squarefree, n)?;
                let b = series_partial(&primes, n)?;
                Ok((a.value != b.value).then_some(n))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next()
            .map(|n| format!("n={n} series differ"));
    }
    Ok(CheckResult::outcome(
        "squarefree-transfer",
        "squarefree/primes",
        format!(
            "identity n<={} series n<={}",
            config.squarefree_max, config.series_compare_max
        ),
        failure,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            sets: vec![
                SetSpec::naturals(),
                SetSpec::geometric(3).unwrap(),
                SetSpec::explicit(vec![2, 3, 4, 6, 9, 10, 14, 15, 21, 25, 49]).unwrap(),
            ],
            max_n: 600,
            phi_alpha_max: 50,
            phi_dense_x: 100,
            boundary_max: 5_000,
            squarefree_max: 2_000,
            series_compare_max: 100,
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = run(&small()).unwrap();
        if let Some(c) = report.failures().next() {
            panic!("{c:?}");
        }
        assert_eq!(report.checks.len(), 3 * 6 + 1);
    }

    #[test]
    fn csv_has_one_line_per_check() {
        let report = run(&small()).unwrap();
        assert_eq!(report.to_csv().lines().count(), report.checks.len() + 1);
    }
}
