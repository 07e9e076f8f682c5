//! High-precision limits and empirical convergence rates.
//!
//! For the naturals and the primes the running average approaches its limit
//! at rate `O((ln N)^2 / (N ln ln N))`. [`error_curve`] measures the ratio of
//! the actual error to that reference curve on a grid of `N`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::decimal::{parse_decimal, to_fixed, to_scientific, to_significant};
use crate::error::{Error, Result};
use crate::lcm_engine::BProfile;
use crate::series::{average_in, locate_block};
use crate::set_model::SetSpec;

/// Knobs for [`limit_highprecision_with`].
#[derive(Clone, Debug)]
pub struct LimitConfig {
    /// Partial sums beyond this value with non-shrinking block contributions
    /// are reported as divergent.
    pub ceiling: u64,
    /// Consecutive terms below the target tolerance required before stopping.
    pub small_terms: u64,
    /// Hard cap on the number of blocks summed.
    pub max_blocks: usize,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig {
            ceiling: 32,
            small_terms: 8,
            max_blocks: 1 << 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitEstimate {
    pub digits: usize,
    /// `digits` significant digits of the stabilized partial sum.
    pub decimal: String,
    /// Exact partial sum at the stopping point (a lower bound for the limit).
    pub partial: BigRational,
    /// Series index `n` of the last term included.
    pub terms_through_n: u64,
    pub blocks: usize,
}

/// The lcm series evaluated until empirically stable at `digits` significant digits.
pub fn limit_highprecision(spec: &SetSpec, digits: usize) -> Result<LimitEstimate> {
    limit_highprecision_with(spec, digits, &LimitConfig::default())
}

/// Stops once `config.small_terms` consecutive terms are below
/// `10^-(digits+5)` and the current block denominator exceeds `10^(digits+5)`.
/// Heuristic, not a certified tail bound.
pub fn limit_highprecision_with(
    spec: &SetSpec,
    digits: usize,
    config: &LimitConfig,
) -> Result<LimitEstimate> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be >= 1".into()));
    }
    let scale = BigUint::from(10u32).pow((digits + 5) as u32);
    let ceiling = BigUint::from(config.ceiling);
    let mut profile = BProfile::empty(spec);

    // Sum over n in [b_{k-1}, b_k - 1] is (b_k - b_{k-1}) / Lambda_{k-1}.
    let mut num = BigUint::zero();
    let mut small_run = 0u64;
    let mut contributions: Vec<BigRational> = Vec::new();
    let mut k = 1usize;
    loop {
        if profile.len() < k {
            profile.ensure_len(k).map_err(|e| match e {
                Error::SetExhausted { .. } if !spec.is_finite() => Error::SeriesDiverges {
                    set: spec.label().to_string(),
                    ceiling: config.ceiling,
                },
                other => other,
            })?;
        }
        let width = profile.value_at(k) - profile.value_at(k - 1);
        let den = profile.lcm_at(k - 1);
        if k > 1 {
            num *= profile.element(k - 1).expect("k - 1 <= len").jump;
        }
        num += width;
        if den > &scale {
            small_run += width;
        } else {
            small_run = 0;
        }
        contributions.push(BigRational::new(
            BigInt::from(width),
            BigInt::from(den.clone()),
        ));

        let whole = &num / den;
        if whole > ceiling && non_shrinking(&contributions, 8) {
            return Err(Error::SeriesDiverges {
                set: spec.label().to_string(),
                ceiling: config.ceiling,
            });
        }
        let last_small = BigUint::from(width) * &scale < *den;
        if small_run >= config.small_terms && last_small {
            let partial = BigRational::new(BigInt::from(num), BigInt::from(den.clone()));
            return Ok(LimitEstimate {
                digits,
                decimal: to_significant(&partial, digits),
                partial,
                terms_through_n: profile.value_at(k) - 1,
                blocks: k,
            });
        }
        if k >= config.max_blocks {
            return Err(Error::SeriesDiverges {
                set: spec.label().to_string(),
                ceiling: config.ceiling,
            });
        }
        k += 1;
    }
}

fn non_shrinking(contributions: &[BigRational], window: usize) -> bool {
    contributions.len() >= window
        && contributions[contributions.len() - window..]
            .windows(2)
            .all(|w| w[1] >= w[0])
}

/// `(ln N)^2 / (N ln ln N)`, natural logarithms. Needs `N >= 3`.
pub fn reference_bound(n: u64) -> f64 {
    let ln = (n as f64).ln();
    ln * ln / (n as f64 * ln.ln())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorCurveRow {
    pub n: u64,
    pub average: String,
    pub limit: String,
    pub abs_error: String,
    pub bound: String,
    pub ratio: String,
    /// Numeric value of `ratio`, for comparisons.
    pub ratio_value: f64,
}

impl ErrorCurveRow {
    pub const CSV_HEADER: &'static str = "N,average,limit,abs_error,bound,ratio";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.average, self.limit, self.abs_error, self.bound, self.ratio
        )
    }
}

/// One row per grid point, using the closed-form average. `precision` is the
/// number of fractional digits for `average` and of significant digits for
/// the error columns.
pub fn error_curve(
    spec: &SetSpec,
    limit: &str,
    grid: &[u64],
    precision: usize,
) -> Result<Vec<ErrorCurveRow>> {
    if let Some(&bad) = grid.iter().find(|&&n| n < 3) {
        return Err(Error::InvalidArgument(format!(
            "error curve needs N >= 3, got {bad}"
        )));
    }
    let limit_value = parse_decimal(limit)?;
    let mut profile = BProfile::empty(spec);
    if let Some(&max) = grid.iter().max() {
        locate_block(&mut profile, max)?;
    }
    let precision = precision.max(1);
    grid.par_iter()
        .map(|&n| {
            let report = average_in(&profile, n)?;
            let abs_error = (&report.average - &limit_value).abs();
            let bound = reference_bound(n);
            let ratio_value = abs_error.to_f64().unwrap_or(f64::INFINITY) / bound;
            Ok(ErrorCurveRow {
                n,
                average: to_fixed(&report.average, precision),
                limit: limit.to_string(),
                abs_error: to_scientific(&abs_error, precision),
                bound: format!("{bound:.*e}", precision - 1),
                ratio: format!("{ratio_value:.*e}", precision - 1),
                ratio_value,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockTracker {
    pub r: usize,
    pub b_r: u64,
    /// `b_r / ln N`, tending to 1 for the naturals and the primes.
    pub ratio: f64,
}

/// The last reduced-set element needed at `N`, against `ln N`.
pub fn b_r_tracker(profile: &mut BProfile, n: u64) -> Result<BlockTracker> {
    if n < 3 {
        return Err(Error::InvalidArgument("N must be >= 3".into()));
    }
    let r = locate_block(profile, n)?;
    let b_r = profile.value_at(r);
    Ok(BlockTracker {
        r,
        b_r,
        ratio: b_r as f64 / (n as f64).ln(),
    })
}

/// `sum_{k <= r} b_k` for the block containing `N`.
pub fn block_value_sum(profile: &mut BProfile, n: u64) -> Result<BigUint> {
    let r = locate_block(profile, n)?;
    Ok((1..=r).map(|k| BigUint::from(profile.value_at(k))).sum())
}
