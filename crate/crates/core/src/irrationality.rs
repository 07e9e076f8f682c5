//! Density condition for an irrational limit.
//!
//! If the lower asymptotic density of `A` exceeds `1 - ln 2 = 0.30685...`,
//! the lcm series of `A` sums to an irrational number (Erdős). The primes have
//! density 0, but their lcm series coincides term by term with that of the
//! squarefree numbers (density `6 / pi^2`), which settles that case too.
//! Nothing here proves irrationality; it reports whether the condition applies.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use crate::decimal::to_fixed;
use crate::error::{Error, Result};
use crate::lcm_engine::lcm_step;
use crate::primes::is_prime;
use crate::set_model::{SetKind, SetSpec};

/// `ln 2` to within `10^-(digits + 5)`, from `ln 2 = 2 atanh(1/3)`.
pub fn ln2(digits: usize) -> BigRational {
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u32).pow((digits + 5) as u32));
    let ninth = BigRational::new(1.into(), 9.into());
    let mut power = BigRational::new(1.into(), 3.into()); // 3^-(2k+1)
    let mut sum = BigRational::from_integer(0.into());
    let mut k = 0u32;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        sum += &term;
        // remaining tail < term / 8
        if term < tol {
            break;
        }
        power *= &ninth;
        k += 1;
    }
    sum * BigInt::from(2)
}

/// `1 - ln 2` to within `10^-(digits + 5)`.
pub fn erdos_threshold(digits: usize) -> BigRational {
    BigRational::one() - ln2(digits)
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticDensity {
    Exact(BigRational),
    SixOverPiSquared,
}

impl AnalyticDensity {
    pub fn to_f64(&self) -> f64 {
        match self {
            AnalyticDensity::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            AnalyticDensity::SixOverPiSquared => 6.0 / (std::f64::consts::PI.powi(2)),
        }
    }

    pub fn render(&self, places: usize) -> String {
        match self {
            AnalyticDensity::Exact(r) => to_fixed(r, places),
            AnalyticDensity::SixOverPiSquared => format!("{:.*}", places.min(15), self.to_f64()),
        }
    }

    /// Known density of a built-in family; `None` for explicit lists.
    pub fn of(spec: &SetSpec) -> Option<Self> {
        let zero = || AnalyticDensity::Exact(BigRational::from_integer(0.into()));
        match spec.kind() {
            SetKind::Naturals => Some(AnalyticDensity::Exact(BigRational::one())),
            SetKind::Squarefree => Some(AnalyticDensity::SixOverPiSquared),
            SetKind::Primes | SetKind::PrimePowers | SetKind::Geometric { .. } => Some(zero()),
            SetKind::Arithmetic { step, .. } => Some(AnalyticDensity::Exact(BigRational::new(
                1.into(),
                BigInt::from(*step),
            ))),
            SetKind::Explicit(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DensityEstimate {
    pub spec: SetSpec,
    pub grid: Vec<u64>,
    /// `count_up_to(N) / N` for each grid point.
    pub ratios: Vec<BigRational>,
    /// Minimum ratio over the last half of the grid, standing in for the liminf.
    pub running_min_tail: BigRational,
    pub analytic: Option<AnalyticDensity>,
}

impl DensityEstimate {
    pub fn tail(&self) -> &[BigRational] {
        let len = self.ratios.len();
        &self.ratios[len / 2..]
    }
}

pub fn density_profile(spec: &SetSpec, grid: &[u64]) -> Result<DensityEstimate> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("density grid is empty".into()));
    }
    if grid.contains(&0) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "density grid must be strictly increasing positive integers".into(),
        ));
    }
    let ratios: Vec<BigRational> = grid
        .iter()
        .map(|&n| BigRational::new(BigInt::from(spec.count_up_to(n)), BigInt::from(n)))
        .collect();
    let running_min_tail = ratios[ratios.len() / 2..]
        .iter()
        .min()
        .cloned()
        .expect("grid is non-empty");
    Ok(DensityEstimate {
        spec: spec.clone(),
        grid: grid.to_vec(),
        ratios,
        running_min_tail,
        analytic: AnalyticDensity::of(spec),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Passes,
    Fails,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Evidence {
    Analytic,
    Empirical,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub set: String,
    pub verdict: Verdict,
    pub threshold: String,
    pub density: String,
    pub evidence: Evidence,
    /// Set when irrationality follows indirectly despite a failed verdict.
    pub transfer: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CriterionConfig {
    /// Decimal places in the rendered threshold and density.
    pub digits: usize,
    /// Empirical ratios within this distance of the threshold are inconclusive.
    pub margin: f64,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        CriterionConfig {
            digits: 12,
            margin: 0.02,
        }
    }
}

pub fn erdos_criterion(estimate: &DensityEstimate, config: &CriterionConfig) -> CriterionReport {
    let threshold = erdos_threshold(config.digits);
    let threshold_f = threshold.to_f64().unwrap_or(f64::NAN);
    let (verdict, evidence, density) = match &estimate.analytic {
        Some(AnalyticDensity::Exact(d)) => {
            let v = if d > &threshold {
                Verdict::Passes
            } else {
                Verdict::Fails
            };
            (v, Evidence::Analytic, to_fixed(d, config.digits))
        }
        Some(d @ AnalyticDensity::SixOverPiSquared) => {
            let v = if d.to_f64() > threshold_f {
                Verdict::Passes
            } else {
                Verdict::Fails
            };
            (v, Evidence::Analytic, d.render(config.digits))
        }
        None => {
            let m = estimate.running_min_tail.to_f64().unwrap_or(f64::NAN);
            let v = if m > threshold_f + config.margin {
                Verdict::Passes
            } else if m < threshold_f - config.margin {
                Verdict::Fails
            } else {
                Verdict::Inconclusive
            };
            (
                v,
                Evidence::Empirical,
                to_fixed(&estimate.running_min_tail, config.digits),
            )
        }
    };
    let transfer = (matches!(estimate.spec.kind(), SetKind::Primes) && verdict == Verdict::Fails)
        .then(|| {
            "not a direct application: the primes share their lcm series with the squarefree \
             numbers (density 6/pi^2), which pass"
                .to_string()
        });
    CriterionReport {
        set: estimate.spec.label().to_string(),
        verdict,
        threshold: to_fixed(&threshold, config.digits),
        density,
        evidence,
        transfer,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub checked_through: u64,
    pub holds: bool,
    pub first_counterexample: Option<u64>,
}

/// Check `lcm{f squarefree : f <= n} = prod{p prime : p <= n}` for every `n <= N`.
pub fn squarefree_primorial_identity(n_max: u64) -> IdentityCheck {
    let mut lcm = BigUint::one();
    let mut primorial = BigUint::one();
    let mut members = SetSpec::squarefree().cursor().peekable();
    for n in 1..=n_max {
        let mut changed = false;
        while let Some(&f) = members.peek() {
            if f > n {
                break;
            }
            let (next, jump) = lcm_step(&lcm, f);
            if jump > 1 {
                lcm = next;
                changed = true;
            }
            members.next();
        }
        if is_prime(n) {
            primorial *= n;
            changed = true;
        }
        // both sides are constant between changes
        if (changed || n == 1) && lcm != primorial {
            return IdentityCheck {
                checked_through: n,
                holds: false,
                first_counterexample: Some(n),
            };
        }
    }
    IdentityCheck {
        checked_through: n_max,
        holds: true,
        first_counterexample: None,
    }
}
