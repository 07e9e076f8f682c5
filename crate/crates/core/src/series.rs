//! The lcm series `S = sum_{n >= 0} 1 / lcm{a in A : a <= n}` and the running
//! averages `(1/N) sum_{n <= N} tau_n`.
//!
//! Everything here is exact. Sums over blocks share the denominator
//! `Lambda_k` of the current block, so they are accumulated as a single big
//! numerator (Horner style, multiplying by `L_k` when a block closes) and
//! normalized once at the end.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lcm_engine::BProfile;
use crate::set_model::SetSpec;
use crate::tau::{phi_count_at, tau_bruteforce};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPartial {
    pub terms_through_n: u64,
    pub value: BigRational,
    /// `1 / lcm{a in A : a <= terms_through_n}`
    pub last_term: BigRational,
}

/// Decomposition of a running average into a main part and a bounded error part:
/// `average = s1 + s2 * f` with `|f| < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageReport {
    pub n: u64,
    /// Block index with `Lambda_{r-1} <= n < Lambda_r`.
    pub r: usize,
    pub s1: BigRational,
    pub s2: BigRational,
    pub f: BigRational,
    pub average: BigRational,
}

impl AverageReport {
    pub fn f_in_bounds(&self) -> bool {
        self.s2.is_zero() || self.f.abs() < BigRational::one()
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn over(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.clone()))
}

/// Partial sum of the lcm series through `n = n_max`.
pub fn series_partial(spec: &SetSpec, n_max: u64) -> Result<SeriesPartial> {
    if n_max == 0 {
        let one = BigRational::one();
        return Ok(SeriesPartial {
            terms_through_n: 0,
            value: one.clone(),
            last_term: one,
        });
    }
    let profile = BProfile::build(spec, n_max)?;
    series_partial_in(&profile, n_max)
}

/// [`series_partial`] on an existing profile covering `n_max`.
pub fn series_partial_in(profile: &BProfile, n_max: u64) -> Result<SeriesPartial> {
    if n_max > profile.exhausted_to() {
        return Err(Error::ProfileTooShort {
            requested: profile.len() + 1,
            available: profile.len(),
        });
    }
    // Block k (k >= 1) is n in [b_{k-1}, b_k - 1] with denominator Lambda_{k-1}.
    let last = profile.count_through(n_max);
    let mut num = BigUint::zero();
    for k in 1..=last {
        num += profile.value_at(k) - profile.value_at(k - 1);
        num *= profile.element(k).expect("k <= len").jump;
    }
    num += n_max - profile.value_at(last) + 1;
    let den = profile.lcm_at(last);
    Ok(SeriesPartial {
        terms_through_n: n_max,
        value: over(num, den),
        last_term: over(BigUint::one(), den),
    })
}

/// `sum_{k=1}^{r} (b_k - b_{k-1}) / Lambda_{k-1}`; zero for `r = 0`.
pub fn series_blockform(profile: &BProfile, r: usize) -> Result<BigRational> {
    if r > profile.len() {
        return Err(Error::ProfileTooShort {
            requested: r,
            available: profile.len(),
        });
    }
    Ok(over(
        blockform_numerator(profile, r),
        profile.lcm_at(r.saturating_sub(1)),
    ))
}

/// Numerator of the block form over the common denominator `Lambda_{r-1}`.
pub fn blockform_numerator(profile: &BProfile, r: usize) -> BigUint {
    let mut num = BigUint::zero();
    for k in 1..=r {
        if k > 1 {
            num *= profile.element(k - 1).expect("k <= len").jump;
        }
        num += profile.value_at(k) - profile.value_at(k - 1);
    }
    num
}

/// `sum_{n=1}^{N} tau_n` by scanning the set for every `n`.
pub fn tau_sum_bruteforce(spec: &SetSpec, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let total = (1..=n)
        .into_par_iter()
        .map(|m| tau_bruteforce(spec, m).map(u128::from))
        .try_reduce(|| 0u128, |a, b| Ok(a + b))?;
    Ok(BigUint::from(total))
}

/// `(1/N) sum_{n=1}^{N} tau_n` by brute force.
pub fn average_bruteforce(spec: &SetSpec, n: u64) -> Result<BigRational> {
    let total = tau_sum_bruteforce(spec, n)?;
    Ok(BigRational::new(BigInt::from(total), big(n)))
}

/// Brute-force running averages for every `N` in `1..=n_max`.
pub fn running_averages(spec: &SetSpec, n_max: u64) -> Result<Vec<BigRational>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let taus: Vec<u64> = (1..=n_max)
        .into_par_iter()
        .map(|m| tau_bruteforce(spec, m))
        .collect::<Result<_>>()?;
    let mut sum = 0u128;
    Ok(taus
        .iter()
        .zip(1u64..)
        .map(|(&t, n)| {
            sum += u128::from(t);
            BigRational::new(BigInt::from(sum), big(n))
        })
        .collect())
}

/// Block index `r` with `Lambda_{r-1} <= n < Lambda_r`, growing the profile as needed.
pub fn locate_block(profile: &mut BProfile, n: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    profile.ensure_lcm_exceeds(n)
}

/// Running average from the reduced-set structure: `O(r)` big-integer
/// steps, `r = O(log N)`.
pub fn average_closedform(profile: &mut BProfile, n: u64) -> Result<AverageReport> {
    locate_block(profile, n)?;
    average_in(profile, n)
}

/// [`average_closedform`] on a fixed profile.
pub fn average_in(profile: &BProfile, n: u64) -> Result<AverageReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let r = profile
        .first_lcm_exceeding(&BigUint::from(n))
        .ok_or(Error::ProfileTooShort {
            requested: profile.len() + 1,
            available: profile.len(),
        })?;

    let mut weighted = BigUint::zero();
    let mut values = BigUint::zero();
    for k in 1..=r {
        let b = profile.value_at(k);
        weighted += BigUint::from(b) * phi_count_at(profile, k, n);
        values += b;
    }
    let average = over(weighted, &BigUint::from(n));

    let head = BigRational::new(
        big(profile.value_at(r)),
        BigInt::from(profile.lcm_at(r).clone()),
    );
    let s1 = series_blockform(profile, r)? - head;
    let s2 = over(values, &BigUint::from(n));
    let f = if s2.is_zero() {
        assert_eq!(average, s1);
        BigRational::zero()
    } else {
        (&average - &s1) / &s2
    };
    Ok(AverageReport {
        n,
        r,
        s1,
        s2,
        f,
        average,
    })
}

/// Lower bound `sum_{k < r} (b_k - b_{k-1}) / Lambda_{k-1} - 4` on the
/// running average at `N`; grows without bound when the series diverges.
pub fn divergence_lower_bound(profile: &mut BProfile, n: u64) -> Result<BigRational> {
    let r = locate_block(profile, n)?;
    Ok(series_blockform(profile, r - 1)? - BigRational::from_integer(4.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // Term-by-term sum with a fresh prefix lcm per n.
    fn oracle_series(spec: &SetSpec, n_max: u64) -> BigRational {
        (0..=n_max)
            .map(|n| {
                BigRational::new(
                    BigInt::one(),
                    BigInt::from(crate::lcm_engine::prefix_lcm(spec, n)),
                )
            })
            .sum()
    }

    #[test]
    fn series_partial_examples() {
        let s = series_partial(&SetSpec::naturals(), 10).unwrap();
        assert_eq!(s.value, q(7025, 2520));
        assert_eq!(s.last_term, q(1, 2520));
        assert_eq!(
            series_partial(&SetSpec::primes(), 10).unwrap().value,
            q(613, 210)
        );
        for spec in [SetSpec::naturals(), SetSpec::geometric(3).unwrap()] {
            let s = series_partial(&spec, 0).unwrap();
            assert_eq!((s.value, s.last_term), (q(1, 1), q(1, 1)));
        }
    }

    #[test]
    fn series_partial_matches_termwise_oracle() {
        for spec in [
            SetSpec::naturals(),
            SetSpec::primes(),
            SetSpec::squarefree(),
            SetSpec::arithmetic(3, 4).unwrap(),
            SetSpec::explicit(vec![1, 4, 6, 9, 12, 30]).unwrap(),
        ] {
            for n in 1..=30 {
                assert_eq!(
                    series_partial(&spec, n).unwrap().value,
                    oracle_series(&spec, n),
                    "{spec} n={n}"
                );
            }
        }
    }

    #[test]
    fn blockform_examples() {
        let p = BProfile::build(&SetSpec::naturals(), 10).unwrap();
        assert_eq!(series_blockform(&p, 3).unwrap(), q(8, 3));
        assert_eq!(series_partial_in(&p, 3).unwrap().value, q(8, 3));
        let p = BProfile::build(&SetSpec::primes(), 10).unwrap();
        assert_eq!(series_blockform(&p, 1).unwrap(), q(2, 1));
        let p = BProfile::build(&SetSpec::geometric(2).unwrap(), 16).unwrap();
        assert_eq!(series_blockform(&p, 4).unwrap(), q(5, 1));
        assert!(series_blockform(&p, 5).is_err());
        assert_eq!(series_blockform(&p, 0).unwrap(), q(0, 1));
    }

    #[test]
    fn average_bruteforce_examples() {
        assert_eq!(
            average_bruteforce(&SetSpec::naturals(), 10).unwrap(),
            q(13, 5)
        );
        assert_eq!(
            average_bruteforce(&SetSpec::geometric(2).unwrap(), 8).unwrap(),
            q(5, 1)
        );
        assert_eq!(
            average_bruteforce(&SetSpec::naturals(), 1).unwrap(),
            q(2, 1)
        );
    }

    #[test]
    fn average_closedform_examples() {
        let mut p = BProfile::empty(&SetSpec::naturals());
        let rep = average_closedform(&mut p, 10).unwrap();
        assert_eq!(rep.average, q(13, 5));
        assert_eq!(rep.r, 3);
        assert!(rep.f_in_bounds());
        assert_eq!(rep.average, &rep.s1 + &rep.s2 * &rep.f);

        let mut p = BProfile::empty(&SetSpec::primes());
        assert_eq!(average_closedform(&mut p, 6).unwrap().average, q(17, 6));
    }

    #[test]
    fn average_closedform_at_block_boundaries() {
        for spec in [
            SetSpec::naturals(),
            SetSpec::primes(),
            SetSpec::squarefree(),
        ] {
            let mut p = BProfile::empty(&spec);
            p.ensure_lcm_exceeds(5000).unwrap();
            let lcms: Vec<u64> = p
                .elements()
                .iter()
                .filter(|e| e.lcm <= 5000u32.into())
                .map(|e| e.lcm.to_string().parse::<u64>().unwrap())
                .collect();
            for l in lcms {
                for n in [l - 1, l, l + 1] {
                    assert_eq!(
                        average_closedform(&mut p, n).unwrap().average,
                        average_bruteforce(&spec, n).unwrap(),
                        "{spec} N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn running_averages_agree_with_single_averages() {
        let spec = SetSpec::squarefree();
        let all = running_averages(&spec, 200).unwrap();
        for n in [1u64, 2, 17, 200] {
            assert_eq!(all[n as usize - 1], average_bruteforce(&spec, n).unwrap());
        }
    }

    #[test]
    fn divergence_bound_examples() {
        let mut g = BProfile::empty(&SetSpec::geometric(2).unwrap());
        assert_eq!(divergence_lower_bound(&mut g, 256).unwrap(), q(5, 1));
        let mut p = BProfile::empty(&SetSpec::naturals());
        // r = 3 at N = 10, bound uses blocks k <= 2
        assert_eq!(divergence_lower_bound(&mut p, 10).unwrap(), q(-3, 2));
        for n in 1..300 {
            let bound = divergence_lower_bound(&mut p, n).unwrap();
            assert!(bound <= average_closedform(&mut p, n).unwrap().average);
        }
    }

    #[test]
    fn f_recomputed_from_per_block_corrections() {
        // f = sum_k b_k c_{k,N} / sum_k b_k with c_{k,N} = phi(b_k; N) - (L_k - 1) N / Lambda_k
        let mut p = BProfile::empty(&SetSpec::naturals());
        for n in [10u64, 59, 60, 61, 999] {
            let rep = average_closedform(&mut p, n).unwrap();
            let mut num = BigRational::zero();
            let mut den = BigRational::zero();
            for k in 1..=rep.r {
                let phi = crate::tau::phi_in(&p, p.value_at(k), n).unwrap();
                let b = BigRational::from_integer(big(p.value_at(k)));
                num += &b * &phi.correction;
                den += b;
            }
            assert_eq!(rep.f, num / den);
        }
    }
}
