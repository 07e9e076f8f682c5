//! The smallest member of `A` that does not divide `n`, and how often each
//! value occurs.
//!
//! Both quantities come in two independent flavours: a definition-level scan
//! and a structured route through the [`BProfile`]. `tau_n = b_k` exactly
//! when `Lambda_{k-1}` divides `n` and `L_k` does not divide `n / Lambda_{k-1}`,
//! which also gives the occurrence count
//! `phi(b_k; x) = floor(x / Lambda_{k-1}) - floor(x / Lambda_k)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lcm_engine::BProfile;
use crate::set_model::SetSpec;

/// Occurrences of a reduced-set value among `tau_1, ..., tau_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiResult {
    pub alpha: u64,
    pub x: u64,
    pub count: u64,
    /// `(L(alpha) - 1) / Lambda(alpha) * x`
    pub main_term: BigRational,
    /// `count - main_term`, always strictly inside `(-1, 1)`.
    pub correction: BigRational,
}

impl PhiResult {
    pub fn correction_in_bounds(&self) -> bool {
        self.correction.abs() < BigRational::from_integer(1.into())
    }
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{what} must be >= 1")))
    } else {
        Ok(())
    }
}

/// Scan `A` in order for the first member not dividing `n`.
pub fn tau_bruteforce(spec: &SetSpec, n: u64) -> Result<u64> {
    require_positive(n, "n")?;
    let mut last = 0;
    for a in spec.cursor() {
        if !n.is_multiple_of(a) {
            return Ok(a);
        }
        last = a;
    }
    Err(spec.exhausted(last))
}

/// `tau_n` from the reduced-set structure, growing the profile as needed.
pub fn tau_structured(profile: &mut BProfile, n: u64) -> Result<u64> {
    require_positive(n, "n")?;
    loop {
        match tau_in(profile, n) {
            Err(Error::ProfileTooShort { .. }) => profile.grow()?,
            other => return other,
        }
    }
}

/// Like [`tau_structured`] on a fixed profile; reports
/// [`Error::ProfileTooShort`] instead of growing it.
pub fn tau_in(profile: &BProfile, n: u64) -> Result<u64> {
    require_positive(n, "n")?;
    // Invariant: rest = n / Lambda_{k-1}.
    let mut rest = n;
    for e in profile.elements() {
        if !rest.is_multiple_of(e.jump) {
            return Ok(e.value);
        }
        rest /= e.jump;
    }
    Err(Error::ProfileTooShort {
        requested: profile.len() + 1,
        available: profile.len(),
    })
}

/// `#{n <= x : tau_n = alpha}` by evaluating every `tau_n`.
pub fn phi_bruteforce(spec: &SetSpec, alpha: u64, x: u64) -> Result<u64> {
    require_positive(x, "x")?;
    (1..=x)
        .into_par_iter()
        .map(|n| tau_bruteforce(spec, n).map(|t| u64::from(t == alpha)))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Closed-form occurrence count for `alpha` in the reduced set.
pub fn phi_closed(profile: &mut BProfile, alpha: u64, x: u64) -> Result<PhiResult> {
    require_positive(x, "x")?;
    let spec = profile.spec();
    if !spec.contains(alpha) {
        return Err(Error::NotInReducedSet {
            set: spec.label().to_string(),
            alpha,
        });
    }
    if alpha > profile.exhausted_to() {
        profile.extend(alpha)?;
    }
    phi_in(profile, alpha, x)
}

/// [`phi_closed`] on a profile that already covers `alpha`.
pub fn phi_in(profile: &BProfile, alpha: u64, x: u64) -> Result<PhiResult> {
    require_positive(x, "x")?;
    if alpha > profile.exhausted_to() {
        return Err(Error::ProfileTooShort {
            requested: profile.len() + 1,
            available: profile.len(),
        });
    }
    let k = profile
        .position(alpha)
        .ok_or_else(|| Error::NotInReducedSet {
            set: profile.spec().label().to_string(),
            alpha,
        })?;
    let count = phi_count_at(profile, k, x);
    let jump = profile.element(k).expect("position is in range").jump;
    let main_term = BigRational::new(
        BigInt::from(jump - 1) * BigInt::from(x),
        BigInt::from(profile.lcm_at(k).clone()),
    );
    let correction = BigRational::from_integer(BigInt::from(count)) - &main_term;
    Ok(PhiResult {
        alpha,
        x,
        count,
        main_term,
        correction,
    })
}

/// `floor(x / Lambda_{k-1}) - floor(x / Lambda_k)` for element `k`.
pub(crate) fn phi_count_at(profile: &BProfile, k: usize, x: u64) -> u64 {
    let big_x = BigUint::from(x);
    let hi = (&big_x / profile.lcm_at(k - 1))
        .to_u64()
        .expect("quotient <= x");
    let lo = (&big_x / profile.lcm_at(k))
        .to_u64()
        .expect("quotient <= x");
    hi - lo
}
