//! Average order of `tau_n`, the smallest member of an increasing integer set
//! `A` that does not divide `n`.
//!
//! The running average `(1/N) sum_{n <= N} tau_n` tends to
//! `S = sum_{n >= 0} 1 / lcm{a in A : a <= n}`, whether `S` is finite or not.
//! This crate computes both sides exactly and checks the structure that links
//! them:
//!
//! * [`set_model`] describes and streams the set `A`.
//! * [`lcm_engine`] builds the reduced set `B` of lcm-raising members with
//!   their jump factors and running lcms.
//! * [`tau`] evaluates `tau_n` and occurrence counts by scan and by structure.
//! * [`series`] sums the lcm series and the running averages.
//! * [`asymptotics`] evaluates the limits for the naturals and the primes and
//!   measures the convergence rate.
//! * [`irrationality`] checks the density condition under which the limit is
//!   irrational.
//! * [`verify`] runs the full invariant suite; [`cli`] exposes everything on
//!   the command line.
//!
//! ```
//! use tau_mean::{average_closedform, series_partial, BProfile, SetSpec};
//!
//! let naturals = SetSpec::naturals();
//! let mut profile = BProfile::empty(&naturals);
//! let report = average_closedform(&mut profile, 10).unwrap();
//! assert_eq!(report.average.to_string(), "13/5");
//! assert_eq!(series_partial(&naturals, 10).unwrap().value.to_string(), "1405/504");
//! ```

pub mod asymptotics;
pub mod cli;
pub mod decimal;
pub mod error;
pub mod irrationality;
pub mod lcm_engine;
pub mod primes;
pub mod series;
pub mod set_model;
pub mod tau;
pub mod verify;

pub use error::{Error, Result};
pub use lcm_engine::{jump_factor, prefix_lcm, BElement, BProfile};
pub use series::{
    average_bruteforce, average_closedform, divergence_lower_bound, series_blockform,
    series_partial, AverageReport, SeriesPartial,
};
pub use set_model::{SetKind, SetSpec};
pub use tau::{phi_bruteforce, phi_closed, tau_bruteforce, tau_structured, PhiResult};

/// Exact rational used for every average and partial sum.
pub type ExactRational = num_rational::BigRational;
