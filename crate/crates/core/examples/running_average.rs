//! Exact running averages of tau_n and their decomposition into S1 + S2 * f.

use tau_mean::decimal::to_fixed;
use tau_mean::{average_bruteforce, average_closedform, BProfile, SetSpec};

fn main() -> tau_mean::Result<()> {
    for spec in [SetSpec::naturals(), SetSpec::primes()] {
        let mut profile = BProfile::empty(&spec);
        println!("{}", spec.label());
        for n in [10, 100, 1_000, 10_000, 1_000_000, 1_000_000_000_000] {
            let rep = average_closedform(&mut profile, n)?;
            if n <= 10_000 {
                assert_eq!(rep.average, average_bruteforce(&spec, n)?);
            }
            println!(
                "  N = {n:>13}  r = {:>2}  average = {}  f = {}",
                rep.r,
                to_fixed(&rep.average, 12),
                to_fixed(&rep.f, 4)
            );
        }
    }
    Ok(())
}
