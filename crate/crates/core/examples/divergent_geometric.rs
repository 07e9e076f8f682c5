//! For the powers of two the series diverges and the average grows like log2 N.

use tau_mean::asymptotics::limit_highprecision;
use tau_mean::decimal::to_fixed;
use tau_mean::{average_closedform, divergence_lower_bound, BProfile, SetSpec};

fn main() -> tau_mean::Result<()> {
    let spec = SetSpec::geometric(2)?;
    let mut profile = BProfile::empty(&spec);
    for m in (4..=60).step_by(8) {
        let n = 1u64 << m;
        let avg = average_closedform(&mut profile, n)?.average;
        let lower = divergence_lower_bound(&mut profile, n)?;
        println!(
            "N = 2^{m:<2}  average = {:>10}  lower bound = {}",
            to_fixed(&avg, 6),
            to_fixed(&lower, 3)
        );
    }
    match limit_highprecision(&spec, 20) {
        Err(e) => println!("limit: {e}"),
        Ok(est) => println!("unexpected limit {}", est.decimal),
    }
    Ok(())
}
