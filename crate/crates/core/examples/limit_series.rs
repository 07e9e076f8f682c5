//! The lcm series summed until stable at the requested number of digits.

use tau_mean::asymptotics::limit_highprecision;
use tau_mean::SetSpec;

fn main() -> tau_mean::Result<()> {
    let digits: usize = std::env::args()
        .nth(1)
        .and_then(|d| d.parse().ok())
        .unwrap_or(50);
    for spec in [
        SetSpec::naturals(),
        SetSpec::primes(),
        SetSpec::arithmetic(3, 4)?,
    ] {
        let est = limit_highprecision(&spec, digits)?;
        println!(
            "{:<15} {}  ({} blocks, n <= {})",
            spec.label(),
            est.decimal,
            est.blocks,
            est.terms_through_n
        );
    }
    Ok(())
}
