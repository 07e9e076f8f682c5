//! Whether the density condition for an irrational limit applies to each set.

use tau_mean::irrationality::{density_profile, erdos_criterion, CriterionConfig};
use tau_mean::SetSpec;

fn main() -> tau_mean::Result<()> {
    let grid = [1_000, 10_000, 100_000, 1_000_000];
    let config = CriterionConfig::default();
    let dense = SetSpec::explicit((1..=1_000_000).filter(|n| n % 3 != 0).collect())?;
    for spec in [
        SetSpec::naturals(),
        SetSpec::squarefree(),
        SetSpec::primes(),
        SetSpec::geometric(2)?,
        SetSpec::arithmetic(1, 4)?,
        dense,
    ] {
        let report = erdos_criterion(&density_profile(&spec, &grid)?, &config);
        println!(
            "{:<15} {:<12} density {} vs {} ({:?})",
            spec.label(),
            format!("{:?}", report.verdict),
            report.density,
            report.threshold,
            report.evidence
        );
        if let Some(note) = &report.transfer {
            println!("{:<15} {note}", "");
        }
    }
    Ok(())
}
