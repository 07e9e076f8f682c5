//! Distance of the running average from its limit against (ln N)^2 / (N ln ln N).

use tau_mean::asymptotics::{error_curve, limit_highprecision, ErrorCurveRow};
use tau_mean::SetSpec;

fn main() -> tau_mean::Result<()> {
    let grid: Vec<u64> = (3..=12).map(|e| 10u64.pow(e)).collect();
    for spec in [SetSpec::naturals(), SetSpec::primes()] {
        let limit = limit_highprecision(&spec, 40)?;
        println!("# {}", spec.label());
        println!("{}", ErrorCurveRow::CSV_HEADER);
        for row in error_curve(&spec, &limit.decimal, &grid, 6)? {
            println!("{}", row.csv_line());
        }
    }
    Ok(())
}
