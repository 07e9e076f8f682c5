//! Loads a set from a file (one integer per line, `#` comments) and runs the
//! invariant checks on it.

use tau_mean::verify::{self, VerifyConfig};
use tau_mean::SetSpec;

fn main() -> tau_mean::Result<()> {
    let path = std::env::temp_dir().join("tau_mean_example_set.txt");
    let body: String = (2..200u64)
        .filter(|n| n % 6 == 1 || n % 6 == 5 || n.is_power_of_two())
        .map(|n| format!("{n}\n"))
        .collect();
    std::fs::write(&path, format!("# units mod 6 and powers of two\n{body}"))
        .map_err(|e| tau_mean::Error::InvalidArgument(e.to_string()))?;
    let spec = SetSpec::from_file(&path)?;
    let config = VerifyConfig {
        sets: vec![spec],
        max_n: 5_000,
        boundary_max: 100_000,
        squarefree_max: 1_000,
        series_compare_max: 100,
        ..VerifyConfig::default()
    };
    print!("{}", verify::run(&config)?.to_csv());
    Ok(())
}
