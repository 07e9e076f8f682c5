//! The squarefree numbers and the primes have the same prefix lcm, hence the
//! same lcm series.

use tau_mean::irrationality::squarefree_primorial_identity;
use tau_mean::{series_partial, SetSpec};

fn main() -> tau_mean::Result<()> {
    let check = squarefree_primorial_identity(100_000);
    println!(
        "lcm(squarefree <= n) = primorial(n) for n <= {}: {}",
        check.checked_through, check.holds
    );
    for n in [10, 100, 1000] {
        let a = series_partial(&SetSpec::squarefree(), n)?;
        let b = series_partial(&SetSpec::primes(), n)?;
        println!("n = {n:>4}: equal partial sums: {}", a.value == b.value);
    }
    Ok(())
}
