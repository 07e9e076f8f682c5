//! Streams the first members of each built-in set and compares counts.

use tau_mean::SetSpec;

fn main() -> tau_mean::Result<()> {
    for name in [
        "naturals",
        "primes",
        "squarefree",
        "prime-powers",
        "geometric:3",
        "arithmetic:3,4",
    ] {
        let spec: SetSpec = name.parse()?;
        let head: Vec<u64> = spec.cursor().take(10).collect();
        println!(
            "{:<15} {:?}  count(10^5) = {}",
            spec.label(),
            head,
            spec.count_up_to(100_000)
        );
    }
    let drawn = SetSpec::random(8, 100, 42)?;
    println!("{:<15} {:?}", drawn.label(), drawn.enumerate_up_to(100));
    Ok(())
}
