//! The reduced set: members that raise the running lcm, their jump factors
//! and the running lcm itself.

use tau_mean::{BProfile, SetSpec};

fn main() -> tau_mean::Result<()> {
    let spec: SetSpec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "naturals".into())
        .parse()?;
    let profile = BProfile::build(&spec, 40)?;
    println!("{:>3} {:>4} {:>3}  Lambda", "k", "b", "L");
    for e in profile.elements() {
        println!("{:>3} {:>4} {:>3}  {}", e.index, e.value, e.jump, e.lcm);
    }
    Ok(())
}
