//! tau_n by direct scan and through the reduced set, plus occurrence counts.

use tau_mean::{phi_bruteforce, phi_closed, tau_bruteforce, tau_structured, BProfile, SetSpec};

fn main() -> tau_mean::Result<()> {
    let spec = SetSpec::naturals();
    let mut profile = BProfile::empty(&spec);
    for n in [1, 2, 6, 12, 60, 420, 840, 2520, 720_720] {
        let t = tau_structured(&mut profile, n)?;
        assert_eq!(t, tau_bruteforce(&spec, n)?);
        println!("tau({n}) = {t}");
    }

    let x = 10_000;
    for alpha in [2, 3, 4, 5, 7, 8, 9] {
        let phi = phi_closed(&mut profile, alpha, x)?;
        assert_eq!(phi.count, phi_bruteforce(&spec, alpha, x)?);
        println!(
            "phi({alpha}; {x}) = {:>5}  main term {}  correction {}",
            phi.count, phi.main_term, phi.correction
        );
    }
    Ok(())
}
