//! Long-time limit of the generator and how fast the pair approaches it.

use sqbath::evolve::{initial_state_eg, propagate};
use sqbath::{build_liouvillian, BathParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r12 in [0.1, 0.5, 1.1] {
        let l = build_liouvillian(&BathParams::new(1.0, 0.35, r12))?;
        let ss = l.steady_state()?;
        let (s0, s1) = l.null_space_gap()?;
        println!("r12 = {r12}: smallest singular values of L {s0:.2e}, {s1:.2e}");
        println!("  steady-state populations {:?}", ss.diagonal_real().iter().map(|p| format!("{p:.5}")).collect::<Vec<_>>());
        for t in [1.0, 10.0, 50.0, 150.0] {
            let rho = propagate(&l, &initial_state_eg(), t)?;
            println!("  t = {t:>5}: distance {:.3e}", rho.matrix().max_abs_diff(&ss));
        }
    }
    Ok(())
}
