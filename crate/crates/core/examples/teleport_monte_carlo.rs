//! Closed-form teleportation fidelity against simulated Bell-measurement runs.

use sqbath::evolve::{initial_state_eg, propagate};
use sqbath::oracle::avg_fidelity_monte_carlo;
use sqbath::teleport::teleport_report;
use sqbath::{build_liouvillian, BathParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = build_liouvillian(&BathParams::new(1.0, 0.35, 0.1))?;
    for t in [0.25, 0.5, 1.0, 2.0] {
        let rho = propagate(&l, &initial_state_eg(), t)?;
        let r = teleport_report(&rho)?;
        let mc = avg_fidelity_monte_carlo(&rho, 100_000, 1)?;
        println!(
            "t = {t:<4} F = {:.5} (mc {:.5} +- {:.5})  dF = {:.5} (mc {:.5} +- {:.5})  det T = {:+.4}",
            r.max_fidelity,
            mc.mean,
            mc.mean_std_error(),
            r.fidelity_deviation,
            mc.stddev,
            mc.stddev_std_error(),
            r.det_t
        );
    }
    Ok(())
}
