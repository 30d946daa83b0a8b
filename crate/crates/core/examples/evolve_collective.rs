//! Correlation dynamics from |eg> for close and distant qubits.

use sqbath::evolve::{initial_state_eg, trajectory};
use sqbath::measures::{measure_all, CoherenceBasis};
use sqbath::teleport::max_fidelity;
use sqbath::{build_liouvillian, BathParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r12 in [0.1, 1.1] {
        let l = build_liouvillian(&BathParams::new(1.0, 0.35, r12))?;
        let traj = trajectory(&l, &initial_state_eg(), 10.0, 0.01)?;
        println!("r12 = {r12}");
        println!("{:>5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "t", "c_rel", "C", "Q_D", "Q_C", "U", "F");
        for (t, rho) in traj.iter().step_by(100) {
            let m = measure_all(rho, CoherenceBasis::Dressed)?;
            println!(
                "{t:>5.1} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
                m.c_rel, m.concurrence, m.discord, m.consonance, m.lqu, max_fidelity(rho)
            );
        }
    }
    Ok(())
}
