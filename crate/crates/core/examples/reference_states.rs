//! Every measure on a handful of textbook states.

use sqbath::measures::{measure_all, CoherenceBasis};
use sqbath::teleport::teleport_report;
use sqbath::DensityMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let states = [
        ("bell phi+", DensityMatrix::bell_phi_plus()),
        ("bell psi+", DensityMatrix::bell_psi_plus()),
        ("I/4", DensityMatrix::maximally_mixed()),
        ("|eg><eg|", DensityMatrix::excited_ground()),
        ("werner 0.5", DensityMatrix::werner(0.5)?),
    ];
    println!("{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "state", "c_rel", "C", "Q_D", "Q_C", "U", "F", "dF");
    for (name, rho) in &states {
        let m = measure_all(rho, CoherenceBasis::Computational)?;
        let t = teleport_report(rho)?;
        println!(
            "{name:<12} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            m.c_rel, m.concurrence, m.discord, m.consonance, m.lqu, t.max_fidelity, t.fidelity_deviation
        );
    }
    Ok(())
}
