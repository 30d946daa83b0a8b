//! Quantum Fisher information about the separation, collective vs independent regime.

use sqbath::measures::qfi_series;
use sqbath::BathParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let near = qfi_series(&BathParams::new(1.0, 0.35, 0.1), 10.0, 0.01, None)?;
    let far = qfi_series(&BathParams::new(1.0, 0.35, 1.1), 10.0, 0.01, None)?;
    println!("{:>5} {:>14} {:>14}", "t", "r12 = 0.1", "r12 = 1.1");
    for k in (0..near.len()).step_by(50) {
        println!("{:>5.1} {:>14.6e} {:>14.6e}", k as f64 * 0.01, near[k], far[k]);
    }
    Ok(())
}
