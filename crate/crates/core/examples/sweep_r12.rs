//! Distance sweep at t = 1 written as CSV, the same table `sqbath sweep-r12` emits.

use sqbath::cli::{run_sweep_r12, Mode, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let overrides = [("t", "1"), ("range", "0.05:1.5:0.05")].map(|(k, v)| (k.to_string(), v.to_string()));
    let cfg = RunConfig::build(Mode::SweepR12, None, &overrides)?;
    let table = run_sweep_r12(&cfg)?;
    let path = std::env::temp_dir().join("sweep_r12.csv");
    std::fs::write(&path, table.to_csv())?;
    let r12 = table.column("r12").unwrap();
    let f = table.column("max_fidelity").unwrap();
    let qc = table.column("consonance").unwrap();
    for ((r, f), q) in r12.iter().zip(&f).zip(&qc).step_by(3) {
        println!("r12 = {r:.2}  F = {f:.4}  Q_C = {q:.4}");
    }
    println!("wrote {}", path.display());
    Ok(())
}
