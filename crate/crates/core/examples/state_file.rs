//! Reading a density matrix in the plain-text state format and reporting on it.

use sqbath::cli::{run_state, Mode, RunConfig};

const WERNER: &str = "\
0.375 0 0 0.25
0 0.125 0 0
0 0 0.125 0
0.25 0 0 0.375
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::build(Mode::State, Some("coherence_basis = computational\n"), &[])?;
    print!("{}", run_state(&cfg, WERNER)?);
    Ok(())
}
