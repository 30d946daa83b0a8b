//! Squeezed-bath occupation numbers and the collective couplings against distance.

use sqbath::bath::{bath_coefficients, BathParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = BathParams::new(1.0, 0.35, 0.1);
    let c = bath_coefficients(&base)?;
    println!("T = {}, r = {}", base.temperature, base.squeeze_r);
    println!("N_th = {:.6}  N~ = {:.6}  M~ = {:.6}{:+.6}i", c.n_th, c.n_tilde, c.m_tilde.re, c.m_tilde.im);
    println!("{:>6} {:>12} {:>12}", "r12", "Gamma12", "Omega12");
    for k in 1..=15 {
        let r12 = 0.1 * k as f64;
        let c = bath_coefficients(&base.with_r12(r12))?;
        println!("{r12:>6.2} {:>12.6} {:>12.6}", c.gamma[0][1], c.omega12);
    }
    Ok(())
}
