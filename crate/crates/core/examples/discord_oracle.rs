//! Fast X-state discord and closed-form LQU checked against brute-force minimization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sqbath::measures::{discord, lqu};
use sqbath::oracle::{discord_grid, lqu_minimize, random_state, random_x_state};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let rho = random_x_state(&mut rng);
        println!("discord fast {:.8}  grid {:.8}", discord(&rho)?, discord_grid(&rho, 181, 91)?);
    }
    for _ in 0..5 {
        let rho = random_state(&mut rng);
        println!("lqu closed {:.10}  direct {:.10}", lqu(&rho)?, lqu_minimize(&rho, 19, 37)?);
    }
    Ok(())
}
