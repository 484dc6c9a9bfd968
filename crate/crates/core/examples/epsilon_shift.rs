//! Shifted Dirichlet series D_eps have nonincreasing H2 norms and compose
//! additively.

use bohr_hardy::dirichlet::epsilon_schedule;
use bohr_hardy::random::{seeded, vector_dirichlet};

fn main() -> bohr_hardy::Result<()> {
    let mut rng = seeded(3);
    let d = vector_dirichlet(&mut rng, 50, 2);
    let shifts: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    for (eps, norm) in epsilon_schedule(&d, &shifts)? {
        println!("eps = {eps:.1}: ||D_eps||_2 = {norm:.10}");
    }
    let two = d.epsilon_shift(0.3)?.epsilon_shift(0.4)?;
    let one = d.epsilon_shift(0.7)?;
    println!("||D_0.3,0.4 - D_0.7||_2 = {:.2e}", two.sub(&one)?.h2_norm());
    Ok(())
}
