//! Compression norms of the multiplier 1 + z approach its sup norm 2.

use bohr_hardy::multiplier::multiplier_norm_schedule;
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let one = Operator::from_element(1, 1, Complex::new(1.0, 0.0));
    let f = OperatorSeries::from_terms(
        1,
        [
            (MultiIndex::zero(), one.clone()),
            (MultiIndex::unit(0), one),
        ],
    )?;
    let degrees = [0, 1, 2, 5, 10, 20, 50];
    let base = TruncationParams::hilbert(1, 0, 1)?;
    let sched = multiplier_norm_schedule(&f, &degrees, &base, 1e-13)?;
    for (d, v) in degrees.iter().zip(&sched) {
        let closed = 2.0 * (std::f64::consts::PI / (2.0 * *d as f64 + 3.0)).cos();
        println!(
            "D = {d:>2}: {v:.12}  closed form {closed:.12}  gap to 2 {:.2e}",
            2.0 - v
        );
    }
    Ok(())
}
