//! H2 by Parseval against grid quadrature, Hp for a few exponents, and a sup
//! estimate with its grid schedule.

use bohr_hardy::coefficient::real_vector;
use bohr_hardy::hardy::radial_schedule;
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let f = VectorSeries::from_terms(
        1,
        [
            (MultiIndex::zero(), real_vector(&[1.0])),
            (MultiIndex::unit(0), real_vector(&[1.0])),
            (MultiIndex::unit(1), real_vector(&[0.5])),
        ],
    )?;
    let grid = TorusGrid::torus(2, 3)?;
    println!("h2 (Parseval)     {:.15}", h2_norm(&f));
    println!("h2 (3x3 grid)     {:.15}", hp_norm(&f, 2.0, &grid)?);
    let fine = TorusGrid::torus(2, 64)?;
    for p in [1.0, 4.0, f64::INFINITY] {
        println!("hp, p = {p:<4}      {:.6}", hp_norm(&f, p, &fine)?);
    }
    let schedule = radial_schedule(2, &[16, 64, 256], &[0.9, 0.99, 1.0])?;
    let est = hinf_norm(&f, &schedule)?;
    println!(
        "sup estimate      {:.6} over {} grids",
        est.value,
        est.per_grid.len()
    );
    Ok(())
}
