//! Recover a Dirichlet coefficient from the mean of D(s) n^s along a
//! vertical line, for growing window half-widths R.

use bohr_hardy::coefficient::real_vector;
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let d = DirichletSeries::from_terms(1, [(2, real_vector(&[3.0])), (3, real_vector(&[5.0]))])?;
    for r in [10.0, 100.0, 400.0, 1600.0, 10_000.0] {
        let points = (20.0f64 * r).ceil() as usize + 1;
        let got = d.recover_coefficient(2, 2.0, r, points)?[0];
        println!(
            "R = {r:>7}: a_2 ~ {:.8}  error {:.3e}",
            got.re,
            (got - 3.0).norm()
        );
    }
    Ok(())
}
