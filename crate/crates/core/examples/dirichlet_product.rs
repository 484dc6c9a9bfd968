//! Multiply Dirichlet series by divisor-pair convolution and compare values
//! on the half-plane.

use bohr_hardy::coefficient::{real_operator, real_vector};
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let d = DirichletSeries::from_terms(
        2,
        [
            (1, Operator::identity(2, 2)),
            (2, real_operator(&[&[0.0, 1.0], &[1.0, 0.0]])),
            (3, real_operator(&[&[0.5, 0.0], &[0.0, -0.5]])),
        ],
    )?;
    let e = DirichletSeries::from_terms(
        2,
        [(1, real_vector(&[1.0, 0.0])), (4, real_vector(&[0.0, 1.0]))],
    )?;
    let de = dirichlet_product(&d, &e, 100)?;
    for (n, c) in de.terms() {
        println!("n = {n:>2}: {:?}", c.as_slice());
    }
    let s = HalfPlanePoint::new(1.5, 2.0);
    let gap = (de.evaluate(s) - d.evaluate(s) * e.evaluate(s)).norm();
    println!("|(DE)(s) - D(s)E(s)| = {gap:.2e}");
    Ok(())
}
