//! Apply an operator-valued power series to a vector-valued one and check the
//! product against pointwise evaluation.

use bohr_hardy::coefficient::{real_operator, real_vector};
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let rotation = real_operator(&[&[0.0, -1.0], &[1.0, 0.0]]);
    let f = OperatorSeries::from_terms(
        2,
        [
            (MultiIndex::zero(), Operator::identity(2, 2)),
            (MultiIndex::unit(0), rotation),
        ],
    )?;
    let g = VectorSeries::from_terms(
        2,
        [
            (MultiIndex::zero(), real_vector(&[1.0, 1.0])),
            (MultiIndex::unit(1), real_vector(&[0.5, -0.5])),
        ],
    )?;
    let trunc = TruncationParams::hilbert(2, 4, 2)?;
    let fg = op_vec_product(&f, &g, &trunc)?;
    for (alpha, c) in fg.terms() {
        println!("{alpha}: {:?}", c.as_slice());
    }

    let z = [Complex::new(0.3, 0.1), Complex::new(-0.2, 0.4)];
    let direct = f.evaluate(&z)? * g.evaluate(&z)?;
    let gap = (fg.evaluate(&z)? - direct).norm();
    println!("|(FG)(z) - F(z)G(z)| = {gap:.2e}");
    Ok(())
}
