//! Move between multi-indices and integer frequencies, and lift a power
//! series to a Dirichlet series and back.

use bohr_hardy::coefficient::real_vector;
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    for n in [1u64, 12, 360, 9_699_690] {
        let alpha = MultiIndex::from_frequency(n)?;
        println!(
            "{n:>9} <-> {alpha}  (weighted degree {})",
            alpha.weighted_degree()
        );
    }

    let f = VectorSeries::from_terms(
        2,
        [
            ("[]".parse()?, real_vector(&[1.0, 0.0])),
            ("[2,1]".parse()?, real_vector(&[0.0, 2.0])),
            ("[0,0,1]".parse()?, real_vector(&[-1.0, 1.0])),
        ],
    )?;
    let d = bohr(&f)?;
    for (n, c) in d.terms() {
        println!("a_{n} = {:?}", c.as_slice());
    }
    assert_eq!(bohr_inverse(&d)?, f);
    Ok(())
}
