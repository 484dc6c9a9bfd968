//! Radial dilation contracts the H2 norm and converges as r -> 1.

use bohr_hardy::coefficient::real_vector;
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let f = VectorSeries::from_terms(
        1,
        [
            ("[1]".parse()?, real_vector(&[1.0])),
            ("[0,1]".parse()?, real_vector(&[2.0])),
            ("[1,0,1]".parse()?, real_vector(&[-1.0])),
        ],
    )?;
    let w = f.max_weighted_degree() as i32;
    let norm = h2_norm(&f);
    println!("||F||_2 = {norm:.6}, max weighted degree {w}");
    for r in [0.2, 0.5, 0.8, 0.95, 0.99, 1.0] {
        let fr = f.radial_dilate(r)?;
        println!(
            "r = {r:<4}  ||F_r|| = {:.6}  ||F - F_r|| = {:.6}  <= {:.6}",
            h2_norm(&fr),
            h2_norm(&f.sub(&fr)?),
            (1.0 - r.powi(w)) * norm
        );
    }
    Ok(())
}
