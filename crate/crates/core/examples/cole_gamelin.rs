//! Extremal functions for point evaluation on H2 and the point-evaluation bound.

use bohr_hardy::coefficient::real_vector;
use bohr_hardy::hardy::{cole_gamelin_tail_bound, cole_gamelin_value, point_evaluation_bound};
use bohr_hardy::prelude::*;

fn main() -> Result<()> {
    let x = real_vector(&[3.0, 4.0]);
    let z = [Complex::new(0.5, 0.2), Complex::new(-0.3, 0.0)];
    for degree in [5, 10, 20, 40] {
        let k = cole_gamelin_kernel(&x, &z, degree)?;
        println!(
            "degree {degree:>2}: ||kernel||_2 = {:.12}  (target {}, tail bound {:.2e})",
            h2_norm(&k),
            x.norm(),
            cole_gamelin_tail_bound(&z, degree) * x.norm()
        );
    }

    let k = cole_gamelin_kernel(&x, &z, 60)?;
    let bound = point_evaluation_bound(&z, 2.0)?;
    println!(
        "||k(z)|| = {:.10}, ||k||_2 * bound = {:.10}",
        k.evaluate(&z)?.norm(),
        h2_norm(&k) * bound
    );
    let closed = cole_gamelin_value(&x, &z, &z, 2.0)?;
    println!("closed form at z: {:.10}", closed.norm());
    Ok(())
}
