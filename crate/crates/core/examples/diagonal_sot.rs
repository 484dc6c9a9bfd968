//! For diagonal unimodular operators the operator distance equals the sup
//! distance between the diagonals.

use bohr_hardy::multiplier::diagonal_distance_table;
use bohr_hardy::random::seeded;

fn main() -> bohr_hardy::Result<()> {
    let mut rng = seeded(7);
    let table = diagonal_distance_table(&mut rng, 16, 8, 1e-13)?;
    for row in &table {
        println!(
            "||T_w - T_v|| = {:.15}   ||w - v||_inf = {:.15}",
            row.operator_distance, row.sup_distance
        );
    }
    Ok(())
}
