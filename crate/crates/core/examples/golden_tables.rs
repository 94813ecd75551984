//! Recomputes the reduced powers `x^k` and the polynomials `f_j` and diffs
//! them against the shipped golden tables.

use tmfres::tables::{check_bg_table, check_power_table, TABLE1, TABLE2};

fn main() -> Result<(), tmfres::Error> {
    let powers = check_power_table(TABLE1)?;
    println!("x^k in R\n{powers}");
    let polys = check_bg_table(TABLE2)?;
    println!("f_j in R\n{polys}");
    Ok(())
}
