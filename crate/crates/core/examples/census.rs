//! g-local census of `tmf` (one tensor factor) against the decompositions of
//! the bo-Brown-Gitler pieces read off from `f'_j`, for both Q1 conventions.

use tmfres::glocal::{census_cross_check, census_window};

fn main() -> Result<(), tmfres::Error> {
    let weight_max = 64;
    for check in census_cross_check(weight_max, census_window(weight_max), &[-3, 3])? {
        println!("{check}");
    }
    Ok(())
}
