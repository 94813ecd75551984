//! Summand decompositions: bo_j, tensor powers of bo1, tmfbar^n by weight,
//! and the action of duality on reports.

use tmfres::decomposition::{decompose_bo, decompose_power, dualize_report, tmfbar_series, DecompositionReport, Locality};

fn main() -> tmfres::Result<()> {
    for j in [2, 3, 7, 12] {
        println!("bo_{j:<2} v2-local: {}", decompose_bo(j, Locality::V2)?);
        println!("      g-local:  {}", decompose_bo(j, Locality::G)?);
    }
    for k in 3..=6 {
        println!("bo1^{k}: {}", decompose_power(k, Locality::V2)?);
    }
    for (j, r) in tmfbar_series(2, 5, Locality::V2)? {
        println!("tmfbar^2, weight {}: {r}", 8 * j);
    }
    let r = DecompositionReport::parse("Σ^{0,0} bo1 + 2 Σ^{16,1} bo1^2", Locality::V2)?;
    println!("D({r}) = {}", dualize_report(&r)?);
    println!("{}", decompose_power(3, Locality::V2)?.to_json());
    Ok(())
}
