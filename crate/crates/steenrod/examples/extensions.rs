//! Short exact sequence search: A2modA1 as an extension of BO(1) by a
//! suspended dual, and a dimension certificate for a triple that cannot fit.

use steenrod::hom::{find_ses, iso_test};
use steenrod::{build_standard, SteenrodModule};

fn main() -> steenrod::Result<()> {
    let bo1 = build_standard("BO(1)")?;
    let a = build_standard("A2modA1")?;
    println!("0 -> Σ^17 D BO(1) -> A2modA1 -> BO(1) -> 0");
    println!("{}", find_ses(&bo1.dual().suspend(17), &a, &bo1));

    let e = SteenrodModule::parse_bruner(include_str!("../../../fixtures/E.module"))?;
    let middle = SteenrodModule::tensor(&a.suspend(4), &build_standard("M1")?);
    println!("0 -> Σ^17 BO(1) -> Σ^4 A2modA1 ⊗ M1 -> E -> 0");
    println!("{}", find_ses(&bo1.suspend(17), &middle, &e));

    let swapped = SteenrodModule::tensor(&build_standard("M1")?, &bo1);
    let straight = SteenrodModule::tensor(&bo1, &build_standard("M1")?);
    println!("BO(1) ⊗ M1 ≅ M1 ⊗ BO(1): {}", iso_test(&straight, &swapped).is_some());
    Ok(())
}
