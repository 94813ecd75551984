//! Reads the two 20- and 24-dimensional A(2)-modules from `fixtures/`,
//! validates them, and prints their graded dimensions next to BO(1)^3.

use steenrod::{build_standard, SteenrodModule};

fn main() -> steenrod::Result<()> {
    let f = SteenrodModule::parse_bruner(include_str!("../../../fixtures/F.module"))?;
    let e = SteenrodModule::parse_bruner(include_str!("../../../fixtures/E.module"))?;
    let bo1 = build_standard("BO(1)")?;
    let cube = SteenrodModule::tensor(&SteenrodModule::tensor(&bo1, &bo1), &bo1);
    for (name, m) in [("F", &f), ("E", &e), ("BO(1)^3", &cube)] {
        let report = m.validate();
        println!("{name}: dim {}, {}", m.dim(), if report.is_valid() { "valid" } else { "INVALID" });
        if !report.is_valid() {
            println!("{report}");
        }
        println!("  graded dimension {:?}", m.graded_dimension());
    }
    println!("{} + {} + {} = {}", f.dim(), f.dim(), e.dim(), cube.dim());
    Ok(())
}
