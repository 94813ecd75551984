//! Margolis homology of the standard modules for each exterior primitive.

use steenrod::margolis::margolis_homology;
use steenrod::{build_standard, MargolisOp};

fn main() -> steenrod::Result<()> {
    for name in ["F2", "BO(1)", "M1", "A2modA1", "TMF(1)", "BO(2)"] {
        let m = build_standard(name)?;
        for op in [MargolisOp::Q0, MargolisOp::Q1, MargolisOp::Q2, MargolisOp::P21] {
            println!("{name:8} {op:?}: {:?}", margolis_homology(&m, op)?);
        }
    }
    Ok(())
}
