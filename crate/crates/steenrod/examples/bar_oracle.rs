//! Cross-checks the minimal resolution against the normalized bar complex.

use std::time::Instant;

use steenrod::ext::bar::bar_oracle;
use steenrod::ext::minimal_resolution;
use steenrod::{build_standard, SteenrodModule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bo1 = build_standard("BO(1)")?;
    let cases = [
        ("F2", SteenrodModule::trivial(), 16),
        ("BO(1)", bo1.clone(), 16),
        ("BO(1)^2", SteenrodModule::tensor(&bo1, &bo1), 12),
        ("M1", build_standard("M1")?, 16),
    ];
    for (name, m, t) in cases {
        let start = Instant::now();
        let bar = bar_oracle(&m, t)?;
        let res = minimal_resolution(&m, t as u32 + 1, t)?.generator_counts();
        println!(
            "{name:8} t <= {t}: {} classes, {} ({:.1?})",
            bar.values().sum::<usize>(),
            if bar == res { "agree" } else { "DISAGREE" },
            start.elapsed()
        );
    }
    Ok(())
}
