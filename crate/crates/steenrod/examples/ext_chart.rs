//! Ext over A(2) of BO(1) by minimal resolution. Prints the text chart and
//! writes an SVG next to the working directory, or to the path given as argument.

use steenrod::build_standard;
use steenrod::ext::{ext_dims, towers::v0_tower_report, ChartFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = build_standard("BO(1)")?;
    let chart = ext_dims(&m, 18, 42)?;
    println!("{}", chart.render(ChartFormat::Text, 0));
    let towers = v0_tower_report(&chart, 24, &[0, 4])?;
    println!("{towers}");
    let path = std::env::args().nth(1).unwrap_or_else(|| "bo1_chart.svg".into());
    std::fs::write(&path, chart.render(ChartFormat::Svg, 28))?;
    println!("wrote {path}");
    Ok(())
}
