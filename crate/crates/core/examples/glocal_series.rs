//! g-local homotopy of tmfbar^2 in low weights, as an (n, s, weight) table.

use tmfres::decomposition::{tmfbar_series, Locality};
use tmfres::glocal::{homotopy_series_glocal, Window};

fn main() -> tmfres::Result<()> {
    let window = Window::new(40, 3);
    for (j, r) in tmfbar_series(2, 4, Locality::G)? {
        let series = homotopy_series_glocal(&r, window)?;
        println!("weight {}: {r}", 8 * j);
        print!("{}", series.to_csv());
    }
    Ok(())
}
