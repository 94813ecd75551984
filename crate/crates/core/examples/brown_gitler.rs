//! The polynomials f_j and their y-free counterparts f'_j, with the parity
//! and mod-y structure checks.

use tmfres::brown_gitler::{compare_mod_y, verify_parity, BgTable};
use tmfres::ring::RingId;

fn main() {
    let mut r = BgTable::new(RingId::R);
    let mut rp = BgTable::new(RingId::RPrime);
    for j in 1..=12 {
        println!("f_{j:<2} = {}", r.get(j));
        println!("f'_{j:<2}= {}", rp.get(j));
    }
    let f64 = r.get(64);
    println!("f_64 has {} terms, largest coefficient {}", f64.len(), f64.terms().values().max().unwrap());
    let ok = (0..=64).all(|j| verify_parity(j).holds() && compare_mod_y(j));
    println!("parity and mod-y comparison for j <= 64: {}", if ok { "hold" } else { "FAIL" });
}
