//! Normal forms in R, R' and R/(y): parsing, products, powers, and the duality.

use tmfres::ring::{RingElement, RingId};

fn main() -> tmfres::Result<()> {
    for ring in [RingId::R, RingId::RPrime, RingId::RModY] {
        let e = RingElement::parse("x^3 + t^6 s^8 - s^9 x", ring)?;
        println!("{ring:6} x^3 + t^6 s^8 - s^9 x = {e}");
    }
    let y = RingElement::y();
    println!("y^2 = {}", &y * &y);
    let x = RingElement::x(RingId::R);
    println!("x y = {}", &x * &y);
    for k in [4, 8, 16] {
        println!("x^{k} = {}", x.pow(k));
    }
    println!("D(x) = {}   D(y) = {}", x.dualize(), y.dualize());
    println!("D(x') = {}", RingElement::x(RingId::RPrime).dualize());
    let f = RingElement::parse("2 s t^2 x + 3 y", RingId::R)?;
    println!("{f} -> R/(y): {}", f.project_mod_y());
    println!("json: {}", f.to_json());
    match RingElement::parse("x^3 + y", RingId::RPrime) {
        Ok(_) => unreachable!(),
        Err(e) => println!("R' rejects y: {} ({})", e, e.code()),
    }
    Ok(())
}
