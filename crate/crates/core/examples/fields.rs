//! The arithmetic underneath: factored integers, the local data of a prime
//! at q, and finite fields.
//!
//!     cargo run --example fields

use group_exponent::gf::field_of_order;
use group_exponent::numth::{factored_power_minus_one, factorize, prime_local_data, two_local_s};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("2^64 - 1 = {}", factored_power_minus_one(2, 64));
    println!("1001 = {}", factorize(1001));

    for (p, q) in [(3, 7), (5, 11), (7, 2), (3, 4)] {
        let d = prime_local_data(p, q)?;
        println!("p={p} q={q}: e={} r={} x={}  (q^e - 1 = {p}^r x)", d.e, d.r, d.x);
    }
    for q in [3, 5, 7, 9, 17, 31] {
        println!("q={q}: s={}  2^(s+1) divides q^2-1 exactly", two_local_s(q)?);
    }

    let f = field_of_order(81)?;
    let g = f.primitive_element();
    println!("GF(81): characteristic {}, degree {}, modulus {:?}", f.p(), f.k(), f.modulus());
    println!("  primitive element {:?} has order {}", f.coeffs(g), f.elem_mult_order(g)?);
    let x = f.pow(g, 20);
    println!("  g^20 = {:?}, a square: {}, Frobenius image {:?}", f.coeffs(x), f.is_square(x), f.coeffs(f.frobenius(x)));
    Ok(())
}
