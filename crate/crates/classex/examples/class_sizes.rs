//! Exact conjugacy class sizes from cycle types: the basic calculus, the
//! class equation, and where alternating classes split in half.

use classex::cycle::{
    alt_class_size, enumerate, factorial, parse_cycle_type, sym_class_size, AltClassSize,
};

fn main() -> classex::Result<()> {
    // A single class, straight from its type.
    let ct = parse_cycle_type("3 2^2 1^5", 12)?;
    println!("type {ct} in S12:");
    println!("  support      {}", ct.support());
    println!("  centralizer  {}", ct.centralizer_order());
    println!("  class size   {}", sym_class_size(&ct));
    println!();

    // Every class of S6, and what becomes of it inside A6.
    println!("classes of S6:");
    for ct in enumerate(6) {
        let size = sym_class_size(&ct);
        let in_alt = if !ct.is_even() {
            "odd, not in A6".to_string()
        } else {
            match alt_class_size(&ct)? {
                AltClassSize::Whole(s) => format!("one A6 class of size {s}"),
                AltClassSize::Split(h) => format!("splits into two A6 classes of size {h}"),
            }
        };
        println!("  {ct:<12} size {size:<4} {in_alt}");
    }
    println!();

    // The sizes of one degree always sum to the group order.
    let n = 25;
    let total: num_bigint::BigUint = enumerate(n).map(|ct| sym_class_size(&ct)).sum();
    assert_eq!(total, factorial(n));
    println!("class equation: sum of class sizes of S{n} = {n}! = {total}");
    Ok(())
}
