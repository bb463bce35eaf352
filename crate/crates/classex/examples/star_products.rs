//! The star product of two classes: the distinguished class made of
//! disjoint-support representatives, and the exact expansion verdicts it
//! certifies.

use classex::cycle::{parse_cycle_type, star, sym_class_size};
use classex::sym::{expansion_verdict, Epsilon};

fn main() -> classex::Result<()> {
    // Two 3-cycles in S9 sitting on disjoint points multiply to a 3^2 type.
    let a = parse_cycle_type("3 1^6", 9)?;
    let b = parse_cycle_type("3 1^6", 9)?;
    let y = star(&a, &b)?;
    println!("{a} * {b} = {y}");
    println!(
        "  sizes: {} x {} -> {}",
        sym_class_size(&a),
        sym_class_size(&b),
        sym_class_size(&y)
    );
    println!();

    // The expansion question: is |C1 * C2| at least (|C1| |C2|)^(1 - eps)?
    // Decided exactly, by clearing the rational exponent.
    for (n, t1, t2, eps) in [
        (5, "2 1^3", "2 1^3", "1/2"),
        (9, "3 1^6", "2^2 1^5", "1/3"),
        (12, "4 2 1^6", "3^2 1^6", "1/4"),
    ] {
        let r = expansion_verdict(
            &parse_cycle_type(t1, n)?,
            &parse_cycle_type(t2, n)?,
            eps.parse::<Epsilon>()?,
        )?;
        println!(
            "n={n} {} * {} -> {} | {} >= ({} * {})^(1-{}) ? {}",
            r.type1, r.type2, r.star_type, r.star_size, r.size1, r.size2, r.epsilon, r.verdict
        );
    }
    println!();

    // The inequality is not a theorem at every degree: two transpositions
    // in S4 miss it at eps = 1/2, and the verdict says so.
    let t = parse_cycle_type("2 1^2", 4)?;
    let r = expansion_verdict(&t, &t, Epsilon::new(1, 2)?)?;
    println!(
        "n=4 {} * {} -> {} | {} >= sqrt({} * {}) ? {}",
        r.type1, r.type2, r.star_type, r.star_size, r.size1, r.size2, r.verdict
    );
    assert!(!r.verdict);
    Ok(())
}
