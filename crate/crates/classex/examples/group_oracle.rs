//! The brute-force oracle: fully enumerated small groups with conjugacy
//! classes discovered by orbit computation, exact product sets of normal
//! subsets, covering numbers, and dominance checks. This is the machinery
//! every formula in the crate is verified against.

use classex::cycle::parse_cycle_type;
use classex::oracle::{build_symmetric, parse_group, CoveringOutcome};
use classex::sym::Epsilon;

fn main() -> classex::Result<()> {
    // Any token the CLI accepts works here too.
    for token in ["A5", "GL(2,3)", "Sp(2,5)", "PSL(3,2)"] {
        let snap = parse_group(token)?.build()?;
        let profile: Vec<String> = snap
            .profile()
            .into_iter()
            .map(|(size, count)| format!("{size}x{count}"))
            .collect();
        println!(
            "{token:<9} order {:<6} classes {} (sizes {})",
            snap.order(),
            snap.class_count(),
            profile.join(" ")
        );
    }
    println!();

    // Products of normal subsets, computed element by element.
    let a5 = parse_group("A5")?.build()?;
    let three_cycles = a5.subset_from_types(&[parse_cycle_type("3 1^2", 5)?])?;
    let squared = a5.product_set(&three_cycles, &three_cycles);
    println!(
        "3-cycles of A5: {} elements; their product set has {} elements in {} classes",
        three_cycles.count(),
        squared.count(),
        squared.class_count()
    );

    // Covering number: least power of the subset that is the whole group.
    match a5.covering_number(&three_cycles, 20)? {
        CoveringOutcome::Within(b) => println!("covering number of the 3-cycles: {b}"),
        CoveringOutcome::NotWithin { cap } => println!("not covered within {cap} steps"),
    }

    // Odd classes of symmetric groups can never cover: powers alternate
    // between odd and even permutations.
    let s4 = build_symmetric(4)?;
    let transpositions = s4.subset_from_types(&[parse_cycle_type("2 1^2", 4)?])?;
    match s4.covering_number(&transpositions, 20)? {
        CoveringOutcome::Within(b) => println!("transpositions of S4 cover in {b}"),
        CoveringOutcome::NotWithin { cap } => {
            println!("transpositions of S4 do not cover within {cap} (parity)")
        }
    }
    println!();

    // Dominance: the largest class inside a normal subset is big relative
    // to the subset, measured by exact cleared-power comparisons.
    let subset = a5.subset_from_types(&[
        parse_cycle_type("3 1^2", 5)?,
        parse_cycle_type("2^2 1", 5)?,
    ])?;
    let r = a5.bigclass_check(&subset, Epsilon::new(1, 4)?)?;
    println!(
        "subset of size {}: largest class {} of size {}; |C| >= |A|^(3/4): {}, |A| <= |C|^(5/4): {}",
        r.subset_size, r.largest_class, r.largest_size, r.verdict, r.companion
    );

    // Star containment, checked against the exhaustive product.
    let s6 = build_symmetric(6)?;
    let r = s6.star_containment_check(&parse_cycle_type("3 1^3", 6)?, &parse_cycle_type("2 1^4", 6)?)?;
    println!(
        "star of a 3-cycle and a transposition in S6: {} (contained: {}, size matches: {})",
        r.star_type, r.contained, r.size_matches
    );
    Ok(())
}
