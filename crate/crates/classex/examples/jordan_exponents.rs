//! The classical-group side: Jordan descriptors, centralizer exponents in
//! the linear, symplectic, and orthogonal families, class size and dimension
//! windows driven by the support, and the classical star product.

use classex::classical::{
    class_dimension_bounds, class_size_exponents, dimension_expansion_certified, format_descriptor,
    linear_exponent, orthogonal_exponent, parse_descriptor, star, star_expansion_verdict,
    symplectic_exponent, ClassicalFamily, ClassicalGroupSpec,
};
use classex::sym::Epsilon;

fn main() -> classex::Result<()> {
    // A descriptor line: group | dominant eigenvalue | Jordan blocks | the
    // dimension on which that eigenvalue does not act.
    let (spec, x) = parse_descriptor("Sp 8 3 | +1 | 2^1 1^6 | 0")?;
    println!("descriptor {}", format_descriptor(&spec, &x));
    println!("  ambient dimension {}, support {}", x.n(), x.support());

    // Centralizer exponents of the same block data in the three families.
    let blocks = x.block_map();
    println!(
        "  exponents: linear f = {}, symplectic g = {}, orthogonal h = {}",
        linear_exponent(blocks),
        symplectic_exponent(blocks),
        orthogonal_exponent(blocks)
    );
    println!();

    // Support bounds the class size exponent from both sides.
    let spec = ClassicalGroupSpec::new(ClassicalFamily::Linear, 12, 5)?;
    for s in [1u64, 2, 4] {
        let w = class_size_exponents(&spec, s)?;
        println!(
            "{spec}: support {s} puts log_q |class| roughly in [{}, {}] (constants aside)",
            w.lo, w.hi
        );
    }
    println!();

    // The classical star product adds supports, and that additivity is what
    // certifies expansion for the product class.
    let (spec1, x1) = parse_descriptor("L 12 5 | +1 | 2^2 1^8 | 0")?;
    let (_, x2) = parse_descriptor("L 12 5 | +1 | 3^1 1^9 | 0")?;
    let y = star(&x1, &x2)?;
    println!(
        "star: ({x1}) * ({x2}) = {y}  supports {} + {} = {}",
        x1.support(),
        x2.support(),
        y.support()
    );
    let v = star_expansion_verdict(&spec1, &x1, &x2, Epsilon::new(1, 4)?)?;
    println!(
        "  expansion at eps = 1/4: window [{}, {}], exponent inequality {}, ratio condition {}",
        v.product_window.lo, v.product_window.hi, v.exponent_inequality, v.ratio_holds
    );
    println!();

    // The field-free version of the same arithmetic: dimension windows in
    // the ambient algebraic group, and a certified expansion statement.
    let w = class_dimension_bounds(ClassicalFamily::OrthogonalPlus, 40, 3)?;
    println!("O+ dimension window at n = 40, s = 3: [{}, {}]", w.lo, w.hi);
    let certified =
        dimension_expansion_certified(ClassicalFamily::OrthogonalPlus, 40, 3, 4, Epsilon::new(1, 3)?)?;
    println!("dimension expansion certified for supports 3, 4 at eps = 1/3: {certified}");
    Ok(())
}
