//! The bound suite for symmetric group classes: two-sided size bounds from
//! the support alone, a certified analytic lower bound, and the support
//! threshold for small classes. Nothing here is floating point internally;
//! enclosures are rational intervals rounded outward, and the floats below
//! are display-only.

use classex::cycle::{enumerate, sym_class_size};
use classex::sym::{
    class_size_analytic_lower, class_size_bounds, factorial_bounds, support_threshold_scan,
    PermFamily,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> classex::Result<()> {
    // Support alone brackets every class size.
    let n = 20;
    println!("class size windows by support, n = {n}:");
    for s in [4u64, 8, 12, 16] {
        let w = class_size_bounds(n, s)?;
        let analytic = class_size_analytic_lower(n, s, 64)?;
        println!(
            "  s = {s:<2}  [{:.3e}, {:.3e}]  analytic floor {:.3e}",
            approx(&w.lower),
            approx(&w.upper),
            approx(&analytic)
        );
    }
    println!();

    // The windows really contain every class of the degree.
    let mut widest: Option<(f64, String)> = None;
    for ct in enumerate(n) {
        let size = sym_class_size(&ct);
        let w = class_size_bounds(n, ct.support())?;
        assert!(w.contains_int(&size));
        let size_rat = BigRational::from_integer(BigInt::from(size));
        let ratio = approx(&(size_rat / &w.lower));
        if widest.as_ref().map_or(true, |(r, _)| ratio > *r) {
            widest = Some((ratio, ct.to_string()));
        }
    }
    let (ratio, ct) = widest.unwrap();
    println!("every class of S{n} sits in its window; furthest above its floor: {ct} ({ratio:.1}x)");
    println!();

    // Certified factorial enclosure, outward rounded.
    let fb = factorial_bounds(50, 96)?;
    println!(
        "50! enclosure at 96 bits: [{:.12e}, {:.12e}]",
        approx(&fb.lower),
        approx(&fb.upper)
    );
    println!();

    // Small class => small support: scanning a whole degree finds no
    // exceptions to |C|^8 <= |G| implying s <= n/3.
    for n in [40u64, 48] {
        let violators = support_threshold_scan(n, PermFamily::Symmetric)?;
        println!("support threshold scan, S{n}: {} violators", violators.len());
    }
    let violators = support_threshold_scan(45, PermFamily::Alternating)?;
    println!("support threshold scan, A45: {} violators", violators.len());
    Ok(())
}

/// Display-only conversion; exactness lives in the rationals above.
fn approx(v: &BigRational) -> f64 {
    let n: f64 = v.numer().to_string().parse().unwrap_or(f64::MAX);
    let d: f64 = v.denom().to_string().parse().unwrap_or(1.0);
    n / d
}
