//! Bound suite for symmetric-group conjugacy classes.
//!
//! Everything revolves around one tension: a class of support `s` in `S_n`
//! has size roughly `n^s` up to factors that depend only on `s`, so small
//! support forces small classes and large support forces the class sizes
//! that drive product-set expansion. The functions here make each step of
//! that picture exact: two-sided size bounds, Stirling enclosures, ratio
//! floors for star products, the eighth-power support threshold, expansion
//! verdicts, and the class zeta function.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cycle::{
    alt_class_size, enumerate, enumerate_leading, factorial, star, sym_class_size, CycleType,
};
use crate::enclosure::{e_enclosure, pi_enclosure, Enclosure};
use crate::error::{Error, Result};

/// An exact rational tolerance `p/q` with `0 < p/q < 1`, kept reduced.
/// Verdicts of the form `x >= y^{1-eps}` are decided with cleared
/// denominators (`x^q >= y^{q-p}`), never through logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u32,
    den: u32,
}

impl Epsilon {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::InvalidArgument(format!(
                "epsilon must satisfy 0 < p/q < 1, got {num}/{den}"
            )));
        }
        let g = num_integer::gcd(num, den);
        Ok(Epsilon {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u32 {
        self.num
    }

    pub fn denom(&self) -> u32 {
        self.den
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// Decides `x >= y^{1 - eps}` exactly: `x^q >= y^{q-p}`.
    pub fn power_at_least(&self, x: &BigUint, y: &BigUint) -> bool {
        x.pow(self.den) >= y.pow(self.den - self.num)
    }

    /// Decides `x <= y^{1 + eps}` exactly: `x^q <= y^{q+p}`.
    pub fn power_at_most(&self, x: &BigUint, y: &BigUint) -> bool {
        x.pow(self.den) <= y.pow(self.den + self.num)
    }

    /// Decides `x <= y^{eps}` exactly: `x^q <= y^p`.
    pub fn power_fraction_at_most(&self, x: &BigUint, y: &BigUint) -> bool {
        x.pow(self.den) <= y.pow(self.num)
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('/').ok_or_else(|| Error::Parse {
            input: s.to_string(),
            pos: 0,
            msg: "epsilon must be a fraction p/q".to_string(),
        })?;
        let parse = |t: &str, pos: usize| {
            t.trim().parse::<u32>().map_err(|_| Error::Parse {
                input: s.to_string(),
                pos,
                msg: "not a positive integer".to_string(),
            })
        };
        Epsilon::new(parse(a, 0)?, parse(b, a.len() + 1)?)
    }
}

/// A two-sided bound with exact rational endpoints and a tag saying what it
/// bounds. Integer-valued bounds are stored as integral rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub subject: String,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl BoundReport {
    pub fn contains_int(&self, v: &BigUint) -> bool {
        let v = BigRational::from_integer(BigInt::from(v.clone()));
        self.lower <= v && v <= self.upper
    }
}

fn int_rat(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `n! / (n-s)!`, the number of arrangements of `s` points out of `n`.
pub fn falling(n: u64, s: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in (n - s + 1)..=n {
        acc *= k;
    }
    acc
}

/// Two-sided size bounds for any `S_n` class of support `s`:
///
/// `n!/((n-s)! 2^{floor(s/2)} ceil(s/2)!)  <=  |C|  <=  n!/(n-s)!`.
///
/// The upper bound counts arrangements of the moved points. The lower bound
/// divides out the largest centralizer a support-`s` class can have; for odd
/// `s` the floor/ceil pair rounds the `s/2` exponents outward so the bound
/// stays valid (the centralizer has at most `floor(s/2)` non-fixed cycles).
pub fn class_size_bounds(n: u64, s: u64) -> Result<BoundReport> {
    if s > n || s == 1 {
        return Err(Error::InvalidArgument(format!(
            "support {s} is not attainable in degree {n}"
        )));
    }
    let arrangements = falling(n, s);
    let den = BigUint::from(2u32).pow(u32::try_from(s / 2).unwrap()) * factorial(s.div_ceil(2));
    let lower = BigRational::new(BigInt::from(arrangements.clone()), BigInt::from(den));
    Ok(BoundReport {
        subject: format!("class size, n={n} s={s}"),
        lower,
        upper: int_rat(arrangements),
    })
}

/// Stirling enclosure of `n!`:
/// `sqrt(2 pi n) (n/e)^n <= n! <= 2 sqrt(2 pi n) (n/e)^n`,
/// with both endpoints rounded outward at `bits` fractional bits.
pub fn factorial_bounds(n: u64, bits: u32) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("factorial bounds need n >= 1".into()));
    }
    let pi = pi_enclosure(bits);
    let e = e_enclosure(bits);
    let two_pi_n = pi.scale(&BigRational::from_integer(BigInt::from(2 * n)));
    let root = two_pi_n.sqrt(bits);
    let n_over_e = Enclosure::from_integer(BigInt::from(n)).div(&e);
    let power = n_over_e.pow(n);
    let base = root.mul(&power);
    Ok(BoundReport {
        subject: format!("{n}!"),
        lower: base.lo().clone(),
        upper: base.hi() * BigRational::from_integer(BigInt::from(2)),
    })
}

/// Analytic lower bound for every class of support `s` in `S_n`:
/// `(1 / (4 sqrt(pi n))) * n^{s/2} * e^{-s/2}`, returned as a rational that
/// is certified to sit below the true value (outward rounding throughout).
pub fn class_size_analytic_lower(n: u64, s: u64, bits: u32) -> Result<BigRational> {
    if n == 0 || s > n || s == 1 {
        return Err(Error::InvalidArgument(format!(
            "no classes of support {s} in degree {n}"
        )));
    }
    let pi = pi_enclosure(bits);
    let e = e_enclosure(bits);
    let n_rat = Enclosure::from_integer(BigInt::from(n));
    // n^{s/2} and e^{s/2}, odd s handled with a certified square root.
    let mut n_pow = n_rat.pow(s / 2);
    let mut e_pow = e.pow(s / 2);
    if s % 2 == 1 {
        n_pow = n_pow.mul(&n_rat.sqrt(bits));
        e_pow = e_pow.mul(&e.sqrt(bits));
    }
    let root = pi
        .scale(&BigRational::from_integer(BigInt::from(n)))
        .sqrt(bits);
    let den = root
        .scale(&BigRational::from_integer(BigInt::from(4)))
        .mul(&e_pow);
    Ok(n_pow.div(&den).lo().clone())
}

/// Exact ratio `(n-s1)! (n-s2)! / (n! (n-s1-s2)!)`: the chance that a
/// support-`s2` arrangement avoids a fixed support-`s1` set, written as a
/// quotient of arrangement counts.
pub fn arrangement_ratio(n: u64, s1: u64, s2: u64) -> Result<BigRational> {
    if s1 + s2 > n {
        return Err(Error::SupportOverflow { total: s1 + s2, n });
    }
    let num = factorial(n - s1) * factorial(n - s2);
    let den = factorial(n) * factorial(n - s1 - s2);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Floor guarantee for [`arrangement_ratio`] when `s1, s2 <= n/3`:
/// the ratio is at least `3^{-s1}`. Decided exactly by clearing the power.
pub fn arrangement_ratio_floor_holds(n: u64, s1: u64, s2: u64) -> Result<bool> {
    if 3 * s1 > n || 3 * s2 > n {
        return Err(Error::InvalidArgument(format!(
            "floor guarantee needs s1, s2 <= n/3, got {s1}, {s2} at n = {n}"
        )));
    }
    let r = arrangement_ratio(n, s1, s2)?;
    let three = BigInt::from(3u32).pow(u32::try_from(s1).unwrap());
    Ok(r.numer() * three >= r.denom().clone())
}

/// Exact ratio `prod_{i>=2} c_i! d_i! / (c_i + d_i)!` of centralizer
/// multiplicity factors before and after a star product.
pub fn multiplicity_ratio(ct1: &CycleType, ct2: &CycleType) -> BigRational {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let lengths: std::collections::BTreeSet<u64> = ct1
        .pairs()
        .chain(ct2.pairs())
        .filter(|&(i, _)| i >= 2)
        .map(|(i, _)| i)
        .collect();
    for i in lengths {
        let c = ct1.multiplicity(i);
        let d = ct2.multiplicity(i);
        num *= factorial(c) * factorial(d);
        den *= factorial(c + d);
    }
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Floor guarantee for [`multiplicity_ratio`]: the ratio is at least
/// `2^{-(s1+s2)/2}`. Compared on squares so the half-integer exponent never
/// leaves the integers.
pub fn multiplicity_ratio_floor_holds(ct1: &CycleType, ct2: &CycleType) -> bool {
    let r = multiplicity_ratio(ct1, ct2);
    let s = ct1.support() + ct2.support();
    let num_sq = r.numer() * r.numer() * (BigInt::one() << s);
    let den_sq = r.denom() * r.denom();
    num_sq >= den_sq
}

/// `ceil(s1^{s1/2})`, a lower bound for every class size of support `s1`
/// when `2 <= s1 <= n/2`. Odd `s1` takes the ceiling of the exact square
/// root, which keeps the bound on the safe side.
pub fn class_size_power_lower(n: u64, s1: u64) -> Result<BigUint> {
    if s1 < 2 || 2 * s1 > n {
        return Err(Error::InvalidArgument(format!(
            "power lower bound needs 2 <= s1 <= n/2, got s1 = {s1}, n = {n}"
        )));
    }
    let s = BigUint::from(s1);
    if s1 % 2 == 0 {
        Ok(s.pow(u32::try_from(s1 / 2).unwrap()))
    } else {
        let full = s.pow(u32::try_from(s1).unwrap());
        let root = full.sqrt();
        if &root * &root == full {
            Ok(root)
        } else {
            Ok(root + BigUint::one())
        }
    }
}

/// Which group the scan or zeta function ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermFamily {
    Symmetric,
    Alternating,
}

/// Scans all classes of `S_n` (or `A_n`) and returns the types that violate
/// the support threshold: a class with `|C|^8 <= |G|` must have support
/// `s <= n/3`. The expected result is an empty vector.
///
/// The comparison is done without ever dividing: with `D` the centralizer
/// order, `|C|^8 <= n!` is `(n!)^7 <= D^8`, and the alternating variants
/// pick up factors of two for the halved group order and split classes.
pub fn support_threshold_scan(n: u64, family: PermFamily) -> Result<Vec<CycleType>> {
    let min_n = match family {
        PermFamily::Symmetric => 40,
        PermFamily::Alternating => 45,
    };
    if n < min_n {
        return Err(Error::InvalidArgument(format!(
            "support threshold scan needs n >= {min_n}, got {n}"
        )));
    }
    let fact7 = factorial(n).pow(7);
    let fact7_bits = fact7.bits();
    let violators: Vec<Vec<CycleType>> = (1..=n)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|lead| {
            let mut out = Vec::new();
            for ct in enumerate_leading(n, lead) {
                if 3 * ct.support() <= n {
                    continue;
                }
                let split;
                match family {
                    PermFamily::Symmetric => split = None,
                    PermFamily::Alternating => {
                        if !ct.is_even() {
                            continue;
                        }
                        split = Some(ct.splits_in_alt());
                    }
                }
                // Small-class test: left <= right with
                //   left = (n!)^7 * c1, right = D^8 * c2.
                let (c1_bits, c2_bits) = match split {
                    None => (0u64, 0u64),
                    Some(false) => (1, 0),
                    Some(true) => (0, 7),
                };
                let d = ct.centralizer_order();
                // If right < 2^{8b + c2_bits} <= 2^{left_bits - 1} <= left the
                // class is certainly big; skip the eighth power.
                if 8 * d.bits() + c2_bits < fact7_bits + c1_bits {
                    continue;
                }
                let left = &fact7 << c1_bits;
                let right = d.pow(8) << c2_bits;
                if left <= right {
                    out.push(ct);
                }
            }
            out
        })
        .collect();
    Ok(violators.into_concat())
}

trait Concat {
    type Out;
    fn into_concat(self) -> Self::Out;
}

impl<T> Concat for Vec<Vec<T>> {
    type Out = Vec<T>;
    fn into_concat(self) -> Vec<T> {
        self.into_iter().flatten().collect()
    }
}

/// One expansion check: does the star class of two classes reach the size
/// `(|C1| |C2|)^{1-eps}`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRecord {
    pub n: u64,
    pub type1: CycleType,
    pub type2: CycleType,
    pub size1: BigUint,
    pub size2: BigUint,
    pub star_type: CycleType,
    pub star_size: BigUint,
    pub epsilon: Epsilon,
    pub verdict: bool,
}

/// Computes the star class of `ct1, ct2` and decides
/// `|C*| >= (|C1| |C2|)^{1-eps}` exactly.
pub fn expansion_verdict(ct1: &CycleType, ct2: &CycleType, eps: Epsilon) -> Result<ExpansionRecord> {
    let star_type = star(ct1, ct2)?;
    let size1 = sym_class_size(ct1);
    let size2 = sym_class_size(ct2);
    let star_size = sym_class_size(&star_type);
    let product = &size1 * &size2;
    let verdict = eps.power_at_least(&star_size, &product);
    Ok(ExpansionRecord {
        n: ct1.degree(),
        type1: ct1.clone(),
        type2: ct2.clone(),
        size1,
        size2,
        star_type,
        star_size,
        epsilon: eps,
        verdict,
    })
}

/// Class zeta function `sum_C |C|^{-s}` over the classes of `S_n` or `A_n`.
/// Exact for integer `s`; a certified enclosure for fractional `s`.
/// Always at least 1 (the identity class contributes 1), with equality only
/// for the trivial group.
pub fn class_zeta(n: u64, s: &BigRational, family: PermFamily, bits: u32) -> Result<Enclosure> {
    if !s.is_positive() {
        return Err(Error::InvalidArgument(format!("zeta needs s > 0, got {s}")));
    }
    let mut sizes: Vec<BigUint> = Vec::new();
    for ct in enumerate(n) {
        match family {
            PermFamily::Symmetric => sizes.push(sym_class_size(&ct)),
            PermFamily::Alternating => {
                if ct.is_even() {
                    sizes.extend(alt_class_size(&ct).expect("even type").sizes());
                }
            }
        }
    }
    sizes_zeta(&sizes, s, bits)
}

/// `sum_z z^{-s}` over a list of class sizes; shared with the oracle.
pub fn sizes_zeta(sizes: &[BigUint], s: &BigRational, bits: u32) -> Result<Enclosure> {
    if !s.is_positive() {
        return Err(Error::InvalidArgument(format!("zeta needs s > 0, got {s}")));
    }
    let p = s
        .numer()
        .to_u32()
        .ok_or_else(|| Error::InvalidArgument("zeta exponent numerator too large".into()))?;
    let q = s
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidArgument("zeta exponent denominator too large".into()))?;
    let mut total = Enclosure::exact(BigRational::zero());
    for z in sizes {
        let zp = z.pow(p);
        let term = if q == 1 || zp.is_one() {
            Enclosure::exact(BigRational::new(BigInt::one(), BigInt::from(zp)))
        } else {
            crate::enclosure::nth_root_enclosure(&zp, q, bits).recip()
        };
        total = total.add(&term);
    }
    Ok(total)
}

/// Number of `S_n` classes of size at most `m`.
pub fn classes_of_size_at_most(n: u64, m: &BigUint) -> u64 {
    let mut count = 0;
    for ct in enumerate(n) {
        if &sym_class_size(&ct) <= m {
            count += 1;
        }
    }
    count
}

/// Checks the class-count growth condition `#{C : |C| <= m} <= m^eps`,
/// decided exactly.
pub fn small_class_count_check(n: u64, m: &BigUint, eps: Epsilon) -> bool {
    let count = BigUint::from(classes_of_size_at_most(n, m));
    eps.power_fraction_at_most(&count, m)
}

/// Order-preserving parallel map over all cycle types of `S_n`, fanned out
/// by leading part so the output order never depends on the thread count.
pub fn par_map_types<R, F>(n: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&CycleType) -> R + Sync,
{
    if n == 0 {
        return Vec::new();
    }
    (1..=n)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|lead| {
            enumerate_leading(n, lead)
                .map(|ct| f(&ct))
                .collect::<Vec<R>>()
        })
        .collect::<Vec<Vec<R>>>()
        .into_concat()
}
