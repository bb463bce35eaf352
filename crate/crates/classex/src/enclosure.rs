//! Certified rational enclosures.
//!
//! An [`Enclosure`] is a closed interval with exact rational endpoints that
//! is guaranteed to contain the real number it stands for. All operations
//! round outward, so enclosures only ever widen; there is no floating point
//! and therefore no silent precision loss. Precision is a count of
//! fractional bits: an operation with `bits = 64` contributes rounding error
//! at most `2^-64` at each endpoint.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default fractional-bit precision for irrational enclosures.
pub const DEFAULT_PRECISION: u32 = 64;

/// A closed interval `[lo, hi]` of rationals with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    /// The degenerate interval containing exactly one rational.
    pub fn exact(v: BigRational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::from_integer(v.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Enclosure::new(lo, hi)
    }

    pub fn scale(&self, k: &BigRational) -> Enclosure {
        self.mul(&Enclosure::exact(k.clone()))
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Enclosure {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Enclosure::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &Enclosure) -> Enclosure {
        self.mul(&other.recip())
    }

    /// Integer power of a nonnegative interval.
    pub fn pow(&self, exp: u64) -> Enclosure {
        assert!(!self.lo.is_negative(), "pow needs a nonnegative interval");
        if exp == 0 {
            return Enclosure::exact(BigRational::one());
        }
        Enclosure::new(rational_pow(&self.lo, exp), rational_pow(&self.hi, exp))
    }

    /// Square root of a nonnegative interval, rounded outward at `bits`
    /// fractional bits.
    pub fn sqrt(&self, bits: u32) -> Enclosure {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        Enclosure::new(sqrt_lower(&self.lo, bits), sqrt_upper(&self.hi, bits))
    }

    /// Width `hi - lo`, for precision assertions in tests.
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

pub fn rational_pow(x: &BigRational, exp: u64) -> BigRational {
    let exp = u32::try_from(exp).expect("exponent fits u32");
    BigRational::new(x.numer().pow(exp), x.denom().pow(exp))
}

fn rat(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Largest rational of the form `t / (q * 2^bits)` that is at most
/// `sqrt(p/q)`: floor-rounded directed square root.
pub fn sqrt_lower(x: &BigRational, bits: u32) -> BigRational {
    assert!(!x.is_negative());
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    // sqrt(p/q) = sqrt(p*q)/q; scale by 2^bits and take the integer root.
    let scaled = p * q * (BigUint::one() << (2 * bits));
    let root = scaled.sqrt(); // floor
    rat(root, q * (BigUint::one() << bits))
}

/// Matching ceiling-rounded directed square root.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    assert!(!x.is_negative());
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    let scaled = p * q * (BigUint::one() << (2 * bits));
    let root = scaled.sqrt();
    let exact = &root * &root == scaled;
    let up = if exact { root } else { root + BigUint::one() };
    rat(up, q * (BigUint::one() << bits))
}

/// Enclosure of `x^(1/k)` for a natural `x`, outward at `bits` bits.
pub fn nth_root_enclosure(x: &BigUint, k: u32, bits: u32) -> Enclosure {
    assert!(k >= 1);
    let scaled = x * (BigUint::one() << (k * bits));
    let root = scaled.nth_root(k); // floor
    let den = BigUint::one() << bits;
    let lo = rat(root.clone(), den.clone());
    let hi = rat(root + BigUint::one(), den);
    Enclosure::new(lo, hi)
}

/// Enclosure of Euler's number from the factorial series. The tail after
/// `m` terms is positive and below `2/(m+1)!`.
pub fn e_enclosure(bits: u32) -> Enclosure {
    let mut sum = BigRational::zero();
    let mut fact = BigUint::one();
    let mut m = 0u64;
    loop {
        sum += rat(BigUint::one(), fact.clone());
        m += 1;
        fact *= m;
        // Stop once 2/(m+1)! (the remaining tail, with fact now = m!)
        // drops below 2^-(bits+2).
        let tail_num = BigUint::from(2u32) << (bits + 2);
        if tail_num < &fact * (m + 1) {
            break;
        }
    }
    let tail = rat(BigUint::from(2u32), fact * (m + 1));
    Enclosure::new(sum.clone(), sum + tail)
}

/// Enclosure of `atan(1/m)` from the alternating series; the remainder is
/// bounded by the first omitted term.
fn atan_recip_enclosure(m: u64, bits: u32) -> Enclosure {
    let m_big = BigUint::from(m);
    let mut sum = BigRational::zero();
    let mut j = 0u64;
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << (bits + 6));
    loop {
        let k = 2 * j + 1;
        let term = rat(
            BigUint::one(),
            m_big.pow(u32::try_from(k).unwrap()) * BigUint::from(k),
        );
        if term < threshold {
            // sum is within `term` of the limit on the side given by parity.
            let (lo, hi) = if j % 2 == 0 {
                (sum.clone(), sum + term)
            } else {
                (&sum - term, sum.clone())
            };
            return Enclosure::new(lo, hi);
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        j += 1;
    }
}

/// Enclosure of pi via Machin's identity
/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_enclosure(bits: u32) -> Enclosure {
    let a = atan_recip_enclosure(5, bits);
    let b = atan_recip_enclosure(239, bits);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    a.scale(&sixteen).sub(&b.scale(&four))
}
