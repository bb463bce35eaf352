//! Support and exponent calculus for classical matrix groups.
//!
//! Class sizes in the finite classical groups grow like `q^(2a s n)` where
//! `s` is the support of the element (codimension of its largest eigenspace
//! over the algebraic closure) and `a` is 1 for linear and unitary groups
//! and 1/2 for symplectic and orthogonal ones. Nothing here touches matrix
//! entries: an element is summarized by a [`JordanDescriptor`], and all
//! results are exact exponent windows. The brute-force cross-checks against
//! actual matrix groups live in [`crate::oracle`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sym::Epsilon;

/// The classical family, which determines the exponent scale `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalFamily {
    Linear,
    Unitary,
    Symplectic,
    OrthogonalPlus,
    OrthogonalMinus,
}

impl ClassicalFamily {
    /// The constant `a`: class sizes scale like `q^(2 a s n)`.
    pub fn exponent_scale(&self) -> BigRational {
        match self {
            ClassicalFamily::Linear | ClassicalFamily::Unitary => BigRational::one(),
            _ => BigRational::new(BigInt::one(), BigInt::from(2)),
        }
    }

    /// Degree of the matrix entries' field over F_q: 2 for unitary groups,
    /// 1 otherwise.
    pub fn field_degree(&self) -> u32 {
        match self {
            ClassicalFamily::Unitary => 2,
            _ => 1,
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            ClassicalFamily::Linear => "L",
            ClassicalFamily::Unitary => "U",
            ClassicalFamily::Symplectic => "Sp",
            ClassicalFamily::OrthogonalPlus => "O+",
            ClassicalFamily::OrthogonalMinus => "O-",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "L" => Some(ClassicalFamily::Linear),
            "U" => Some(ClassicalFamily::Unitary),
            "Sp" => Some(ClassicalFamily::Symplectic),
            "O+" => Some(ClassicalFamily::OrthogonalPlus),
            "O-" => Some(ClassicalFamily::OrthogonalMinus),
            _ => None,
        }
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A classical group: family, dimension, and field size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicalGroupSpec {
    pub family: ClassicalFamily,
    pub n: u64,
    pub q: u64,
}

const MAX_FIELD: u64 = 1 << 20;

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
            }
            return rest == 1;
        }
        p += 1;
    }
    true // q itself is prime
}

impl ClassicalGroupSpec {
    pub fn new(family: ClassicalFamily, n: u64, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDescriptor(format!(
                "classical group needs dimension >= 2, got {n}"
            )));
        }
        if q > MAX_FIELD {
            return Err(Error::ResourceGuard(format!(
                "field size {q} exceeds the validation cap {MAX_FIELD}"
            )));
        }
        if !is_prime_power(q) {
            return Err(Error::InvalidDescriptor(format!(
                "field size {q} is not a prime power"
            )));
        }
        if family == ClassicalFamily::Symplectic && n % 2 != 0 {
            return Err(Error::InvalidDescriptor(format!(
                "symplectic groups have even dimension, got {n}"
            )));
        }
        Ok(ClassicalGroupSpec { family, n, q })
    }

    pub fn exponent_scale(&self) -> BigRational {
        self.family.exponent_scale()
    }
}

impl fmt::Display for ClassicalGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.family, self.n, self.q)
    }
}

/// Which scalar the dominant eigenvalue is, as far as the calculus cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenTag {
    PlusOne,
    MinusOne,
    /// A root of unity other than +-1.
    Unit,
    /// Anything else.
    Generic,
}

impl EigenTag {
    /// Tag of a product of two eigenvalues. Coarse but sound: products of
    /// roots of unity stay roots of unity, and +-1 behave as signs.
    pub fn product(self, other: EigenTag) -> EigenTag {
        use EigenTag::*;
        match (self, other) {
            (PlusOne, x) | (x, PlusOne) => x,
            (MinusOne, MinusOne) => PlusOne,
            (MinusOne, Unit) | (Unit, MinusOne) | (Unit, Unit) => Unit,
            _ => Generic,
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            EigenTag::PlusOne => "+1",
            EigenTag::MinusOne => "-1",
            EigenTag::Unit => "unit",
            EigenTag::Generic => "gen",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "+1" => Some(EigenTag::PlusOne),
            "-1" => Some(EigenTag::MinusOne),
            "unit" => Some(EigenTag::Unit),
            "gen" => Some(EigenTag::Generic),
            _ => None,
        }
    }
}

impl fmt::Display for EigenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Jordan data of an element at its dominant eigenvalue: block sizes with
/// multiplicities, plus the dimension `k` of the complement on which the
/// eigenvalue does not appear. The ambient dimension is derived:
/// `n = k + sum_i i * n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanDescriptor {
    pub lambda: EigenTag,
    blocks: BTreeMap<u64, u64>,
    complement: u64,
}

impl JordanDescriptor {
    pub fn new(lambda: EigenTag, blocks: &[(u64, u64)], complement: u64) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(size, mult) in blocks {
            if size == 0 {
                return Err(Error::InvalidDescriptor("block size 0".into()));
            }
            if mult == 0 {
                return Err(Error::InvalidDescriptor(format!(
                    "multiplicity 0 for block size {size}"
                )));
            }
            if map.insert(size, mult).is_some() {
                return Err(Error::InvalidDescriptor(format!(
                    "duplicate block size {size}"
                )));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidDescriptor(
                "descriptor needs at least one block for the dominant eigenvalue".into(),
            ));
        }
        Ok(JordanDescriptor {
            lambda,
            blocks: map,
            complement,
        })
    }

    pub fn blocks(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.blocks.iter().map(|(&i, &c)| (i, c))
    }

    pub fn block_map(&self) -> &BTreeMap<u64, u64> {
        &self.blocks
    }

    pub fn complement(&self) -> u64 {
        self.complement
    }

    /// Ambient dimension `n = k + sum i n_i`.
    pub fn n(&self) -> u64 {
        self.complement + self.blocks.iter().map(|(&i, &c)| i * c).sum::<u64>()
    }

    /// Number of size-1 blocks, the trivial part of the eigenspace.
    pub fn t(&self) -> u64 {
        self.blocks.get(&1).copied().unwrap_or(0)
    }

    /// Number of blocks of size at least 2.
    pub fn r(&self) -> u64 {
        self.blocks
            .iter()
            .filter(|(&i, _)| i >= 2)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Support: codimension of the dominant eigenspace,
    /// `s = n - sum_i n_i = k + sum_i (i-1) n_i`.
    pub fn support(&self) -> u64 {
        self.n() - self.blocks.values().sum::<u64>()
    }
}

impl fmt::Display for JordanDescriptor {
    /// Block text form: `i^n_i` terms, decreasing size; the full descriptor
    /// line is produced by [`format_descriptor`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&i, &c) in self.blocks.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{i}^{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// `spec | lambda | blocks | k`, e.g. `Sp 8 3 | +1 | 2^1 1^6 | 0`.
pub fn format_descriptor(spec: &ClassicalGroupSpec, x: &JordanDescriptor) -> String {
    format!("{spec} | {} | {x} | {}", x.lambda, x.complement)
}

/// Parses the `family n q | lambda | blocks | k` line.
pub fn parse_descriptor(input: &str) -> Result<(ClassicalGroupSpec, JordanDescriptor)> {
    let err = |pos: usize, msg: &str| Error::Parse {
        input: input.to_string(),
        pos,
        msg: msg.to_string(),
    };
    let fields: Vec<&str> = input.split('|').collect();
    if fields.len() != 4 {
        return Err(err(0, "descriptor needs 4 '|'-separated fields"));
    }
    let spec = parse_group_spec(fields[0])?;

    let tag_pos = fields[0].len() + 1;
    let lambda = EigenTag::from_token(fields[1].trim())
        .ok_or_else(|| err(tag_pos, "unknown eigenvalue tag (expected +1, -1, unit, gen)"))?;

    let blocks_pos = tag_pos + fields[1].len() + 1;
    let blocks = parse_blocks(fields[2]).map_err(|e| match e {
        Error::Parse { msg, .. } => err(blocks_pos, &msg),
        other => other,
    })?;
    let k_pos = blocks_pos + fields[2].len() + 1;
    let complement: u64 = fields[3]
        .trim()
        .parse()
        .map_err(|_| err(k_pos, "bad complement dimension"))?;
    let desc = JordanDescriptor::new(lambda, &blocks, complement)?;
    if desc.n() != spec.n {
        return Err(Error::InvalidDescriptor(format!(
            "descriptor dimensions sum to {}, header says {}",
            desc.n(),
            spec.n
        )));
    }
    Ok((spec, desc))
}

/// Parses a bare group field, `family n q` (for example `L 3 2`).
pub fn parse_group_spec(input: &str) -> Result<ClassicalGroupSpec> {
    let err = |msg: &str| Error::Parse {
        input: input.to_string(),
        pos: 0,
        msg: msg.to_string(),
    };
    let header: Vec<&str> = input.split_whitespace().collect();
    if header.len() != 3 {
        return Err(err("group field needs 'family n q'"));
    }
    let family = ClassicalFamily::from_token(header[0])
        .ok_or_else(|| err("unknown family (expected L, U, Sp, O+, O-)"))?;
    let n: u64 = header[1].parse().map_err(|_| err("bad dimension"))?;
    let q: u64 = header[2].parse().map_err(|_| err("bad field size"))?;
    ClassicalGroupSpec::new(family, n, q)
}

/// Parses a bare Jordan block list, `2^1 1^6` (multiplicity 1 may be left
/// implicit, as in `3 1^2`).
pub fn parse_blocks(input: &str) -> Result<Vec<(u64, u64)>> {
    let err = |msg: &str| Error::Parse {
        input: input.to_string(),
        pos: 0,
        msg: msg.to_string(),
    };
    let mut blocks = Vec::new();
    for token in input.split_whitespace() {
        let (size_str, mult_str) = match token.split_once('^') {
            Some((a, b)) => (a, b),
            None => (token, "1"),
        };
        let size: u64 = size_str.parse().map_err(|_| err("bad block size"))?;
        let mult: u64 = mult_str
            .parse()
            .map_err(|_| err("bad block multiplicity"))?;
        blocks.push((size, mult));
    }
    if blocks.is_empty() {
        return Err(err("empty block list"));
    }
    Ok(blocks)
}

/// Centralizer exponent in the linear and unitary families:
/// `f = sum_i i n_i^2 + 2 sum_{i<j} i n_i n_j`; the centralizer of an
/// element with these blocks has order about `q^f` (exactly `q^f` times a
/// product of `1 - q^{-m}` factors).
pub fn linear_exponent(blocks: &BTreeMap<u64, u64>) -> u64 {
    let mut f = 0u64;
    for (&i, &ni) in blocks {
        f += i * ni * ni;
        for (&j, &nj) in blocks.range((i + 1)..) {
            let _ = j;
            f += 2 * i * ni * nj;
        }
    }
    f
}

/// Sum of `n_i` over odd block sizes: the correction between the linear
/// exponent and the symplectic/orthogonal ones.
fn odd_size_multiplicity(blocks: &BTreeMap<u64, u64>) -> u64 {
    blocks
        .iter()
        .filter(|(&i, _)| i % 2 == 1)
        .map(|(_, &c)| c)
        .sum()
}

/// Width used for the even-characteristic windows. The even-q statement
/// sums `n_i` over even `i`; a second defensible reading sums over even
/// `n_i`. The window uses the larger of the two so it is safe under either
/// reading.
fn even_q_width(blocks: &BTreeMap<u64, u64>) -> u64 {
    let over_even_sizes: u64 = blocks
        .iter()
        .filter(|(&i, _)| i % 2 == 0)
        .map(|(_, &c)| c)
        .sum();
    let over_even_mults: u64 = blocks.values().filter(|&&c| c % 2 == 0).sum();
    over_even_sizes.max(over_even_mults)
}

/// An exact exponent window `[lo, hi]`. `constant_caveat` records that the
/// quantity is only pinned to the window up to bounded constant factors
/// (true for size windows, false for containments that hold on the nose).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub constant_caveat: bool,
}

impl ExponentInterval {
    fn new(lo: BigRational, hi: BigRational, constant_caveat: bool) -> Self {
        assert!(lo <= hi, "exponent window out of order");
        ExponentInterval {
            lo,
            hi,
            constant_caveat,
        }
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn int_i(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Centralizer exponent in the symplectic family for odd `q`:
/// `g = f + sum_{i odd} n_i`; centralizer order about `q^{g/2}`.
pub fn symplectic_exponent(blocks: &BTreeMap<u64, u64>) -> u64 {
    linear_exponent(blocks) + odd_size_multiplicity(blocks)
}

/// For even `q` the symplectic exponent is only pinned to a window
/// `[g, g + 2w]`; see [`even_q_width`] for `w`.
pub fn symplectic_exponent_window(blocks: &BTreeMap<u64, u64>) -> ExponentInterval {
    let g = symplectic_exponent(blocks);
    let w = even_q_width(blocks);
    ExponentInterval::new(int(g), int(g + 2 * w), false)
}

/// Centralizer exponent in the orthogonal family for odd `q`:
/// `h = f - sum_{i odd} n_i`; centralizer order about `q^{h/2}`.
pub fn orthogonal_exponent(blocks: &BTreeMap<u64, u64>) -> u64 {
    linear_exponent(blocks) - odd_size_multiplicity(blocks)
}

/// For even `q` the orthogonal exponent window is `[h - 2w, h]`; the lower
/// end may be negative for tiny descriptors, which just means the bound is
/// weak there.
pub fn orthogonal_exponent_window(blocks: &BTreeMap<u64, u64>) -> ExponentInterval {
    let h = orthogonal_exponent(blocks);
    let w = even_q_width(blocks);
    ExponentInterval::new(int_i(h as i128 - 2 * w as i128), int(h), false)
}

/// Window for `log_q |x^G|` of a class with support `s < n/2`:
/// `2 a s (n - s - 1) <= log_q |x^G| <= a s (2n - s + 1)`,
/// valid up to bounded constant factors (hence the caveat flag).
pub fn class_size_exponents(spec: &ClassicalGroupSpec, s: u64) -> Result<ExponentInterval> {
    let n = spec.n;
    if 2 * s >= n {
        return Err(Error::InvalidArgument(format!(
            "class size window needs s < n/2, got s = {s}, n = {n}"
        )));
    }
    let a = spec.exponent_scale();
    let lo = int(2) * &a * int(s) * int(n - s - 1);
    let hi = a * int(s) * int(2 * n - s + 1);
    Ok(ExponentInterval::new(lo, hi, true))
}

/// Two-sided window `[(2a - eps1) n s, (2a + eps1) n s]` for the class size
/// exponent when support determines size up to an `eps1` slack.
pub fn support_exponent_window(
    spec: &ClassicalGroupSpec,
    s: u64,
    eps1: &BigRational,
) -> Result<ExponentInterval> {
    if eps1.is_negative() {
        return Err(Error::InvalidArgument("eps1 must be nonnegative".into()));
    }
    let two_a = int(2) * spec.exponent_scale();
    if *eps1 > two_a {
        return Err(Error::InvalidArgument(format!(
            "eps1 = {eps1} exceeds 2a = {two_a}"
        )));
    }
    let ns = int(spec.n) * int(s);
    Ok(ExponentInterval::new(
        (&two_a - eps1) * &ns,
        (&two_a + eps1) * &ns,
        true,
    ))
}

/// Support ceiling `2 delta n + d / n` for elements whose class is small
/// relative to the group (`|x^G| <= |G|^delta` with defect `d`).
/// Requires `0 < delta <= 1/4` and `d >= 0`.
pub fn support_ceiling(n: u64, delta: &BigRational, d: &BigRational) -> Result<BigRational> {
    if !delta.is_positive() || *delta > BigRational::new(BigInt::one(), BigInt::from(4)) {
        return Err(Error::InvalidArgument(format!(
            "delta must satisfy 0 < delta <= 1/4, got {delta}"
        )));
    }
    if d.is_negative() {
        return Err(Error::InvalidArgument("defect d must be >= 0".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    Ok(int(2) * delta * int(n) + d / int(n))
}

/// Star product of two descriptors in the same dimension, both of support
/// below `n/4`. The product of representatives in general position has the
/// dominant eigenvalue `lambda1 * lambda2` with `t1 + t2 - n` trivial
/// blocks, inherits both nontrivial block sets, and its complement collects
/// both complements. Its support is exactly `s1 + s2`.
pub fn star(x1: &JordanDescriptor, x2: &JordanDescriptor) -> Result<JordanDescriptor> {
    let n = x1.n();
    if x2.n() != n {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: {} vs {}",
            n,
            x2.n()
        )));
    }
    for x in [x1, x2] {
        let s = x.support();
        if 4 * s >= n {
            return Err(Error::SupportTooLarge { s, n });
        }
    }
    let trivial = x1.t() + x2.t() - n; // positive: t_i > n/2 when s_i < n/4
    let mut blocks: BTreeMap<u64, u64> = BTreeMap::new();
    blocks.insert(1, trivial);
    for (i, c) in x1.blocks().chain(x2.blocks()) {
        if i >= 2 {
            *blocks.entry(i).or_insert(0) += c;
        }
    }
    let pairs: Vec<(u64, u64)> = blocks.into_iter().collect();
    JordanDescriptor::new(
        x1.lambda.product(x2.lambda),
        &pairs,
        x1.complement() + x2.complement(),
    )
}

/// The exact inequality `(2a - eps1) / (2a + eps1) >= 1 - eps` that makes a
/// star product certify expansion at tolerance `eps`.
pub fn ratio_check(a: &BigRational, eps: &BigRational, eps1: &BigRational) -> bool {
    let two_a = BigRational::from_integer(BigInt::from(2)) * a;
    let lo = &two_a - eps1;
    let hi = &two_a + eps1;
    assert!(hi.is_positive(), "ratio check needs 2a + eps1 > 0");
    // lo/hi >= 1 - eps, cleared of the positive denominator.
    lo >= (BigRational::one() - eps) * hi
}

/// Star product with its expansion verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarVerdict {
    pub product: JordanDescriptor,
    pub s1: u64,
    pub s2: u64,
    /// Window for the product class's size exponent at slack eps1 = eps/2.
    pub product_window: ExponentInterval,
    /// `(2a - eps1) n (s1+s2) >= (1 - eps) (2a + eps1) n (s1+s2)`.
    pub exponent_inequality: bool,
    /// `(2a - eps1) / (2a + eps1) >= 1 - eps`.
    pub ratio_holds: bool,
}

/// Computes the star product of `x1, x2` inside `spec` and certifies the
/// expansion inequality at tolerance `eps`, taking `eps1 = eps / 2`.
pub fn star_expansion_verdict(
    spec: &ClassicalGroupSpec,
    x1: &JordanDescriptor,
    x2: &JordanDescriptor,
    eps: Epsilon,
) -> Result<StarVerdict> {
    if x1.n() != spec.n {
        return Err(Error::InvalidArgument(format!(
            "descriptor dimension {} does not match group dimension {}",
            x1.n(),
            spec.n
        )));
    }
    let product = star(x1, x2)?;
    let s1 = x1.support();
    let s2 = x2.support();
    let eps_rat = eps.as_rational();
    let eps1 = &eps_rat / BigRational::from_integer(BigInt::from(2));
    let a = spec.exponent_scale();
    let ratio_holds = ratio_check(&a, &eps_rat, &eps1);
    let product_window = support_exponent_window(spec, s1 + s2, &eps1)?;
    // With n (s1 + s2) > 0 this is the ratio check scaled by a positive
    // number; degenerate supports make it trivially true.
    let ns = int(spec.n) * int(s1 + s2);
    let exponent_inequality = if ns.is_zero() {
        true
    } else {
        let two_a = int(2) * &a;
        (&two_a - &eps1) * &ns >= (BigRational::one() - &eps_rat) * (&two_a + &eps1) * &ns
    };
    Ok(StarVerdict {
        product,
        s1,
        s2,
        product_window,
        exponent_inequality,
        ratio_holds,
    })
}

/// Dimension window for a conjugacy class with support `s < n/2` in the
/// ambient simple algebraic group: the same arithmetic as
/// [`class_size_exponents`] with no field in sight, and no constant caveat.
pub fn class_dimension_bounds(
    family: ClassicalFamily,
    n: u64,
    s: u64,
) -> Result<ExponentInterval> {
    if 2 * s >= n {
        return Err(Error::InvalidArgument(format!(
            "dimension window needs s < n/2, got s = {s}, n = {n}"
        )));
    }
    let a = family.exponent_scale();
    let lo = int(2) * &a * int(s) * int(n - s - 1);
    let hi = a * int(s) * int(2 * n - s + 1);
    Ok(ExponentInterval::new(lo, hi, false))
}

/// Certifies the dimension form of expansion: a product of classes with
/// supports `s1, s2` contains a class of dimension at least
/// `(1 - eps) (dim A1 + dim A2)` whenever the window floor at `s1 + s2`
/// beats the window ceilings at `s1` and `s2` combined.
pub fn dimension_expansion_certified(
    family: ClassicalFamily,
    n: u64,
    s1: u64,
    s2: u64,
    eps: Epsilon,
) -> Result<bool> {
    let w1 = class_dimension_bounds(family, n, s1)?;
    let w2 = class_dimension_bounds(family, n, s2)?;
    let w12 = class_dimension_bounds(family, n, s1 + s2)?;
    let one_minus_eps = BigRational::one() - eps.as_rational();
    Ok(one_minus_eps * (w1.hi + w2.hi) <= w12.lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    fn r(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn lin(n: u64, q: u64) -> ClassicalGroupSpec {
        ClassicalGroupSpec::new(ClassicalFamily::Linear, n, q).unwrap()
    }

    #[test]
    fn exponent_scales() {
        assert_eq!(ClassicalFamily::Linear.exponent_scale(), r(1, 1));
        assert_eq!(ClassicalFamily::Unitary.exponent_scale(), r(1, 1));
        assert_eq!(ClassicalFamily::Symplectic.exponent_scale(), r(1, 2));
        assert_eq!(ClassicalFamily::OrthogonalPlus.exponent_scale(), r(1, 2));
        assert_eq!(ClassicalFamily::OrthogonalMinus.exponent_scale(), r(1, 2));
        assert_eq!(ClassicalFamily::Unitary.field_degree(), 2);
        assert_eq!(ClassicalFamily::Symplectic.field_degree(), 1);
    }

    #[test]
    fn spec_validation() {
        assert!(ClassicalGroupSpec::new(ClassicalFamily::Linear, 3, 9).is_ok());
        assert!(ClassicalGroupSpec::new(ClassicalFamily::Linear, 3, 12).is_err());
        assert!(ClassicalGroupSpec::new(ClassicalFamily::Linear, 1, 2).is_err());
        assert!(ClassicalGroupSpec::new(ClassicalFamily::Symplectic, 7, 3).is_err());
        assert!(ClassicalGroupSpec::new(ClassicalFamily::Symplectic, 8, 3).is_ok());
    }

    #[test]
    fn descriptor_invariant_chain() {
        // Sp 8 3 | +1 | 2^1 1^6 | 0: n = 8, t = 6, r = 1, s = 1.
        let x = JordanDescriptor::new(EigenTag::PlusOne, &[(2, 1), (1, 6)], 0).unwrap();
        assert_eq!(x.n(), 8);
        assert_eq!(x.t(), 6);
        assert_eq!(x.r(), 1);
        assert_eq!(x.support(), 1);
        // s = k + sum (i-1) n_i both ways.
        let alt: u64 = x.complement() + x.blocks().map(|(i, c)| (i - 1) * c).sum::<u64>();
        assert_eq!(x.support(), alt);
        // With a complement: n grows, support grows with it.
        let y = JordanDescriptor::new(EigenTag::Unit, &[(2, 2), (1, 3)], 2).unwrap();
        assert_eq!(y.n(), 9);
        assert_eq!(y.support(), 4);
    }

    #[test]
    fn linear_exponent_examples() {
        // Single J_2: f = 2.
        assert_eq!(linear_exponent(&blocks(&[(2, 1)])), 2);
        // J_1 + J_2: f = 1 + 2 + 2*1*1*1 = 5.
        assert_eq!(linear_exponent(&blocks(&[(1, 1), (2, 1)])), 5);
        // Identity on n points: f = n^2.
        for n in 1..=10 {
            assert_eq!(linear_exponent(&blocks(&[(1, n)])), n * n);
        }
        // A transvection in dimension n: blocks 2^1 1^{n-2},
        // f = (n-2)^2 + 2 + 2(n-2) = (n-1)^2 + 1.
        for n in 3..=10u64 {
            let f = linear_exponent(&blocks(&[(2, 1), (1, n - 2)]));
            assert_eq!(f, (n - 1) * (n - 1) + 1);
        }
    }

    #[test]
    fn symplectic_exponent_examples() {
        // Single J_2: g = f = 2 (no odd sizes); even-q window [2, 4].
        let b = blocks(&[(2, 1)]);
        assert_eq!(symplectic_exponent(&b), 2);
        let w = symplectic_exponent_window(&b);
        assert_eq!((w.lo, w.hi), (r(2, 1), r(4, 1)));
        // Identity: g = n^2 + n.
        assert_eq!(symplectic_exponent(&blocks(&[(1, 6)])), 42);
        // Two J_3 blocks: g = 3*4 + 2 = 14.
        assert_eq!(symplectic_exponent(&blocks(&[(3, 2)])), 14);
    }

    #[test]
    fn orthogonal_exponent_examples() {
        // Identity: h = n^2 - n.
        assert_eq!(orthogonal_exponent(&blocks(&[(1, 6)])), 30);
        // Single J_2: h = 2, window [0, 2].
        let b = blocks(&[(2, 1)]);
        assert_eq!(orthogonal_exponent(&b), 2);
        let w = orthogonal_exponent_window(&b);
        assert_eq!((w.lo, w.hi), (r(0, 1), r(2, 1)));
        // Two J_2 blocks: h = 8, window [4, 8].
        let b = blocks(&[(2, 2)]);
        assert_eq!(orthogonal_exponent(&b), 8);
        let w = orthogonal_exponent_window(&b);
        assert_eq!((w.lo, w.hi), (r(4, 1), r(8, 1)));
    }

    #[test]
    fn exponent_relations_exhaustive() {
        // g - f and f - h both equal the odd-size multiplicity, for every
        // block multiset of weight <= 25.
        for m in 1..=25u64 {
            for parts in crate::cycle::PartitionIter::new(m) {
                let mut b: BTreeMap<u64, u64> = BTreeMap::new();
                for p in parts {
                    *b.entry(p).or_insert(0) += 1;
                }
                let f = linear_exponent(&b);
                let g = symplectic_exponent(&b);
                let h = orthogonal_exponent(&b);
                let odd = odd_size_multiplicity(&b);
                assert_eq!(g, f + odd);
                assert_eq!(h, f - odd);
                // The windows contain their odd-q centers.
                assert!(symplectic_exponent_window(&b).contains(&int(g)));
                assert!(orthogonal_exponent_window(&b).contains(&int(h)));
            }
        }
    }

    #[test]
    fn class_size_window_examples() {
        // Linear, n=3, s=1: [2, 6].
        let w = class_size_exponents(&lin(3, 2), 1).unwrap();
        assert_eq!((w.lo.clone(), w.hi.clone()), (r(2, 1), r(6, 1)));
        assert!(w.constant_caveat);
        // Symplectic, n=8, s=2: [10, 15].
        let sp = ClassicalGroupSpec::new(ClassicalFamily::Symplectic, 8, 3).unwrap();
        let w = class_size_exponents(&sp, 2).unwrap();
        assert_eq!((w.lo, w.hi), (r(10, 1), r(15, 1)));
        // s = 0 degenerates to [0, 0].
        let w = class_size_exponents(&lin(5, 2), 0).unwrap();
        assert_eq!((w.lo, w.hi), (r(0, 1), r(0, 1)));
        // s >= n/2 is rejected.
        assert!(class_size_exponents(&lin(6, 2), 3).is_err());
    }

    #[test]
    fn support_window_example() {
        // Linear, n=100, s=2, eps1=1/10: [380, 420].
        let w = support_exponent_window(&lin(100, 2), 2, &r(1, 10)).unwrap();
        assert_eq!((w.lo, w.hi), (r(380, 1), r(420, 1)));
        assert!(support_exponent_window(&lin(100, 2), 2, &r(-1, 10)).is_err());
        assert!(support_exponent_window(&lin(100, 2), 2, &r(3, 1)).is_err());
    }

    #[test]
    fn support_ceiling_examples() {
        assert_eq!(
            support_ceiling(100, &r(1, 4), &r(4, 1)).unwrap(),
            r(1251, 25) // 50.04
        );
        assert_eq!(support_ceiling(1000, &r(1, 100), &r(0, 1)).unwrap(), r(20, 1));
        assert!(support_ceiling(100, &r(1, 2), &r(0, 1)).is_err());
        assert!(support_ceiling(100, &r(0, 1), &r(0, 1)).is_err());
        assert!(support_ceiling(100, &r(1, 4), &r(-1, 1)).is_err());
    }

    #[test]
    fn star_example() {
        // Two copies of I_6 + J_2 in dimension 8: product is
        // I_4 + J_2 + J_2 with support 2.
        let x = JordanDescriptor::new(EigenTag::PlusOne, &[(2, 1), (1, 6)], 0).unwrap();
        let y = star(&x, &x).unwrap();
        assert_eq!(y.lambda, EigenTag::PlusOne);
        assert_eq!(y.t(), 4);
        assert_eq!(y.blocks().collect::<Vec<_>>(), vec![(1, 4), (2, 2)]);
        assert_eq!(y.complement(), 0);
        assert_eq!(y.support(), 2);
        assert_eq!(y.support(), x.support() + x.support());
    }

    #[test]
    fn star_tag_products_and_complements() {
        let a = JordanDescriptor::new(EigenTag::MinusOne, &[(1, 13), (2, 1)], 1).unwrap();
        let b = JordanDescriptor::new(EigenTag::MinusOne, &[(1, 14), (3, 1)], 0).unwrap();
        assert_eq!(a.n(), 16);
        assert_eq!(b.n(), 17);
        // Dimension mismatch is rejected.
        assert!(star(&a, &b).is_err());
        let b = JordanDescriptor::new(EigenTag::MinusOne, &[(1, 13), (3, 1)], 0).unwrap();
        assert_eq!(b.n(), 16);
        let y = star(&a, &b).unwrap();
        assert_eq!(y.lambda, EigenTag::PlusOne);
        assert_eq!(y.t(), 10);
        assert_eq!(y.complement(), 1);
        assert_eq!(y.support(), a.support() + b.support());
    }

    #[test]
    fn star_rejects_large_support() {
        // Support 2 in dimension 8 is exactly n/4: rejected (strict).
        let x = JordanDescriptor::new(EigenTag::PlusOne, &[(3, 1), (1, 5)], 0).unwrap();
        assert_eq!(x.support(), 2);
        assert!(matches!(
            star(&x, &x),
            Err(Error::SupportTooLarge { s: 2, n: 8 })
        ));
    }

    #[test]
    fn ratio_checks() {
        // a = 1, eps = 1/2, eps1 = 1/4: (7/4)/(9/4) = 7/9 >= 1/2.
        assert!(ratio_check(&r(1, 1), &r(1, 2), &r(1, 4)));
        // eps1 = 0: ratio 1 >= 1 - eps always.
        assert!(ratio_check(&r(1, 1), &r(1, 10), &r(0, 1)));
        // a = 1/2, eps = 1/10, eps1 = 1/20: (19/20)/(21/20) = 19/21 >= 9/10.
        assert!(ratio_check(&r(1, 2), &r(1, 10), &r(1, 20)));
        // Too much slack: a = 1, eps = 1/10, eps1 = 1: 1/3 < 9/10.
        assert!(!ratio_check(&r(1, 1), &r(1, 10), &r(1, 1)));
    }

    #[test]
    fn star_verdict_reports_both_checks() {
        let spec = lin(12, 5);
        let x = JordanDescriptor::new(EigenTag::PlusOne, &[(2, 1), (1, 10)], 0).unwrap();
        let v = star_expansion_verdict(&spec, &x, &x, Epsilon::new(1, 2).unwrap()).unwrap();
        assert_eq!(v.product.support(), 2);
        assert!(v.ratio_holds);
        assert!(v.exponent_inequality);
        // eps1 = 1/4, so the window is [(2 - 1/4)*12*2, (2 + 1/4)*12*2].
        assert_eq!(v.product_window.lo, r(42, 1));
        assert_eq!(v.product_window.hi, r(54, 1));
    }

    #[test]
    fn dimension_bounds_examples() {
        // Linear, n=5, s=1: [6, 10]; a transvection class has dimension 8.
        let w = class_dimension_bounds(ClassicalFamily::Linear, 5, 1).unwrap();
        assert_eq!((w.lo.clone(), w.hi.clone()), (r(6, 1), r(10, 1)));
        assert!(!w.constant_caveat);
        // dim x^SL = (n^2 - 1) - (f - 1) with f the centralizer exponent of
        // 2^1 1^{n-2}: 24 - 16 = 8.
        let f = linear_exponent(&blocks(&[(2, 1), (1, 3)]));
        let dim = (25 - 1) - (f - 1);
        assert_eq!(dim, 8);
        assert!(w.contains(&int(dim)));
        // Symplectic, n=6, s=2: [6, 11].
        let w = class_dimension_bounds(ClassicalFamily::Symplectic, 6, 2).unwrap();
        assert_eq!((w.lo, w.hi), (r(6, 1), r(11, 1)));
        // s = 0: [0, 0], dimension 0 for the identity.
        let w = class_dimension_bounds(ClassicalFamily::Linear, 9, 0).unwrap();
        assert!(w.contains(&int(0)));
    }

    #[test]
    fn dimension_expansion_certification() {
        // Small supports in large dimension certify easily at eps = 1/2.
        assert!(dimension_expansion_certified(
            ClassicalFamily::Linear,
            100,
            2,
            3,
            Epsilon::new(1, 2).unwrap()
        )
        .unwrap());
        // At eps = 1/100 in a cramped dimension the floor cannot beat the
        // ceilings.
        assert!(!dimension_expansion_certified(
            ClassicalFamily::Linear,
            12,
            2,
            3,
            Epsilon::new(1, 100).unwrap()
        )
        .unwrap());
    }

    #[test]
    fn descriptor_text_round_trip() {
        let line = "Sp 8 3 | +1 | 2^1 1^6 | 0";
        let (spec, desc) = parse_descriptor(line).unwrap();
        assert_eq!(spec.family, ClassicalFamily::Symplectic);
        assert_eq!((spec.n, spec.q), (8, 3));
        assert_eq!(desc.t(), 6);
        assert_eq!(format_descriptor(&spec, &desc), line);
        // Dimension mismatch between header and blocks is rejected.
        assert!(parse_descriptor("L 9 2 | +1 | 2^1 1^6 | 0").is_err());
        // Unknown family.
        assert!(parse_descriptor("X 8 3 | +1 | 2^1 1^6 | 0").is_err());
        // Bad tag.
        assert!(parse_descriptor("L 8 3 | +2 | 2^1 1^6 | 0").is_err());
    }

    #[test]
    fn descriptor_validation() {
        assert!(JordanDescriptor::new(EigenTag::PlusOne, &[], 5).is_err());
        assert!(JordanDescriptor::new(EigenTag::PlusOne, &[(0, 1)], 0).is_err());
        assert!(JordanDescriptor::new(EigenTag::PlusOne, &[(2, 0)], 0).is_err());
        assert!(JordanDescriptor::new(EigenTag::PlusOne, &[(2, 1), (2, 1)], 0).is_err());
    }
}
