//! Cycle types of permutations and exact conjugacy class sizes.
//!
//! A cycle type is an integer partition of the degree `n`, stored as a map
//! from cycle length to multiplicity. Fixed points are ordinary cycles of
//! length 1, so the multiplicities always sum up to `n` when weighted by
//! length. The support of a type is the number of non-fixed points; it is
//! never 1, because a single moved point would have nowhere to go.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Exact `n!`.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Cycle type of a permutation of degree `n`: a partition of `n` keyed by
/// cycle length, multiplicities positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    n: u64,
    mult: BTreeMap<u64, u64>,
}

impl CycleType {
    /// Builds a type from (length, multiplicity) pairs and checks that the
    /// weighted lengths sum to `n`.
    pub fn new(n: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for &(len, count) in pairs {
            if len == 0 {
                return Err(Error::InvalidCycleType("cycle length 0".into()));
            }
            if count == 0 {
                return Err(Error::InvalidCycleType(format!(
                    "multiplicity 0 for length {len}"
                )));
            }
            if mult.insert(len, count).is_some() {
                return Err(Error::InvalidCycleType(format!(
                    "duplicate cycle length {len}"
                )));
            }
        }
        let total: u64 = mult.iter().map(|(i, c)| i * c).sum();
        if total != n {
            return Err(Error::InvalidCycleType(format!(
                "lengths sum to {total}, expected {n}"
            )));
        }
        Ok(CycleType { n, mult })
    }

    /// Builds a type from a list of cycle lengths (any order, 1s included).
    pub fn from_parts(parts: &[u64]) -> Result<Self> {
        let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::InvalidCycleType("cycle length 0".into()));
            }
            *mult.entry(p).or_insert(0) += 1;
        }
        let n = parts.iter().sum();
        Ok(CycleType { n, mult })
    }

    /// The type of the identity in `S_n`.
    pub fn identity(n: u64) -> Self {
        let mut mult = BTreeMap::new();
        if n > 0 {
            mult.insert(1, n);
        }
        CycleType { n, mult }
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    /// Multiplicity of cycles of length `len`.
    pub fn multiplicity(&self, len: u64) -> u64 {
        self.mult.get(&len).copied().unwrap_or(0)
    }

    /// (length, multiplicity) pairs in increasing length order.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.mult.iter().map(|(&i, &c)| (i, c))
    }

    /// Cycle lengths in decreasing order, with repetition.
    pub fn parts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (&i, &c) in self.mult.iter().rev() {
            for _ in 0..c {
                out.push(i);
            }
        }
        out
    }

    pub fn fixed_points(&self) -> u64 {
        self.multiplicity(1)
    }

    /// Number of moved points, `n - c_1`. Never 1.
    pub fn support(&self) -> u64 {
        self.n - self.fixed_points()
    }

    /// Parity of the permutations of this type: even iff the number of
    /// even-length cycles is even.
    pub fn is_even(&self) -> bool {
        let even_cycles: u64 = self
            .mult
            .iter()
            .filter(|(&i, _)| i % 2 == 0)
            .map(|(_, &c)| c)
            .sum();
        even_cycles % 2 == 0
    }

    /// Whether the `S_n` class of this type splits into two `A_n` classes:
    /// all cycle lengths odd and pairwise distinct. Degrees below 2 never
    /// split; there is no odd permutation to be missing. The criterion is
    /// validated against exhaustive enumeration for n <= 8 in the oracle
    /// tests rather than taken on faith.
    pub fn splits_in_alt(&self) -> bool {
        self.n >= 2 && self.mult.iter().all(|(&i, &c)| i % 2 == 1 && c == 1)
    }

    /// `Prod_i i^{c_i} * c_i!` over all lengths, so the class size in `S_n`
    /// is exactly `n!` divided by this. Kept separate because the sweeps
    /// compare against powers of the divisor without ever dividing.
    pub fn centralizer_order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (&i, &c) in &self.mult {
            acc *= BigUint::from(i).pow(u32::try_from(c).expect("multiplicity fits u32"));
            acc *= factorial(c);
        }
        acc
    }
}

impl fmt::Display for CycleType {
    /// Canonical text form: `i^c` terms, decreasing length, explicit
    /// exponents, space separated. `"3^1 2^2 1^2"` is the type of a 3-cycle
    /// and two 2-cycles on 9 points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&i, &c) in self.mult.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{i}^{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the cycle type text form. Each token is `i` or `i^c`; lengths
/// must be positive and distinct, exponents positive; the weighted sum must
/// equal `n`. Errors carry the byte position of the offending token.
pub fn parse_cycle_type(input: &str, n: u64) -> Result<CycleType> {
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    let mut pos = 0;
    let bytes = input.as_bytes();
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let token = &input[start..pos];
        let (len_str, count_str) = match token.split_once('^') {
            Some((a, b)) => (a, b),
            None => (token, "1"),
        };
        let parse_err = |msg: &str| Error::Parse {
            input: input.to_string(),
            pos: start,
            msg: msg.to_string(),
        };
        let len: u64 = len_str
            .parse()
            .map_err(|_| parse_err("cycle length is not a positive integer"))?;
        let count: u64 = count_str
            .parse()
            .map_err(|_| parse_err("multiplicity is not a positive integer"))?;
        if len == 0 {
            return Err(parse_err("cycle length must be at least 1"));
        }
        if count == 0 {
            return Err(parse_err("multiplicity must be at least 1"));
        }
        if seen.insert(len, start).is_some() {
            return Err(parse_err("duplicate cycle length"));
        }
        pairs.push((len, count));
    }
    let total: u64 = pairs.iter().map(|(i, c)| i * c).sum();
    if total != n {
        return Err(Error::Parse {
            input: input.to_string(),
            pos: 0,
            msg: format!("cycle lengths sum to {total}, expected {n}"),
        });
    }
    CycleType::new(n, &pairs)
}

/// Exact class size in `S_n`: `n! / (Prod_i i^{c_i} c_i!)`. Equivalently
/// `n! / ((n-s)! * Prod_{i>=2} i^{c_i} * Prod_{i>=2} c_i!)`, since the
/// fixed-point factor `1^{c_1} c_1!` is exactly `(n-s)!`.
pub fn sym_class_size(ct: &CycleType) -> BigUint {
    factorial(ct.degree()) / ct.centralizer_order()
}

/// Class size data in `A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AltClassSize {
    /// The `S_n` class stays one `A_n` class of this size.
    Whole(BigUint),
    /// The `S_n` class splits into two `A_n` classes of this size each.
    Split(BigUint),
}

impl AltClassSize {
    /// Sizes of the `A_n` classes this type produces.
    pub fn sizes(&self) -> Vec<BigUint> {
        match self {
            AltClassSize::Whole(s) => vec![s.clone()],
            AltClassSize::Split(h) => vec![h.clone(), h.clone()],
        }
    }

    /// Total number of elements of the type, summed over its classes.
    pub fn total(&self) -> BigUint {
        match self {
            AltClassSize::Whole(s) => s.clone(),
            AltClassSize::Split(h) => h * 2u32,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, AltClassSize::Split(_))
    }
}

/// Exact class size in `A_n` for an even type. Splitting happens exactly
/// when all cycle lengths are odd and pairwise distinct; then the `S_n`
/// class falls apart into two `A_n` classes of half the size.
pub fn alt_class_size(ct: &CycleType) -> Result<AltClassSize> {
    if !ct.is_even() {
        return Err(Error::OddPermutation(ct.to_string()));
    }
    let full = sym_class_size(ct);
    if ct.splits_in_alt() {
        Ok(AltClassSize::Split(full / 2u32))
    } else {
        Ok(AltClassSize::Whole(full))
    }
}

/// Star product of two types of the same degree: the type of `pi1 * pi2'`
/// where `pi2'` is conjugated to move a point set disjoint from `pi1`'s.
/// Defined exactly when the supports fit side by side, `s1 + s2 <= n`. The
/// moved cycles simply accumulate: multiplicity `c_i + d_i` for `i >= 2`,
/// and `n - s1 - s2` fixed points.
pub fn star(ct1: &CycleType, ct2: &CycleType) -> Result<CycleType> {
    if ct1.degree() != ct2.degree() {
        return Err(Error::InvalidArgument(format!(
            "degree mismatch: {} vs {}",
            ct1.degree(),
            ct2.degree()
        )));
    }
    let n = ct1.degree();
    let s1 = ct1.support();
    let s2 = ct2.support();
    if s1 + s2 > n {
        return Err(Error::SupportOverflow { total: s1 + s2, n });
    }
    let mut pairs: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, c) in ct1.pairs().chain(ct2.pairs()) {
        if i >= 2 {
            *pairs.entry(i).or_insert(0) += c;
        }
    }
    let fixed = n - s1 - s2;
    if fixed > 0 {
        pairs.insert(1, fixed);
    }
    let pairs: Vec<(u64, u64)> = pairs.into_iter().collect();
    CycleType::new(n, &pairs)
}

/// Iterator over the partitions of `n` with parts bounded by `max_part`,
/// as non-increasing part vectors in reverse-lexicographic order:
/// `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]` for `n = 4`.
pub struct PartitionIter {
    next: Option<Vec<u64>>,
}

impl PartitionIter {
    pub fn new(n: u64) -> Self {
        Self::bounded(n, n)
    }

    pub fn bounded(n: u64, max_part: u64) -> Self {
        if n == 0 {
            return PartitionIter {
                next: Some(Vec::new()),
            };
        }
        let cap = max_part.min(n);
        if cap == 0 {
            // No partition of a positive n with parts bounded by 0.
            return PartitionIter { next: None };
        }
        PartitionIter {
            next: Some(greedy_fill(n, cap)),
        }
    }
}

/// Largest partition of `n` with parts <= cap, reverse-lexicographically.
fn greedy_fill(n: u64, cap: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rem = n;
    while rem > 0 {
        let part = cap.min(rem);
        out.push(part);
        rem -= part;
    }
    out
}

impl Iterator for PartitionIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        // Successor: shrink the rightmost part that exceeds 1, then refill
        // the remainder greedily with the new value as the bound.
        let mut succ = current.clone();
        match succ.iter().rposition(|&p| p > 1) {
            None => {
                self.next = None;
            }
            Some(k) => {
                let tail: u64 = succ[k..].iter().sum();
                let new_part = succ[k] - 1;
                succ.truncate(k);
                succ.extend(greedy_fill(tail, new_part));
                self.next = Some(succ);
            }
        }
        Some(current)
    }
}

/// All cycle types of `S_n` in reverse-lexicographic part order.
pub fn enumerate(n: u64) -> impl Iterator<Item = CycleType> {
    PartitionIter::new(n).map(|parts| CycleType::from_parts(&parts).expect("parts sum to n"))
}

/// Cycle types of `S_n` whose largest cycle length is exactly `lead`.
/// Concatenating over `lead = n, n-1, ..., 1` reproduces `enumerate(n)`'s
/// order, which is what lets sweeps fan out per leading part and still
/// produce reports in a fixed order.
pub fn enumerate_leading(n: u64, lead: u64) -> impl Iterator<Item = CycleType> {
    assert!(lead >= 1 && lead <= n);
    PartitionIter::bounded(n - lead, lead).map(move |mut parts| {
        parts.insert(0, lead);
        CycleType::from_parts(&parts).expect("parts sum to n")
    })
}

/// Number of partitions of `n`, by the Euler pentagonal-free DP. Used by
/// tests as an independent count of what enumeration must produce.
pub fn partition_count(n: u64) -> BigUint {
    let n = usize::try_from(n).expect("degree fits usize");
    // dp[m] = number of partitions of m with parts <= k, k growing.
    let mut dp = vec![BigUint::default(); n + 1];
    dp[0] = BigUint::one();
    for k in 1..=n {
        for m in k..=n {
            let add = dp[m - k].clone();
            dp[m] += add;
        }
    }
    dp[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(n: u64, pairs: &[(u64, u64)]) -> CycleType {
        CycleType::new(n, pairs).unwrap()
    }

    #[test]
    fn enumeration_order_n4() {
        let got: Vec<Vec<u64>> = PartitionIter::new(4).collect();
        let expected = vec![
            vec![4],
            vec![3, 1],
            vec![2, 2],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_counts_match_partition_numbers() {
        // Classic partition numbers, plus the DP and the iterator agreeing.
        let known: [(u64, u64); 9] = [
            (1, 1),
            (2, 2),
            (3, 3),
            (4, 5),
            (5, 7),
            (6, 11),
            (7, 15),
            (8, 22),
            (10, 42),
        ];
        for (n, p) in known {
            assert_eq!(partition_count(n), BigUint::from(p), "p({n})");
            assert_eq!(enumerate(n).count() as u64, p, "iterator count for {n}");
        }
    }

    #[test]
    fn leading_part_chunks_reproduce_global_order() {
        for n in 1..=12u64 {
            let whole: Vec<CycleType> = enumerate(n).collect();
            let mut chunked = Vec::new();
            for lead in (1..=n).rev() {
                chunked.extend(enumerate_leading(n, lead));
            }
            assert_eq!(whole, chunked, "n = {n}");
        }
    }

    #[test]
    fn class_sizes_s5() {
        // All seven classes of S_5; sizes sum to 120.
        let sizes: Vec<(CycleType, u64)> = vec![
            (ct(5, &[(5, 1)]), 24),
            (ct(5, &[(4, 1), (1, 1)]), 30),
            (ct(5, &[(3, 1), (2, 1)]), 20),
            (ct(5, &[(3, 1), (1, 2)]), 20),
            (ct(5, &[(2, 2), (1, 1)]), 15),
            (ct(5, &[(2, 1), (1, 3)]), 10),
            (ct(5, &[(1, 5)]), 1),
        ];
        let mut total = BigUint::default();
        for (t, expected) in sizes {
            let got = sym_class_size(&t);
            assert_eq!(got, BigUint::from(expected), "type {t}");
            total += got;
        }
        assert_eq!(total, factorial(5));
    }

    #[test]
    fn class_size_matches_fixed_point_form() {
        // n!/((n-s)! * prod_{i>=2} i^{c_i} * prod_{i>=2} c_i!) is the same
        // number; the 1^{c_1} c_1! factor of the centralizer is (n-s)!.
        for n in 1..=12u64 {
            for t in enumerate(n) {
                let s = t.support();
                let mut divisor = factorial(n - s);
                for (i, c) in t.pairs() {
                    if i >= 2 {
                        divisor *= BigUint::from(i).pow(u32::try_from(c).unwrap());
                        divisor *= factorial(c);
                    }
                }
                assert_eq!(sym_class_size(&t), factorial(n) / divisor, "type {t}");
            }
        }
    }

    #[test]
    fn support_is_never_one() {
        for n in 1..=14u64 {
            for t in enumerate(n) {
                assert_ne!(t.support(), 1, "type {t}");
            }
        }
    }

    #[test]
    fn transpositions_in_s4() {
        let t = ct(4, &[(2, 1), (1, 2)]);
        assert_eq!(sym_class_size(&t), BigUint::from(6u32));
        assert_eq!(t.support(), 2);
        assert!(!t.is_even());
    }

    #[test]
    fn double_transpositions_in_s5() {
        let t = ct(5, &[(2, 2), (1, 1)]);
        assert_eq!(sym_class_size(&t), BigUint::from(15u32));
        assert!(t.is_even());
    }

    #[test]
    fn alt_sizes_and_splitting() {
        // 5-cycles in A_5 split into two classes of 12.
        let five = ct(5, &[(5, 1)]);
        assert_eq!(
            alt_class_size(&five).unwrap(),
            AltClassSize::Split(BigUint::from(12u32))
        );
        // Double transpositions do not split (even length present).
        let dt = ct(5, &[(2, 2), (1, 1)]);
        assert_eq!(
            alt_class_size(&dt).unwrap(),
            AltClassSize::Whole(BigUint::from(15u32))
        );
        // 3-cycles in A_5 have a repeated odd length (two fixed points).
        let three = ct(5, &[(3, 1), (1, 2)]);
        assert_eq!(
            alt_class_size(&three).unwrap(),
            AltClassSize::Whole(BigUint::from(20u32))
        );
        // 3-cycles in A_3: lengths {3}, odd and distinct, so split.
        let a3 = ct(3, &[(3, 1)]);
        assert_eq!(
            alt_class_size(&a3).unwrap(),
            AltClassSize::Split(BigUint::from(1u32))
        );
        // Odd types are rejected.
        let odd = ct(4, &[(2, 1), (1, 2)]);
        assert!(matches!(
            alt_class_size(&odd),
            Err(Error::OddPermutation(_))
        ));
    }

    #[test]
    fn star_accumulates_moved_cycles() {
        // Two transpositions on 4 points: (2 1^2) * (2 1^2) = 2^2.
        let t = ct(4, &[(2, 1), (1, 2)]);
        let got = star(&t, &t).unwrap();
        assert_eq!(got, ct(4, &[(2, 2)]));

        // On 5 points there is room for a fixed point.
        let t5 = ct(5, &[(2, 1), (1, 3)]);
        assert_eq!(star(&t5, &t5).unwrap(), ct(5, &[(2, 2), (1, 1)]));

        // A 3-cycle and a double transposition on 9 points.
        let a = ct(9, &[(3, 1), (1, 6)]);
        let b = ct(9, &[(2, 2), (1, 5)]);
        assert_eq!(star(&a, &b).unwrap(), ct(9, &[(3, 1), (2, 2), (1, 2)]));
    }

    #[test]
    fn star_requires_room() {
        let t = ct(4, &[(3, 1), (1, 1)]);
        let err = star(&t, &t).unwrap_err();
        assert_eq!(err, Error::SupportOverflow { total: 6, n: 4 });
    }

    #[test]
    fn star_product_of_disjoint_permutations_verified_directly() {
        // Place a 3-cycle on {0,1,2} and two transpositions on {3,4},{5,6}
        // inside S_9, multiply the permutations, and read off the type of
        // the product. This is the independent check that star really is
        // the type of a product over disjoint supports.
        let mut img: Vec<usize> = (0..9).collect();
        // (0 1 2)
        img[0] = 1;
        img[1] = 2;
        img[2] = 0;
        // (3 4)(5 6)
        img[3] = 4;
        img[4] = 3;
        img[5] = 6;
        img[6] = 5;
        // Read off cycle type of img.
        let mut seen = [false; 9];
        let mut parts = Vec::new();
        for start in 0..9 {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = img[x];
                len += 1;
            }
            parts.push(len);
        }
        let direct = CycleType::from_parts(&parts).unwrap();
        let a = ct(9, &[(3, 1), (1, 6)]);
        let b = ct(9, &[(2, 2), (1, 5)]);
        assert_eq!(star(&a, &b).unwrap(), direct);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let t = parse_cycle_type("3^1 2^2 1^2", 9).unwrap();
        assert_eq!(t, ct(9, &[(3, 1), (2, 2), (1, 2)]));
        assert_eq!(t.to_string(), "3^1 2^2 1^2");
        // Exponent 1 may be omitted on input.
        let u = parse_cycle_type("3 2^2 1^2", 9).unwrap();
        assert_eq!(u, t);
        for n in 1..=10u64 {
            for t in enumerate(n) {
                let round = parse_cycle_type(&t.to_string(), n).unwrap();
                assert_eq!(round, t);
            }
        }
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(
            parse_cycle_type("0^2", 0),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cycle_type("2^0", 0),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cycle_type("2^1 2^1", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cycle_type("-3", 3),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_cycle_type("2^2", 5),
            Err(Error::Parse { .. })
        ));
        // Position points at the offending token.
        match parse_cycle_type("3^1 x^2", 5) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
