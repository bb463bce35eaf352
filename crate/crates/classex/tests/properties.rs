//! Randomized invariants. Everything here is a consequence the exact
//! arithmetic must satisfy identically, so any counterexample proptest finds
//! is a real bug, never flakiness.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use classex::classical::{
    format_descriptor, linear_exponent, orthogonal_exponent, parse_descriptor, star as cstar,
    symplectic_exponent, ClassicalFamily, ClassicalGroupSpec, EigenTag, JordanDescriptor,
};
use classex::cycle::{
    alt_class_size, factorial, parse_cycle_type, star, sym_class_size, CycleType,
};
use classex::enclosure::{nth_root_enclosure, rational_pow, Enclosure};
use classex::oracle::{build_alternating, CoveringOutcome, GroupSnapshot, NormalSubset};
use classex::sym::{
    class_size_analytic_lower, class_size_bounds, class_zeta, Epsilon, PermFamily,
};

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Cycle type with the given moving parts, padded with fixed points to
/// degree `n`. Callers guarantee the parts fit.
fn padded_type(moving: &[u64], n: u64) -> CycleType {
    let mut parts = moving.to_vec();
    let used: u64 = moving.iter().sum();
    parts.extend(std::iter::repeat(1).take(usize::try_from(n - used).unwrap()));
    CycleType::from_parts(&parts).unwrap()
}

proptest! {
    #[test]
    fn cycle_type_text_round_trips(parts in prop::collection::vec(1..9u64, 1..8)) {
        let ct = CycleType::from_parts(&parts).unwrap();
        let text = ct.to_string();
        prop_assert_eq!(parse_cycle_type(&text, ct.degree()).unwrap(), ct);
    }

    #[test]
    fn size_times_centralizer_is_the_group_order(
        parts in prop::collection::vec(1..8u64, 1..9),
    ) {
        let ct = CycleType::from_parts(&parts).unwrap();
        prop_assert_eq!(
            sym_class_size(&ct) * ct.centralizer_order(),
            factorial(ct.degree())
        );
    }

    #[test]
    fn alternating_sizes_split_exactly_when_all_parts_are_odd_and_distinct(
        parts in prop::collection::vec(1..8u64, 1..9),
    ) {
        let ct = CycleType::from_parts(&parts).unwrap();
        let alt = alt_class_size(&ct);
        if ct.is_even() {
            let alt = alt.unwrap();
            prop_assert_eq!(alt.total(), sym_class_size(&ct));
            let expect_split =
                ct.degree() >= 2 && ct.pairs().all(|(i, c)| i % 2 == 1 && c == 1);
            prop_assert_eq!(alt.is_split(), expect_split);
            if expect_split {
                let halves = alt.sizes();
                prop_assert_eq!(halves.len(), 2);
                prop_assert_eq!(&halves[0], &halves[1]);
            }
        } else {
            prop_assert!(alt.is_err());
        }
    }

    #[test]
    fn star_commutes_and_adds_supports(
        m1 in prop::collection::vec(2..7u64, 0..4),
        m2 in prop::collection::vec(2..7u64, 0..4),
        slack in 0..5u64,
    ) {
        let s1: u64 = m1.iter().sum();
        let s2: u64 = m2.iter().sum();
        let n = s1 + s2 + slack;
        prop_assume!(n >= 1);
        let ct1 = padded_type(&m1, n);
        let ct2 = padded_type(&m2, n);
        let y = star(&ct1, &ct2).unwrap();
        prop_assert_eq!(&star(&ct2, &ct1).unwrap(), &y);
        prop_assert_eq!(y.degree(), n);
        prop_assert_eq!(y.support(), s1 + s2);
    }

    #[test]
    fn star_is_associative_when_all_supports_fit(
        m1 in prop::collection::vec(2..6u64, 0..3),
        m2 in prop::collection::vec(2..6u64, 0..3),
        m3 in prop::collection::vec(2..6u64, 0..3),
        slack in 0..4u64,
    ) {
        let total: u64 = m1.iter().chain(&m2).chain(&m3).sum();
        let n = total + slack;
        prop_assume!(n >= 1);
        let a = padded_type(&m1, n);
        let b = padded_type(&m2, n);
        let c = padded_type(&m3, n);
        let left = star(&star(&a, &b).unwrap(), &c).unwrap();
        let right = star(&a, &star(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn epsilon_power_checks_match_their_cleared_forms(
        x in 0..80u64,
        y in 0..80u64,
        p in 1..8u32,
        extra in 1..8u32,
    ) {
        let q = p + extra;
        let eps = Epsilon::new(p, q).unwrap();
        let (xb, yb) = (BigUint::from(x), BigUint::from(y));
        prop_assert_eq!(
            eps.power_at_least(&xb, &yb),
            xb.pow(q) >= yb.pow(q - p)
        );
        prop_assert_eq!(
            eps.power_at_most(&xb, &yb),
            xb.pow(q) <= yb.pow(q + p)
        );
        prop_assert_eq!(
            eps.power_fraction_at_most(&xb, &yb),
            xb.pow(q) <= yb.pow(p)
        );
    }

    #[test]
    fn size_bounds_contain_every_random_class(
        parts in prop::collection::vec(1..7u64, 1..9),
    ) {
        let ct = CycleType::from_parts(&parts).unwrap();
        let n = ct.degree();
        let size = sym_class_size(&ct);
        prop_assert!(class_size_bounds(n, ct.support()).unwrap().contains_int(&size));
        let lower = class_size_analytic_lower(n, ct.support(), 64).unwrap();
        prop_assert!(lower <= rat(BigInt::from(size)));
    }

    #[test]
    fn zeta_is_exact_at_integer_arguments_and_at_least_one(
        n in 1..13u64,
        sv in 1..4i64,
        fam in 0..2usize,
    ) {
        let family = [PermFamily::Symmetric, PermFamily::Alternating][fam];
        let z = class_zeta(n, &rat(sv), family, 64).unwrap();
        prop_assert_eq!(z.lo(), z.hi());
        prop_assert!(z.lo() >= &BigRational::one());
    }

    #[test]
    fn enclosure_arithmetic_contains_the_exact_values(
        an in -50..50i64, ad in 1..20i64,
        bn in -50..50i64, bd in 1..20i64,
        k in 0..5u64,
    ) {
        let a = BigRational::new(an.into(), ad.into());
        let b = BigRational::new(bn.into(), bd.into());
        let ea = Enclosure::exact(a.clone());
        let eb = Enclosure::exact(b.clone());
        prop_assert!(ea.add(&eb).contains(&(&a + &b)));
        prop_assert!(ea.sub(&eb).contains(&(&a - &b)));
        prop_assert!(ea.mul(&eb).contains(&(&a * &b)));
        if a >= BigRational::zero() {
            prop_assert!(ea.pow(k).contains(&rational_pow(&a, k)));
        }
        if a > BigRational::zero() {
            let root = ea.sqrt(48);
            prop_assert!(root.lo() >= &BigRational::zero());
            prop_assert!(rational_pow(root.lo(), 2) <= a);
            prop_assert!(rational_pow(root.hi(), 2) >= a);
        }
    }

    #[test]
    fn integer_roots_are_bracketed(x in 1..100_000u64, k in 1..6u32) {
        let e = nth_root_enclosure(&BigUint::from(x), k, 48);
        let xr = rat(x as i64);
        prop_assert!(rational_pow(e.lo(), u64::from(k)) <= xr);
        prop_assert!(rational_pow(e.hi(), u64::from(k)) >= xr);
    }

    #[test]
    fn centralizer_exponents_differ_by_the_odd_block_count(
        parts in prop::collection::vec(1..8u64, 1..8),
    ) {
        let ct = CycleType::from_parts(&parts).unwrap();
        let blocks: BTreeMap<u64, u64> = ct.pairs().collect();
        let f = linear_exponent(&blocks);
        let odd: u64 = blocks
            .iter()
            .filter(|(&i, _)| i % 2 == 1)
            .map(|(_, &c)| c)
            .sum();
        prop_assert_eq!(symplectic_exponent(&blocks), f + odd);
        prop_assert_eq!(orthogonal_exponent(&blocks), f - odd);
    }

    #[test]
    fn classical_star_commutes_and_adds_supports(
        raw1 in prop::collection::vec((2..5u64, 1..3u64), 0..3),
        raw2 in prop::collection::vec((2..5u64, 1..3u64), 0..3),
        k1 in 0..3u64,
        k2 in 0..3u64,
        slack in 0..5u64,
    ) {
        let (x1, x2) = descriptor_pair(&raw1, &raw2, k1, k2, slack);
        let y = cstar(&x1, &x2).unwrap();
        prop_assert_eq!(&cstar(&x2, &x1).unwrap(), &y);
        prop_assert_eq!(y.n(), x1.n());
        prop_assert_eq!(y.support(), x1.support() + x2.support());
    }

    #[test]
    fn descriptor_lines_round_trip(
        raw in prop::collection::vec((1..6u64, 1..4u64), 1..4),
        k in 0..4u64,
        fam in 0..5usize,
        qi in 0..6usize,
        tag in 0..4usize,
    ) {
        let family = [
            ClassicalFamily::Linear,
            ClassicalFamily::Unitary,
            ClassicalFamily::Symplectic,
            ClassicalFamily::OrthogonalPlus,
            ClassicalFamily::OrthogonalMinus,
        ][fam];
        let lambda = [
            EigenTag::PlusOne,
            EigenTag::MinusOne,
            EigenTag::Unit,
            EigenTag::Generic,
        ][tag];
        let q = [2u64, 3, 4, 5, 8, 9][qi];
        let blocks = merge_blocks(&raw, 0);
        let pairs: Vec<(u64, u64)> = blocks.into_iter().collect();
        let x = JordanDescriptor::new(lambda, &pairs, k).unwrap();
        // Pad odd dimensions out of the symplectic family's domain.
        let n = if family == ClassicalFamily::Symplectic && x.n() % 2 == 1 {
            x.n() + 1
        } else {
            x.n().max(2)
        };
        let x = if n == x.n() {
            x
        } else {
            JordanDescriptor::new(lambda, &pairs, k + (n - x.n())).unwrap()
        };
        let spec = ClassicalGroupSpec::new(family, n, q).unwrap();
        let line = format_descriptor(&spec, &x);
        let (spec2, x2) = parse_descriptor(&line).unwrap();
        prop_assert_eq!(spec2, spec);
        prop_assert_eq!(x2, x);
    }

    #[test]
    fn products_of_normal_subsets_commute(m1 in 1..32u32, m2 in 1..32u32) {
        let g = a5();
        let a = mask_subset(g, m1);
        let b = mask_subset(g, m2);
        prop_assert_eq!(g.product_set(&a, &b), g.product_set(&b, &a));
    }

    #[test]
    fn covering_never_slows_down_as_the_subset_grows(
        m in 1..32u32,
        extra in 1..32u32,
    ) {
        let g = a5();
        let id_mask = 1u32 << g.identity_class();
        let sup = m | extra;
        prop_assume!(m != id_mask && sup != id_mask);
        let o1 = g.covering_number(&mask_subset(g, m), 8).unwrap();
        let o2 = g.covering_number(&mask_subset(g, sup), 8).unwrap();
        match (o1, o2) {
            (CoveringOutcome::Within(b1), CoveringOutcome::Within(b2)) => {
                prop_assert!(b2 <= b1);
            }
            (CoveringOutcome::Within(_), CoveringOutcome::NotWithin { .. }) => {
                prop_assert!(false, "superset lost coverage");
            }
            (CoveringOutcome::NotWithin { .. }, _) => {}
        }
    }
}

/// Two descriptors in a common dimension, both with support below a quarter
/// of it, so their star product is defined.
fn descriptor_pair(
    raw1: &[(u64, u64)],
    raw2: &[(u64, u64)],
    k1: u64,
    k2: u64,
    slack: u64,
) -> (JordanDescriptor, JordanDescriptor) {
    let b1 = merge_blocks(raw1, 0);
    let b2 = merge_blocks(raw2, 0);
    let weight = |b: &BTreeMap<u64, u64>| b.iter().map(|(&i, &c)| i * c).sum::<u64>();
    let support = |b: &BTreeMap<u64, u64>, k: u64| {
        k + b.iter().map(|(&i, &c)| (i - 1) * c).sum::<u64>()
    };
    let s1 = support(&b1, k1);
    let s2 = support(&b2, k2);
    let n = (4 * s1.max(s2) + 1)
        .max(k1 + weight(&b1) + 1)
        .max(k2 + weight(&b2) + 1)
        + slack;
    let build = |b: &BTreeMap<u64, u64>, k: u64| {
        let mut with_fixed = b.clone();
        *with_fixed.entry(1).or_insert(0) += n - k - weight(b);
        let pairs: Vec<(u64, u64)> = with_fixed.into_iter().collect();
        JordanDescriptor::new(EigenTag::PlusOne, &pairs, k).unwrap()
    };
    (build(&b1, k1), build(&b2, k2))
}

/// Folds raw (size, mult) pairs into a well-formed block map; sizes below
/// `min_size` are dropped.
fn merge_blocks(raw: &[(u64, u64)], min_size: u64) -> BTreeMap<u64, u64> {
    let mut map = BTreeMap::new();
    for &(size, mult) in raw {
        if size >= min_size && size >= 1 {
            *map.entry(size).or_insert(0) += mult;
        }
    }
    map
}

static A5: OnceLock<GroupSnapshot> = OnceLock::new();

fn a5() -> &'static GroupSnapshot {
    A5.get_or_init(|| build_alternating(5).unwrap())
}

fn mask_subset(g: &GroupSnapshot, mask: u32) -> NormalSubset {
    let ids = (0..u32::try_from(g.class_count()).unwrap()).filter(|&i| mask & (1 << i) != 0);
    g.subset_from_ids(ids).unwrap()
}
