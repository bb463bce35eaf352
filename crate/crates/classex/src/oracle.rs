//! Brute-force ground truth for small groups.
//!
//! Everything here is exhaustive: elements are enumerated outright, classes
//! are conjugation orbits, and set products multiply actual elements. The
//! point is an independent authority that the formula modules can be
//! measured against, so this module leans on them only for cycle type
//! bookkeeping, never for sizes.
//!
//! Scope is deliberately tiny: permutation groups up to degree 8 and matrix
//! groups of dimension at most 3 over prime fields up to 7, capped at a
//! million elements. No stabilizer chains, no character theory.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write as IoWrite};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cycle::{self, CycleType};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::sym::{sizes_zeta, Epsilon};

/// Hard ceiling on enumerated group order.
pub const SIZE_GUARD: usize = 1_000_000;
/// Largest permutation degree the oracle enumerates.
pub const MAX_PERM_DEGREE: u32 = 8;
/// Largest matrix dimension and field characteristic.
pub const MAX_MATRIX_DIM: u32 = 3;
pub const MAX_MATRIX_PRIME: u32 = 7;

const PERM_SLOTS: usize = 8;
const MAT_SLOTS: usize = 9;

/// A group element in canonical form: a permutation as its image table
/// (identity-padded past the degree), or a matrix as row-major entries
/// reduced mod p. Elements of central quotients are stored as the
/// lexicographically least scalar multiple.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum El {
    Perm { n: u8, img: [u8; PERM_SLOTS] },
    Mat { d: u8, p: u8, a: [u8; MAT_SLOTS] },
}

impl El {
    fn perm_identity(n: u32) -> El {
        let mut img = [0u8; PERM_SLOTS];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        El::Perm { n: n as u8, img }
    }

    fn mat_identity(d: u32, p: u32) -> El {
        let mut a = [0u8; MAT_SLOTS];
        for i in 0..d as usize {
            a[i * d as usize + i] = 1;
        }
        El::Mat {
            d: d as u8,
            p: p as u8,
            a,
        }
    }

    /// Raw product; canonicalization is the snapshot's job.
    fn mul(&self, other: &El) -> El {
        match (self, other) {
            (El::Perm { n, img: a }, El::Perm { n: n2, img: b }) => {
                debug_assert_eq!(n, n2);
                let mut img = [0u8; PERM_SLOTS];
                for i in 0..PERM_SLOTS {
                    img[i] = a[b[i] as usize];
                }
                El::Perm { n: *n, img }
            }
            (El::Mat { d, p, a }, El::Mat { d: d2, p: p2, a: b }) => {
                debug_assert_eq!((d, p), (d2, p2));
                let dd = *d as usize;
                let pp = *p as u32;
                let mut c = [0u8; MAT_SLOTS];
                for r in 0..dd {
                    for s in 0..dd {
                        let mut acc = 0u32;
                        for k in 0..dd {
                            acc += a[r * dd + k] as u32 * b[k * dd + s] as u32;
                        }
                        c[r * dd + s] = (acc % pp) as u8;
                    }
                }
                El::Mat {
                    d: *d,
                    p: *p,
                    a: c,
                }
            }
            _ => unreachable!("mixed element kinds"),
        }
    }

    /// Cycle type of a permutation element. Panics on matrices; the caller
    /// guards on the group kind.
    pub fn cycle_type(&self) -> CycleType {
        let El::Perm { n, img } = self else {
            panic!("cycle_type on a matrix element");
        };
        let n = *n as usize;
        let mut seen = [false; PERM_SLOTS];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = img[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        CycleType::from_parts(&parts).expect("orbit lengths partition the degree")
    }

    fn perm_is_even(&self) -> bool {
        let El::Perm { n, img } = self else {
            panic!("parity of a matrix element");
        };
        let n = *n as usize;
        let mut seen = [false; PERM_SLOTS];
        let mut cycles = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = img[i] as usize;
            }
        }
        (n - cycles) % 2 == 0
    }
}

// --- modular matrix helpers (d <= 3, p prime) ---

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|x| a % p * x % p == 1)
        .expect("unit in a prime field")
}

fn mat_rank(m: &[u8; MAT_SLOTS], d: usize, p: u32) -> usize {
    let mut w = [0u32; MAT_SLOTS];
    for i in 0..d * d {
        w[i] = m[i] as u32 % p;
    }
    let mut rank = 0usize;
    for col in 0..d {
        let Some(piv) = (rank..d).find(|&r| w[r * d + col] != 0) else {
            continue;
        };
        for c in 0..d {
            w.swap(piv * d + c, rank * d + c);
        }
        let inv = inv_mod(w[rank * d + col], p);
        for c in 0..d {
            w[rank * d + c] = w[rank * d + c] * inv % p;
        }
        for row in 0..d {
            if row != rank && w[row * d + col] != 0 {
                let f = w[row * d + col];
                for c in 0..d {
                    w[row * d + c] = (w[row * d + c] + (p - f) * w[rank * d + c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mat_mul_raw(a: &[u8; MAT_SLOTS], b: &[u8; MAT_SLOTS], d: usize, p: u32) -> [u8; MAT_SLOTS] {
    let mut c = [0u8; MAT_SLOTS];
    for r in 0..d {
        for s in 0..d {
            let mut acc = 0u32;
            for k in 0..d {
                acc += a[r * d + k] as u32 * b[k * d + s] as u32;
            }
            c[r * d + s] = (acc % p) as u8;
        }
    }
    c
}

fn mat_sub_identity(m: &[u8; MAT_SLOTS], d: usize, p: u32) -> [u8; MAT_SLOTS] {
    let mut out = *m;
    for i in 0..d {
        out[i * d + i] = ((out[i * d + i] as u32 + p - 1) % p) as u8;
    }
    out
}

/// Jordan block multiplicities of a unipotent matrix, from the rank
/// sequence of powers of `x - 1`; None when `x` is not unipotent.
fn jordan_blocks(m: &[u8; MAT_SLOTS], d: usize, p: u32) -> Option<BTreeMap<u64, u64>> {
    let n1 = mat_sub_identity(m, d, p);
    let mut ranks = vec![d];
    let mut pw = n1;
    for _ in 0..d {
        ranks.push(mat_rank(&pw, d, p));
        pw = mat_mul_raw(&pw, &n1, d, p);
    }
    if ranks[d] != 0 {
        return None;
    }
    // blocks of size >= i: ranks[i-1] - ranks[i]; n_i by differencing.
    let mut blocks = BTreeMap::new();
    for i in 1..=d {
        let ge_i = ranks[i - 1] - ranks[i];
        let ge_next = if i == d { 0 } else { ranks[i] - ranks[i + 1] };
        if ge_i > ge_next {
            blocks.insert(i as u64, (ge_i - ge_next) as u64);
        }
    }
    Some(blocks)
}

/// All monic irreducible polynomials of degree 1..=d over F_p, as
/// little-endian coefficient vectors. For degree 2 and 3, irreducible means
/// root-free.
fn irreducible_monics(d: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for e in 1..=d {
        let count = p.pow(e as u32);
        for tail in 0..count {
            let mut coeffs = Vec::with_capacity(e + 1);
            let mut t = tail;
            for _ in 0..e {
                coeffs.push(t % p);
                t /= p;
            }
            coeffs.push(1);
            if e == 1 || !(0..p).any(|x| poly_eval(&coeffs, x, p) == 0) {
                out.push(coeffs);
            }
        }
    }
    out
}

fn poly_eval(coeffs: &[u32], x: u32, p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Largest eigenspace dimension of `m` over the algebraic closure: for each
/// irreducible factor g of the characteristic polynomial, ker g(m) is a
/// vector space over the splitting field of g, and its dimension over that
/// field is the geometric multiplicity of each root of g.
fn closure_eigenspace_max(m: &[u8; MAT_SLOTS], d: usize, p: u32) -> u64 {
    let mut best = 0u64;
    let mut identity = [0u8; MAT_SLOTS];
    for i in 0..d {
        identity[i * d + i] = 1;
    }
    for g in irreducible_monics(d, p) {
        let e = g.len() - 1;
        // g(m) via powers of m.
        let mut gm = [0u8; MAT_SLOTS];
        let mut pw = identity;
        for (k, &c) in g.iter().enumerate() {
            if k > 0 {
                pw = mat_mul_raw(&pw, m, d, p);
            }
            if c != 0 {
                for i in 0..d * d {
                    gm[i] = ((gm[i] as u32 + c * pw[i] as u32) % p) as u8;
                }
            }
        }
        let kdim = d - mat_rank(&gm, d, p);
        if kdim > 0 {
            debug_assert_eq!(kdim % e, 0, "kernel of an irreducible factor");
            best = best.max((kdim / e) as u64);
        }
    }
    best
}

// --- group kinds ---

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixFamily {
    GL,
    SL,
    PSL,
    Sp,
}

impl MatrixFamily {
    fn token(&self) -> &'static str {
        match self {
            MatrixFamily::GL => "GL",
            MatrixFamily::SL => "SL",
            MatrixFamily::PSL => "PSL",
            MatrixFamily::Sp => "Sp",
        }
    }
}

/// Which group a snapshot enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Symmetric(u32),
    Alternating(u32),
    Matrix {
        family: MatrixFamily,
        dim: u32,
        p: u32,
    },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Alternating(n) => write!(f, "A{n}"),
            GroupKind::Matrix { family, dim, p } => {
                write!(f, "{}({dim},{p})", family.token())
            }
        }
    }
}

/// Parses group tokens of the shapes `S5`, `A8`, `GL(2,3)`, `SL(3,2)`,
/// `PSL(2,7)`, `Sp(2,5)`.
pub fn parse_group(input: &str) -> Result<GroupKind> {
    let err = |msg: &str| Error::Parse {
        input: input.to_string(),
        pos: 0,
        msg: msg.to_string(),
    };
    let s = input.trim();
    if let Some(rest) = s.strip_prefix('S').filter(|r| r.chars().all(|c| c.is_ascii_digit())) {
        if !rest.is_empty() {
            let n = rest.parse().map_err(|_| err("bad degree"))?;
            return Ok(GroupKind::Symmetric(n));
        }
    }
    if let Some(rest) = s.strip_prefix('A').filter(|r| r.chars().all(|c| c.is_ascii_digit())) {
        if !rest.is_empty() {
            let n = rest.parse().map_err(|_| err("bad degree"))?;
            return Ok(GroupKind::Alternating(n));
        }
    }
    let open = s.find('(').ok_or_else(|| {
        err("expected S<n>, A<n>, or a matrix family like GL(2,3)")
    })?;
    if !s.ends_with(')') {
        return Err(err("missing closing parenthesis"));
    }
    let family = match &s[..open] {
        "GL" => MatrixFamily::GL,
        "SL" => MatrixFamily::SL,
        "PSL" => MatrixFamily::PSL,
        "Sp" => MatrixFamily::Sp,
        other => return Err(err(&format!("unknown family {other:?}"))),
    };
    let inner = &s[open + 1..s.len() - 1];
    let (ds, ps) = inner
        .split_once(',')
        .ok_or_else(|| err("expected (dim,p)"))?;
    let dim = ds.trim().parse().map_err(|_| err("bad dimension"))?;
    let p = ps.trim().parse().map_err(|_| err("bad characteristic"))?;
    Ok(GroupKind::Matrix { family, dim, p })
}

impl GroupKind {
    fn validate(&self) -> Result<()> {
        match *self {
            GroupKind::Symmetric(n) | GroupKind::Alternating(n) => {
                if n == 0 || n > MAX_PERM_DEGREE {
                    return Err(Error::OutOfRange(format!(
                        "permutation degree {n} outside 1..={MAX_PERM_DEGREE}"
                    )));
                }
            }
            GroupKind::Matrix { family, dim, p } => {
                if !(2..=MAX_MATRIX_DIM).contains(&dim) {
                    return Err(Error::OutOfRange(format!(
                        "matrix dimension {dim} outside 2..={MAX_MATRIX_DIM}"
                    )));
                }
                if !matches!(p, 2 | 3 | 5 | 7) {
                    return Err(Error::InvalidArgument(format!(
                        "characteristic {p} is not a prime <= {MAX_MATRIX_PRIME}"
                    )));
                }
                if family == MatrixFamily::Sp && dim != 2 {
                    return Err(Error::OutOfRange(
                        "symplectic oracle only covers dimension 2 (where Sp = SL)".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Filename stem for the snapshot cache.
    pub fn cache_stem(&self) -> String {
        match self {
            GroupKind::Symmetric(n) => format!("S{n}"),
            GroupKind::Alternating(n) => format!("A{n}"),
            GroupKind::Matrix { family, dim, p } => {
                format!("{}_{dim}_{p}", family.token())
            }
        }
    }

    /// Enumerates the group.
    pub fn build(&self) -> Result<GroupSnapshot> {
        self.validate()?;
        match *self {
            GroupKind::Symmetric(n) => build_perm_group(*self, n, false),
            GroupKind::Alternating(n) => build_perm_group(*self, n, true),
            GroupKind::Matrix { family, dim, p } => build_matrix(*self, family, dim, p),
        }
    }

    fn is_perm(&self) -> bool {
        matches!(self, GroupKind::Symmetric(_) | GroupKind::Alternating(_))
    }
}

pub fn build_symmetric(n: u32) -> Result<GroupSnapshot> {
    GroupKind::Symmetric(n).build()
}

pub fn build_alternating(n: u32) -> Result<GroupSnapshot> {
    GroupKind::Alternating(n).build()
}

pub fn build_matrix_group(family: MatrixFamily, dim: u32, p: u32) -> Result<GroupSnapshot> {
    GroupKind::Matrix { family, dim, p }.build()
}

// --- canonicalization and generic closure ---

fn canon(el: El, scalars: &[u8]) -> El {
    if scalars.len() <= 1 {
        return el;
    }
    let El::Mat { d, p, a } = el else { return el };
    let mut best = el;
    for &c in scalars {
        if c == 1 {
            continue;
        }
        let mut b = [0u8; MAT_SLOTS];
        for i in 0..(d as usize * d as usize) {
            b[i] = (a[i] as u32 * c as u32 % p as u32) as u8;
        }
        let cand = El::Mat { d, p, a: b };
        if cand < best {
            best = cand;
        }
    }
    best
}

fn mul_canon(a: &El, b: &El, scalars: &[u8]) -> El {
    canon(a.mul(b), scalars)
}

fn inverse_el(el: &El, identity: &El, scalars: &[u8]) -> El {
    let mut prev = *identity;
    let mut cur = *el;
    while cur != *identity {
        prev = cur;
        cur = mul_canon(&cur, el, scalars);
    }
    // prev * el = identity.
    prev
}

fn bfs_closure(identity: El, gens: &[El], scalars: &[u8]) -> Result<Vec<El>> {
    let mut seen: HashSet<El> = HashSet::new();
    seen.insert(identity);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul_canon(&x, g, scalars);
            if seen.insert(y) {
                if seen.len() > SIZE_GUARD {
                    return Err(Error::ResourceGuard(format!(
                        "group order exceeds {SIZE_GUARD}"
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<El> = seen.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

/// Conjugacy classes as orbits of the conjugation action of the generators.
/// Scanning in ascending element order makes class ids deterministic.
fn classes_by_orbits(
    elements: &[El],
    index: &HashMap<El, u32>,
    identity: &El,
    gens: &[El],
    scalars: &[u8],
) -> (Vec<ClassData>, Vec<u32>) {
    let inv_gens: Vec<El> = gens
        .iter()
        .map(|g| inverse_el(g, identity, scalars))
        .collect();
    let mut class_of = vec![u32::MAX; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != u32::MAX {
            continue;
        }
        let cid = classes.len() as u32;
        let mut members = vec![start as u32];
        class_of[start] = cid;
        let mut stack = vec![start as u32];
        while let Some(xi) = stack.pop() {
            let x = elements[xi as usize];
            for (g, gi) in gens.iter().zip(&inv_gens) {
                let y = mul_canon(&mul_canon(g, &x, scalars), gi, scalars);
                let yi = index[&y];
                if class_of[yi as usize] == u32::MAX {
                    class_of[yi as usize] = cid;
                    members.push(yi);
                    stack.push(yi);
                }
            }
        }
        members.sort_unstable();
        classes.push(ClassData { members });
    }
    (classes, class_of)
}

// --- permutation groups ---

fn all_perms(n: usize) -> Vec<[u8; PERM_SLOTS]> {
    let mut cur = [0u8; PERM_SLOTS];
    for (i, v) in cur.iter_mut().enumerate() {
        *v = i as u8;
    }
    let mut out = vec![cur];
    if n < 2 {
        return out;
    }
    loop {
        // next lexicographic permutation of cur[0..n]
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..n].reverse();
        out.push(cur);
    }
    out
}

fn perm_from_cycle(n: u32, cyc: &[u8]) -> El {
    let El::Perm { mut img, .. } = El::perm_identity(n) else {
        unreachable!()
    };
    for k in 0..cyc.len() {
        img[cyc[k] as usize] = cyc[(k + 1) % cyc.len()];
    }
    El::Perm { n: n as u8, img }
}

fn alternating_generators(n: u32) -> Vec<El> {
    if n < 3 {
        return Vec::new();
    }
    let mut gens = vec![perm_from_cycle(n, &[0, 1, 2])];
    if n >= 4 {
        let cyc: Vec<u8> = if n % 2 == 1 {
            (0..n as u8).collect()
        } else {
            (1..n as u8).collect()
        };
        gens.push(perm_from_cycle(n, &cyc));
    }
    gens
}

fn build_perm_group(kind: GroupKind, n: u32, alt: bool) -> Result<GroupSnapshot> {
    let elements: Vec<El> = all_perms(n as usize)
        .into_iter()
        .map(|img| El::Perm { n: n as u8, img })
        .filter(|el| !alt || el.perm_is_even())
        .collect();
    let index: HashMap<El, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, el)| (*el, i as u32))
        .collect();
    let (classes, class_of) = if alt {
        classes_by_orbits(
            &elements,
            &index,
            &El::perm_identity(n),
            &alternating_generators(n),
            &[],
        )
    } else {
        // In the full symmetric group the classes are exactly the cycle
        // types; grouping is cheaper than orbits and independently checks
        // the orbit machinery used for the alternating groups.
        let mut by_type: BTreeMap<CycleType, Vec<u32>> = BTreeMap::new();
        for (i, el) in elements.iter().enumerate() {
            by_type.entry(el.cycle_type()).or_default().push(i as u32);
        }
        let mut class_of = vec![u32::MAX; elements.len()];
        let mut classes = Vec::new();
        for (_, members) in by_type {
            let cid = classes.len() as u32;
            for &m in &members {
                class_of[m as usize] = cid;
            }
            classes.push(ClassData { members });
        }
        (classes, class_of)
    };
    Ok(GroupSnapshot {
        kind,
        scalars: Vec::new(),
        center_quotient: false,
        elements,
        index,
        classes,
        class_of,
    })
}

// --- matrix groups ---

fn primitive_root(p: u32) -> u32 {
    (2..p)
        .find(|&g| {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = x * g % p;
                ord += 1;
            }
            ord == p - 1
        })
        .expect("prime fields have primitive roots")
}

fn matrix_generators(family: MatrixFamily, d: u32, p: u32) -> Vec<El> {
    let dd = d as usize;
    let mut gens = Vec::new();
    for i in 0..dd {
        for j in 0..dd {
            if i != j {
                let El::Mat { mut a, .. } = El::mat_identity(d, p) else {
                    unreachable!()
                };
                a[i * dd + j] = 1;
                gens.push(El::Mat {
                    d: d as u8,
                    p: p as u8,
                    a,
                });
            }
        }
    }
    if family == MatrixFamily::GL && p > 2 {
        let El::Mat { mut a, .. } = El::mat_identity(d, p) else {
            unreachable!()
        };
        a[0] = primitive_root(p) as u8;
        gens.push(El::Mat {
            d: d as u8,
            p: p as u8,
            a,
        });
    }
    gens
}

fn build_matrix(kind: GroupKind, family: MatrixFamily, d: u32, p: u32) -> Result<GroupSnapshot> {
    let scalars: Vec<u8> = if family == MatrixFamily::PSL {
        (1..p)
            .filter(|&c| {
                let mut x = 1u32;
                for _ in 0..d {
                    x = x * c % p;
                }
                x == 1
            })
            .map(|c| c as u8)
            .collect()
    } else {
        Vec::new()
    };
    let identity = canon(El::mat_identity(d, p), &scalars);
    let gens: Vec<El> = matrix_generators(family, d, p)
        .into_iter()
        .map(|g| canon(g, &scalars))
        .collect();
    let elements = bfs_closure(identity, &gens, &scalars)?;
    let index: HashMap<El, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, el)| (*el, i as u32))
        .collect();
    let (classes, class_of) = classes_by_orbits(&elements, &index, &identity, &gens, &scalars);
    Ok(GroupSnapshot {
        kind,
        scalars,
        center_quotient: family == MatrixFamily::PSL,
        elements,
        index,
        classes,
        class_of,
    })
}

// --- snapshots ---

#[derive(Debug, Clone, PartialEq, Eq)]
struct ClassData {
    /// Ascending element indices; the representative is the first.
    members: Vec<u32>,
}

/// A fully enumerated group with its conjugacy class partition. Immutable
/// once built; all queries are reads, so sharing across threads is safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSnapshot {
    kind: GroupKind,
    scalars: Vec<u8>,
    center_quotient: bool,
    elements: Vec<El>,
    index: HashMap<El, u32>,
    classes: Vec<ClassData>,
    class_of: Vec<u32>,
}

/// A union of conjugacy classes, the only kind of subset the product and
/// covering machinery works with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubset {
    class_ids: BTreeSet<u32>,
    count: u64,
}

impl NormalSubset {
    pub fn class_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.class_ids.iter().copied()
    }

    pub fn class_count(&self) -> usize {
        self.class_ids.len()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn count_big(&self) -> BigUint {
        BigUint::from(self.count)
    }

    pub fn is_empty(&self) -> bool {
        self.class_ids.is_empty()
    }
}

/// Outcome of a covering-number search under a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringOutcome {
    Within(u32),
    NotWithin { cap: u32 },
}

/// Exact verdicts for the biggest class inside a normal subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigclassReport {
    pub largest_class: u32,
    pub largest_size: u64,
    pub subset_size: u64,
    /// m^q >= |A|^(q-p) for eps = p/q, i.e. m >= |A|^(1-eps).
    pub verdict: bool,
    /// |A|^q <= m^(q+p), i.e. |A| <= m^(1+eps).
    pub companion: bool,
}

/// Exact verdict for an iterated product size floor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KfoldReport {
    pub product: NormalSubset,
    /// |A_1 ... A_k| >= (|A_1| ... |A_k|)^(1-eps), exactly.
    pub size_floor_holds: bool,
}

/// Result of checking one star product against the exhaustive set product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarContainment {
    pub star_type: CycleType,
    pub contained: bool,
    pub size_matches: bool,
}

/// One unipotent class with its Jordan data and exact centralizer order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentClass {
    pub class_id: u32,
    pub blocks: BTreeMap<u64, u64>,
    pub size: u64,
    pub centralizer: u64,
}

impl GroupSnapshot {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn is_center_quotient(&self) -> bool {
        self.center_quotient
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.order())
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, id: u32) -> u64 {
        self.classes[id as usize].members.len() as u64
    }

    pub fn class_rep(&self, id: u32) -> El {
        self.elements[self.classes[id as usize].members[0] as usize]
    }

    pub fn class_sizes_big(&self) -> Vec<BigUint> {
        self.classes
            .iter()
            .map(|c| BigUint::from(c.members.len()))
            .collect()
    }

    /// Class size profile: size -> number of classes of that size.
    pub fn profile(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.members.len() as u64).or_insert(0) += 1;
        }
        out
    }

    pub fn identity_class(&self) -> u32 {
        let identity = match self.kind {
            GroupKind::Symmetric(n) | GroupKind::Alternating(n) => El::perm_identity(n),
            GroupKind::Matrix { dim, p, .. } => canon(El::mat_identity(dim, p), &self.scalars),
        };
        self.class_of[self.index[&identity] as usize]
    }

    fn mul_el(&self, a: &El, b: &El) -> El {
        mul_canon(a, b, &self.scalars)
    }

    fn el_index(&self, el: &El) -> u32 {
        self.index[el]
    }

    /// Cycle type sizes per class, for permutation snapshots: type -> the
    /// ascending list of class sizes with that type (two entries where an
    /// alternating class splits).
    pub fn classes_by_type(&self) -> Result<BTreeMap<CycleType, Vec<u64>>> {
        if !self.kind.is_perm() {
            return Err(Error::InvalidArgument(
                "cycle types only apply to permutation snapshots".into(),
            ));
        }
        let mut out: BTreeMap<CycleType, Vec<u64>> = BTreeMap::new();
        for c in &self.classes {
            let rep = self.elements[c.members[0] as usize];
            out.entry(rep.cycle_type())
                .or_default()
                .push(c.members.len() as u64);
        }
        for sizes in out.values_mut() {
            sizes.sort_unstable();
        }
        Ok(out)
    }

    /// Class ids whose members have the given cycle type.
    pub fn class_ids_of_type(&self, ct: &CycleType) -> Result<Vec<u32>> {
        if !self.kind.is_perm() {
            return Err(Error::InvalidArgument(
                "cycle types only apply to permutation snapshots".into(),
            ));
        }
        let ids: Vec<u32> = (0..self.classes.len() as u32)
            .filter(|&id| self.class_rep(id).cycle_type() == *ct)
            .collect();
        if ids.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "no class of type {ct} in {}",
                self.kind
            )));
        }
        Ok(ids)
    }

    pub fn subset_from_ids(&self, ids: impl IntoIterator<Item = u32>) -> Result<NormalSubset> {
        let class_ids: BTreeSet<u32> = ids.into_iter().collect();
        if let Some(&bad) = class_ids.iter().find(|&&id| id as usize >= self.classes.len()) {
            return Err(Error::InvalidArgument(format!(
                "class id {bad} out of range (group has {} classes)",
                self.classes.len()
            )));
        }
        let count = class_ids.iter().map(|&id| self.class_size(id)).sum();
        Ok(NormalSubset { class_ids, count })
    }

    pub fn subset_from_types(&self, types: &[CycleType]) -> Result<NormalSubset> {
        let mut ids = Vec::new();
        for ct in types {
            ids.extend(self.class_ids_of_type(ct)?);
        }
        self.subset_from_ids(ids)
    }

    pub fn subset_all(&self) -> NormalSubset {
        NormalSubset {
            class_ids: (0..self.classes.len() as u32).collect(),
            count: self.order(),
        }
    }

    /// Class ids of the product set C1 * C2. One representative of the
    /// smaller side is multiplied against every element of the other class;
    /// the result determines the full product because a product of classes
    /// is a normal set and every class meeting it appears among these
    /// products (conjugating a*b by g pairs a^g with b^g, and a^g covers
    /// the class as g runs over the group).
    fn class_pair_product(&self, c1: u32, c2: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        if self.class_size(c1) <= self.class_size(c2) {
            let members = &self.classes[c1 as usize].members;
            let rep2 = self.class_rep(c2);
            for &m in members {
                let prod = self.mul_el(&self.elements[m as usize], &rep2);
                out.insert(self.class_of[self.el_index(&prod) as usize]);
            }
        } else {
            let rep1 = self.class_rep(c1);
            let members = &self.classes[c2 as usize].members;
            for &m in members {
                let prod = self.mul_el(&rep1, &self.elements[m as usize]);
                out.insert(self.class_of[self.el_index(&prod) as usize]);
            }
        }
        out
    }

    /// Exact set product of two normal subsets, as a normal subset.
    pub fn product_set(&self, a1: &NormalSubset, a2: &NormalSubset) -> NormalSubset {
        let mut ids = BTreeSet::new();
        for &c1 in &a1.class_ids {
            for &c2 in &a2.class_ids {
                ids.extend(self.class_pair_product(c1, c2));
            }
        }
        self.subset_from_ids(ids).expect("product ids in range")
    }

    /// All-pairs reference product, for validating the representative
    /// shortcut on small groups.
    pub fn product_set_naive(&self, a1: &NormalSubset, a2: &NormalSubset) -> NormalSubset {
        let mut hit = vec![false; self.elements.len()];
        for &c1 in &a1.class_ids {
            for &m1 in &self.classes[c1 as usize].members {
                let x = self.elements[m1 as usize];
                for &c2 in &a2.class_ids {
                    for &m2 in &self.classes[c2 as usize].members {
                        let prod = self.mul_el(&x, &self.elements[m2 as usize]);
                        hit[self.el_index(&prod) as usize] = true;
                    }
                }
            }
        }
        let ids: BTreeSet<u32> = hit
            .iter()
            .enumerate()
            .filter(|(_, &h)| h)
            .map(|(i, _)| self.class_of[i])
            .collect();
        let subset = self.subset_from_ids(ids).expect("ids in range");
        // The product of normal sets is normal: element count must match.
        assert_eq!(
            subset.count,
            hit.iter().filter(|&&h| h).count() as u64,
            "product set is not a union of classes"
        );
        subset
    }

    /// Least b <= cap with A^b = G. Powers are recomputed per b (A^(b+1) =
    /// A * A^b); nothing here assumes A^b grows monotonically, and for odd
    /// subsets of a symmetric group it genuinely does not.
    pub fn covering_number(&self, a: &NormalSubset, cap: u32) -> Result<CoveringOutcome> {
        if a.is_empty()
            || (a.class_ids.len() == 1 && a.class_ids.contains(&self.identity_class()))
        {
            return Err(Error::TrivialSubset(
                "covering number needs a nontrivial normal subset".into(),
            ));
        }
        let full = self.classes.len();
        let mut power = a.clone();
        for b in 1..=cap {
            if power.class_ids.len() == full {
                return Ok(CoveringOutcome::Within(b));
            }
            power = self.product_set(a, &power);
        }
        Ok(CoveringOutcome::NotWithin { cap })
    }

    /// The largest class inside a subset (smallest id on ties).
    pub fn largest_class_in(&self, a: &NormalSubset) -> Result<(u32, u64)> {
        let mut best: Option<(u32, u64)> = None;
        for &id in &a.class_ids {
            let size = self.class_size(id);
            if best.map_or(true, |(_, bs)| size > bs) {
                best = Some((id, size));
            }
        }
        best.ok_or_else(|| Error::InvalidArgument("empty normal subset".into()))
    }

    /// Exact power-comparison verdicts for the largest class in A against
    /// |A|^(1-eps), plus the companion counting inequality |A| <= m^(1+eps).
    pub fn bigclass_check(&self, a: &NormalSubset, eps: Epsilon) -> Result<BigclassReport> {
        let (largest_class, largest_size) = self.largest_class_in(a)?;
        let m = BigUint::from(largest_size);
        let total = a.count_big();
        Ok(BigclassReport {
            largest_class,
            largest_size,
            subset_size: a.count,
            verdict: eps.power_at_least(&m, &total),
            companion: eps.power_at_most(&total, &m),
        })
    }

    /// For every class size m present, whether the number of classes of
    /// size at most m stays below m^eps (exact cleared-denominator check).
    pub fn size_prop_check(&self, eps: Epsilon) -> Vec<(u64, u64, bool)> {
        let profile = self.profile();
        let mut out = Vec::new();
        let mut cumulative = 0u64;
        for (&m, &count) in &profile {
            cumulative += count;
            let holds =
                eps.power_fraction_at_most(&BigUint::from(cumulative), &BigUint::from(m));
            out.push((m, cumulative, holds));
        }
        out
    }

    /// Class zeta function over this group's exact class sizes.
    pub fn eta(&self, s: &BigRational, bits: u32) -> Result<Enclosure> {
        sizes_zeta(&self.class_sizes_big(), s, bits)
    }

    /// Left-to-right iterated product with the exact size-floor verdict
    /// |A_1 ... A_k| >= (prod |A_i|)^(1-eps).
    pub fn kfold_expansion_check(
        &self,
        subsets: &[NormalSubset],
        eps: Epsilon,
    ) -> Result<KfoldReport> {
        if subsets.len() < 2 {
            return Err(Error::InvalidArgument(
                "k-fold products need at least two factors".into(),
            ));
        }
        if subsets.iter().any(|a| a.is_empty()) {
            return Err(Error::InvalidArgument("empty factor".into()));
        }
        let mut product = subsets[0].clone();
        for a in &subsets[1..] {
            product = self.product_set(&product, a);
        }
        let size_product: BigUint = subsets.iter().map(|a| a.count_big()).product();
        let size_floor_holds = eps.power_at_least(&product.count_big(), &size_product);
        Ok(KfoldReport {
            product,
            size_floor_holds,
        })
    }

    /// Verifies, by exhaustive products, that the distinguished class built
    /// from disjoint representatives lies inside C1*C2, and that its oracle
    /// size equals the formula size.
    pub fn star_containment_check(&self, ct1: &CycleType, ct2: &CycleType) -> Result<StarContainment> {
        if !matches!(self.kind, GroupKind::Symmetric(_)) {
            return Err(Error::InvalidArgument(
                "star containment is checked in full symmetric groups".into(),
            ));
        }
        let star_type = cycle::star(ct1, ct2)?;
        let c1 = self.class_ids_of_type(ct1)?[0];
        let c2 = self.class_ids_of_type(ct2)?[0];
        let cs = self.class_ids_of_type(&star_type)?[0];
        let contained = self.class_pair_product(c1, c2).contains(&cs);
        let size_matches =
            BigUint::from(self.class_size(cs)) == cycle::sym_class_size(&star_type);
        Ok(StarContainment {
            star_type,
            contained,
            size_matches,
        })
    }

    /// Whether every class is closed under inversion as a set.
    pub fn classes_inversion_closed(&self) -> bool {
        let identity = match self.kind {
            GroupKind::Symmetric(n) | GroupKind::Alternating(n) => El::perm_identity(n),
            GroupKind::Matrix { dim, p, .. } => canon(El::mat_identity(dim, p), &self.scalars),
        };
        (0..self.classes.len() as u32).all(|id| {
            let rep = self.class_rep(id);
            let inv = inverse_el(&rep, &identity, &self.scalars);
            self.class_of[self.el_index(&inv) as usize] == id
        })
    }

    /// Unipotent classes with Jordan block data and exact centralizer
    /// orders. Only faithful matrix snapshots qualify; in a central
    /// quotient "unipotent" is not a property of the stored representative.
    pub fn unipotent_class_data(&self) -> Result<Vec<UnipotentClass>> {
        let GroupKind::Matrix { dim, p, .. } = self.kind else {
            return Err(Error::InvalidArgument(
                "unipotent data needs a matrix snapshot".into(),
            ));
        };
        if self.center_quotient {
            return Err(Error::InvalidArgument(
                "unipotent data needs a faithful matrix group, not a central quotient".into(),
            ));
        }
        let mut out = Vec::new();
        for id in 0..self.classes.len() as u32 {
            let El::Mat { a, .. } = self.class_rep(id) else {
                unreachable!()
            };
            if let Some(blocks) = jordan_blocks(&a, dim as usize, p) {
                let size = self.class_size(id);
                out.push(UnipotentClass {
                    class_id: id,
                    blocks,
                    size,
                    centralizer: self.order() / size,
                });
            }
        }
        Ok(out)
    }

    /// Support of a class: non-fixed points for permutations; for matrices,
    /// the codimension of the largest eigenspace over the algebraic closure
    /// (invariant under the scalar twists of a central quotient).
    pub fn class_support(&self, id: u32) -> u64 {
        match self.class_rep(id) {
            El::Perm { .. } => self.class_rep(id).cycle_type().support(),
            El::Mat { d, p, a } => d as u64 - closure_eigenspace_max(&a, d as usize, p as u32),
        }
    }
}

// --- snapshot cache ---

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    version: u32,
    key: String,
    order: usize,
    class_count: usize,
    scalars: Vec<u8>,
    center_quotient: bool,
}

#[derive(Serialize, Deserialize)]
struct CacheClass {
    members: Vec<u32>,
}

const CACHE_VERSION: u32 = 1;

fn cache_path(kind: GroupKind, dir: &Path) -> PathBuf {
    dir.join(format!("{}.snapshot.jsonl", kind.cache_stem()))
}

impl GroupSnapshot {
    /// Writes the snapshot as line-JSON: a header, one line per element,
    /// one line per class.
    pub fn save_cache(&self, dir: &Path) -> Result<()> {
        let io_err = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(dir).map_err(io_err)?;
        let mut w = BufWriter::new(fs::File::create(cache_path(self.kind, dir)).map_err(io_err)?);
        let header = CacheHeader {
            version: CACHE_VERSION,
            key: self.kind.to_string(),
            order: self.elements.len(),
            class_count: self.classes.len(),
            scalars: self.scalars.clone(),
            center_quotient: self.center_quotient,
        };
        let json_err = |e: serde_json::Error| Error::Cache(e.to_string());
        writeln!(w, "{}", serde_json::to_string(&header).map_err(json_err)?).map_err(io_err)?;
        for el in &self.elements {
            writeln!(w, "{}", serde_json::to_string(el).map_err(json_err)?).map_err(io_err)?;
        }
        for c in &self.classes {
            let line = serde_json::to_string(&CacheClass {
                members: c.members.clone(),
            })
            .map_err(json_err)?;
            writeln!(w, "{line}").map_err(io_err)?;
        }
        w.flush().map_err(io_err)
    }

    /// Reads a cached snapshot back, validating enough invariants that a
    /// stale or mangled file can only produce a rebuild, never wrong data.
    /// Any anomaly yields None.
    pub fn load_cache(kind: GroupKind, dir: &Path) -> Option<GroupSnapshot> {
        let file = fs::File::open(cache_path(kind, dir)).ok()?;
        let mut lines = BufReader::new(file).lines();
        let header: CacheHeader = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        if header.version != CACHE_VERSION || header.key != kind.to_string() {
            return None;
        }
        if header.order == 0 || header.class_count == 0 || header.order > SIZE_GUARD {
            return None;
        }
        let mut elements = Vec::with_capacity(header.order);
        for _ in 0..header.order {
            let el: El = serde_json::from_str(&lines.next()?.ok()?).ok()?;
            if let Some(last) = elements.last() {
                if *last >= el {
                    return None; // must be strictly ascending
                }
            }
            elements.push(el);
        }
        let mut classes = Vec::with_capacity(header.class_count);
        let mut class_of = vec![u32::MAX; header.order];
        for cid in 0..header.class_count {
            let c: CacheClass = serde_json::from_str(&lines.next()?.ok()?).ok()?;
            if c.members.is_empty() {
                return None;
            }
            for (k, &m) in c.members.iter().enumerate() {
                if m as usize >= header.order || class_of[m as usize] != u32::MAX {
                    return None;
                }
                if k > 0 && c.members[k - 1] >= m {
                    return None;
                }
                class_of[m as usize] = cid as u32;
            }
            classes.push(ClassData { members: c.members });
        }
        if lines.next().is_some() || class_of.iter().any(|&c| c == u32::MAX) {
            return None;
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, el)| (*el, i as u32))
            .collect();
        Some(GroupSnapshot {
            kind,
            scalars: header.scalars,
            center_quotient: header.center_quotient,
            elements,
            index,
            classes,
            class_of,
        })
    }
}

/// Builds a snapshot, going through the cache directory when one is given.
/// The cache is purely an optimization: a missing, stale, or corrupt file
/// falls back to a fresh build, and a fresh build is saved best-effort.
pub fn load_or_build(kind: GroupKind, cache: Option<&Path>) -> Result<GroupSnapshot> {
    if let Some(dir) = cache {
        if let Some(snap) = GroupSnapshot::load_cache(kind, dir) {
            return Ok(snap);
        }
    }
    let snap = kind.build()?;
    if let Some(dir) = cache {
        let _ = snap.save_cache(dir); // best-effort; results never depend on it
    }
    Ok(snap)
}
