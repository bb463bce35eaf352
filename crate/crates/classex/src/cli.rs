//! Command line front end.
//!
//! Every subcommand turns its inputs into a stream of flat records (see
//! [`crate::report`]) and never prints a rounded number: integers and
//! rationals are exact, and quantities that are intrinsically enclosures
//! print both endpoints. Exit codes separate outcomes: 0 clean, 1 at least
//! one checked inequality failed, 2 unusable input, 3 a resource guard
//! refused the size of the request.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::classical::{
    self, class_dimension_bounds, class_size_exponents, dimension_expansion_certified,
    linear_exponent, orthogonal_exponent, orthogonal_exponent_window, parse_blocks,
    parse_descriptor, parse_group_spec, star_expansion_verdict, symplectic_exponent,
    symplectic_exponent_window, ClassicalFamily, JordanDescriptor,
};
use crate::cycle::{
    alt_class_size, enumerate, factorial, parse_cycle_type, sym_class_size, AltClassSize,
    CycleType,
};
use crate::error::{Error, Result};
use crate::oracle::{load_or_build, parse_group, CoveringOutcome, GroupKind, GroupSnapshot, NormalSubset};
use crate::report::{Emitter, Format, Record};
use crate::sym::{
    arrangement_ratio_floor_holds, class_size_analytic_lower, class_size_bounds,
    class_size_power_lower, class_zeta, expansion_verdict, factorial_bounds,
    multiplicity_ratio_floor_holds, par_map_types, support_threshold_scan, Epsilon, PermFamily,
};

/// Degree caps for the sweep modes. Exceeding one is a resource refusal
/// (exit 3), not a usage error: the request is well-formed, just too big.
pub const SWEEP_BOUNDS_MAX_N: u64 = 40;
pub const SWEEP_THRESHOLD_MAX_N: u64 = 64;
pub const SWEEP_EXPANSION_MAX_N: u64 = 24;
pub const SWEEP_ETA_MAX_N: u64 = 30;

const MIN_PRECISION: u32 = 16;

#[derive(Parser, Debug)]
#[command(
    name = "classex",
    version,
    about = "Exact conjugacy class calculus: sizes, star products, expansion checks, and brute-force verification in small groups"
)]
pub struct Cli {
    /// Output format for report records.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,

    /// Worker threads for sweeps; 0 uses the machine default. Output is
    /// byte-identical for every value.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Working precision in bits for certified enclosures (minimum 16).
    #[arg(long, global = true, default_value_t = 64)]
    pub precision: u32,

    /// Directory for cached group snapshots; purely an optimization.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormatArg {
    Text,
    Jsonl,
    Csv,
}

impl FormatArg {
    fn to_format(self) -> Format {
        match self {
            FormatArg::Text => Format::Text,
            FormatArg::Jsonl => Format::Jsonl,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupArg {
    Sym,
    Alt,
}

impl GroupArg {
    fn family(self) -> PermFamily {
        match self {
            GroupArg::Sym => PermFamily::Symmetric,
            GroupArg::Alt => PermFamily::Alternating,
        }
    }

    fn label(self, n: u64) -> String {
        match self {
            GroupArg::Sym => format!("S{n}"),
            GroupArg::Alt => format!("A{n}"),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Bounds,
    Threshold,
    Expansion,
    Eta,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleTask {
    Classes,
    Product,
    Covering,
    Bigclass,
    StarContain,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalTask {
    Exponents,
    Bounds,
    Star,
    Dims,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact class size of a cycle type in the symmetric or alternating group.
    ClassSize {
        /// Degree of the group.
        #[arg(long)]
        n: u64,
        /// Cycle type, e.g. "2^2 1" (multiplicity 1 may be implicit).
        #[arg(long = "type")]
        cycle_type: String,
        #[arg(long, value_enum, default_value_t = GroupArg::Sym)]
        group: GroupArg,
    },
    /// Star product of two types: the distinguished class built from
    /// disjoint-support representatives, with an optional expansion verdict.
    Star {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        type1: String,
        #[arg(long)]
        type2: String,
        /// Tolerance as a fraction p/q; adds the exact verdict
        /// |C*| >= (|C1||C2|)^(1-eps).
        #[arg(long)]
        eps: Option<String>,
    },
    /// Property sweeps over a degree range, one record per degree plus a
    /// summary with the total violation count.
    Sweep {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Inclusive degree range "A..B", or a single degree.
        #[arg(long)]
        n: String,
        /// Tolerance p/q; required for expansion mode.
        #[arg(long)]
        eps: Option<String>,
        /// Zeta exponent for eta mode, an integer or fraction (default 1).
        #[arg(long)]
        s: Option<String>,
        #[arg(long, value_enum, default_value_t = GroupArg::Sym)]
        group: GroupArg,
    },
    /// Brute-force checks against a fully enumerated small group.
    Oracle {
        /// Group token: S5, A8, GL(2,3), SL(3,2), PSL(2,7), Sp(2,5).
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        task: OracleTask,
        /// Cycle types (comma separated) selecting classes; a type that
        /// splits selects both halves.
        #[arg(long)]
        classes: Option<String>,
        /// Class ids (comma separated) selecting classes directly.
        #[arg(long)]
        class_ids: Option<String>,
        /// Second subset for the product task, as cycle types.
        #[arg(long)]
        with: Option<String>,
        /// Second subset for the product task, as class ids.
        #[arg(long)]
        with_ids: Option<String>,
        /// Power cap for the covering search.
        #[arg(long, default_value_t = 20)]
        cap: u32,
        #[arg(long)]
        eps: Option<String>,
        /// First type for star-contain.
        #[arg(long)]
        type1: Option<String>,
        /// Second type for star-contain.
        #[arg(long)]
        type2: Option<String>,
    },
    /// Exponent calculus for conjugacy classes of classical groups.
    Classical {
        #[arg(long, value_enum)]
        task: ClassicalTask,
        /// Group spec "family n q", e.g. "L 3 2" (families L, U, Sp, O+, O-).
        #[arg(long)]
        spec: Option<String>,
        /// Full descriptor "family n q | tag | blocks | k".
        #[arg(long)]
        desc: Option<String>,
        /// Second descriptor for the star task.
        #[arg(long)]
        with: Option<String>,
        /// Jordan blocks alone, e.g. "2^1 1^1", for the exponents task.
        #[arg(long)]
        blocks: Option<String>,
        /// Family token alone, for the dims task.
        #[arg(long)]
        family: Option<String>,
        /// Dimension, for the dims task.
        #[arg(long)]
        n: Option<u64>,
        /// Support parameter.
        #[arg(long)]
        s: Option<u64>,
        /// Second support, turning dims into an expansion certification.
        #[arg(long)]
        s2: Option<u64>,
        #[arg(long)]
        eps: Option<String>,
    },
}

/// Entry point for the binary: parse, run, map the outcome to an exit code.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(violations) => {
            let _ = out.flush();
            if violations == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            match e {
                Error::ResourceGuard(_) | Error::OutOfRange(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// Runs one parsed invocation, writing records to `out`. Returns the number
/// of violated checks; errors are inputs the command could not act on.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<u64> {
    if cli.precision < MIN_PRECISION {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least {MIN_PRECISION} bits, got {}",
            cli.precision
        )));
    }
    if cli.jobs > 0 {
        // First caller wins; later calls in the same process keep the pool
        // already built, which never changes any output bytes.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let mut emitter = Emitter::new(out, cli.format.to_format());
    let bits = cli.precision;
    match cli.command {
        Command::ClassSize {
            n,
            cycle_type,
            group,
        } => cmd_class_size(&mut emitter, n, &cycle_type, group),
        Command::Star {
            n,
            type1,
            type2,
            eps,
        } => cmd_star(&mut emitter, n, &type1, &type2, eps.as_deref()),
        Command::Sweep {
            mode,
            n,
            eps,
            s,
            group,
        } => cmd_sweep(&mut emitter, mode, &n, eps.as_deref(), s.as_deref(), group, bits),
        Command::Oracle {
            group,
            task,
            classes,
            class_ids,
            with,
            with_ids,
            cap,
            eps,
            type1,
            type2,
        } => {
            let args = OracleArgs {
                group,
                task,
                classes,
                class_ids,
                with,
                with_ids,
                cap,
                eps,
                type1,
                type2,
            };
            cmd_oracle(&mut emitter, &args, cli.cache.as_deref(), bits)
        }
        Command::Classical {
            task,
            spec,
            desc,
            with,
            blocks,
            family,
            n,
            s,
            s2,
            eps,
        } => {
            let args = ClassicalArgs {
                task,
                spec,
                desc,
                with,
                blocks,
                family,
                n,
                s,
                s2,
                eps,
            };
            cmd_classical(&mut emitter, &args)
        }
    }
}

fn parse_eps(text: &str) -> Result<Epsilon> {
    text.parse()
}

fn require<T>(opt: Option<T>, what: &str) -> Result<T> {
    opt.ok_or_else(|| Error::InvalidArgument(format!("{what} is required for this task")))
}

fn parse_rational(text: &str) -> Result<BigRational> {
    text.trim().parse().map_err(|_| Error::Parse {
        input: text.to_string(),
        pos: 0,
        msg: "expected an integer or a fraction p/q".to_string(),
    })
}

/// Inclusive "A..B" range; a bare degree means A..A.
fn parse_range(text: &str) -> Result<(u64, u64)> {
    let err = |msg: &str| Error::Parse {
        input: text.to_string(),
        pos: 0,
        msg: msg.to_string(),
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| err("bad range start"))?,
            b.trim().parse().map_err(|_| err("bad range end"))?,
        ),
        None => {
            let n: u64 = text.trim().parse().map_err(|_| err("bad degree"))?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(err("range start exceeds range end"));
    }
    Ok((lo, hi))
}

// --- class-size ---

fn cmd_class_size<W: Write>(
    emitter: &mut Emitter<W>,
    n: u64,
    type_text: &str,
    group: GroupArg,
) -> Result<u64> {
    let ct = parse_cycle_type(type_text, n)?;
    let record = match group {
        GroupArg::Sym => Record::new()
            .str("group", group.label(n))
            .str("type", ct.to_string())
            .int("classes", 1)
            .str("size", sym_class_size(&ct).to_string()),
        GroupArg::Alt => {
            let (classes, each) = match alt_class_size(&ct)? {
                AltClassSize::Whole(s) => (1, s),
                AltClassSize::Split(h) => (2, h),
            };
            Record::new()
                .str("group", group.label(n))
                .str("type", ct.to_string())
                .int("classes", classes)
                .str("size", each.to_string())
        }
    };
    emitter.emit(&record)?;
    Ok(0)
}

// --- star ---

fn cmd_star<W: Write>(
    emitter: &mut Emitter<W>,
    n: u64,
    type1: &str,
    type2: &str,
    eps: Option<&str>,
) -> Result<u64> {
    let ct1 = parse_cycle_type(type1, n)?;
    let ct2 = parse_cycle_type(type2, n)?;
    match eps {
        None => {
            let star_type = crate::cycle::star(&ct1, &ct2)?;
            let record = Record::new()
                .int("n", n)
                .str("type1", ct1.to_string())
                .str("type2", ct2.to_string())
                .str("star", star_type.to_string())
                .str("size1", sym_class_size(&ct1).to_string())
                .str("size2", sym_class_size(&ct2).to_string())
                .str("star_size", sym_class_size(&star_type).to_string());
            emitter.emit(&record)?;
            Ok(0)
        }
        Some(text) => {
            let eps = parse_eps(text)?;
            let rec = expansion_verdict(&ct1, &ct2, eps)?;
            let record = Record::new()
                .int("n", n)
                .str("type1", rec.type1.to_string())
                .str("type2", rec.type2.to_string())
                .str("star", rec.star_type.to_string())
                .str("size1", rec.size1.to_string())
                .str("size2", rec.size2.to_string())
                .str("star_size", rec.star_size.to_string())
                .str("eps", rec.epsilon.to_string())
                .bool("verdict", rec.verdict);
            emitter.emit(&record)?;
            Ok(u64::from(!rec.verdict))
        }
    }
}

// --- sweep ---

fn cmd_sweep<W: Write>(
    emitter: &mut Emitter<W>,
    mode: ModeArg,
    range: &str,
    eps: Option<&str>,
    s: Option<&str>,
    group: GroupArg,
    bits: u32,
) -> Result<u64> {
    let (lo, hi) = parse_range(range)?;
    let cap = match mode {
        ModeArg::Bounds => SWEEP_BOUNDS_MAX_N,
        ModeArg::Threshold => SWEEP_THRESHOLD_MAX_N,
        ModeArg::Expansion => SWEEP_EXPANSION_MAX_N,
        ModeArg::Eta => SWEEP_ETA_MAX_N,
    };
    if hi > cap {
        return Err(Error::ResourceGuard(format!(
            "sweep mode caps the degree at {cap}, range ends at {hi}"
        )));
    }
    match mode {
        ModeArg::Bounds => {
            let mut total_types = 0u64;
            let mut total_viol = 0u64;
            for n in lo..=hi {
                let (types, viol) = sweep_bounds_one(n, bits)?;
                total_types += types;
                total_viol += viol;
                emitter.emit(
                    &Record::new()
                        .str("mode", "bounds")
                        .str("n", n.to_string())
                        .int("types", types)
                        .int("violations", viol),
                )?;
            }
            emitter.emit(
                &Record::new()
                    .str("mode", "bounds")
                    .str("n", format!("{lo}..{hi}"))
                    .int("types", total_types)
                    .int("violations", total_viol),
            )?;
            Ok(total_viol)
        }
        ModeArg::Threshold => {
            let family = group.family();
            let mut total_viol = 0u64;
            for n in lo..=hi {
                let violators = support_threshold_scan(n, family)?;
                let viol = violators.len() as u64;
                total_viol += viol;
                emitter.emit(
                    &Record::new()
                        .str("mode", "threshold")
                        .str("n", n.to_string())
                        .str("family", group.label(n))
                        .int("violations", viol),
                )?;
            }
            emitter.emit(
                &Record::new()
                    .str("mode", "threshold")
                    .str("n", format!("{lo}..{hi}"))
                    .str("family", match group {
                        GroupArg::Sym => "sym".to_string(),
                        GroupArg::Alt => "alt".to_string(),
                    })
                    .int("violations", total_viol),
            )?;
            Ok(total_viol)
        }
        ModeArg::Expansion => {
            let eps = parse_eps(require(eps, "--eps")?)?;
            let mut total_pairs = 0u64;
            let mut total_viol = 0u64;
            for n in lo..=hi {
                let (pairs, viol) = sweep_expansion_one(n, eps)?;
                total_pairs += pairs;
                total_viol += viol;
                emitter.emit(
                    &Record::new()
                        .str("mode", "expansion")
                        .str("n", n.to_string())
                        .str("eps", eps.to_string())
                        .int("pairs", pairs)
                        .int("violations", viol),
                )?;
            }
            emitter.emit(
                &Record::new()
                    .str("mode", "expansion")
                    .str("n", format!("{lo}..{hi}"))
                    .str("eps", eps.to_string())
                    .int("pairs", total_pairs)
                    .int("violations", total_viol),
            )?;
            Ok(total_viol)
        }
        ModeArg::Eta => {
            let s = match s {
                Some(text) => parse_rational(text)?,
                None => BigRational::from_integer(1.into()),
            };
            let family = group.family();
            for n in lo..=hi {
                let eta = class_zeta(n, &s, family, bits)?;
                emitter.emit(
                    &Record::new()
                        .str("mode", "eta")
                        .str("n", n.to_string())
                        .str("family", group.label(n))
                        .str("s", s.to_string())
                        .str("eta_lo", eta.lo().to_string())
                        .str("eta_hi", eta.hi().to_string()),
                )?;
            }
            Ok(0)
        }
    }
}

/// Verifies, for one degree, everything the size lemmas claim: two-sided
/// bounds, the analytic lower bound, the support power floor, and both
/// ratio floors (each type paired with itself). Returns (types, violations).
fn sweep_bounds_one(n: u64, bits: u32) -> Result<(u64, u64)> {
    let mut violations = 0u64;
    if !factorial_bounds(n, bits)?.contains_int(&factorial(n)) {
        violations += 1;
    }
    let rows = par_map_types(n, |ct| (ct.clone(), sym_class_size(ct)));
    // Per-support data is shared by every class of that support.
    let mut by_support = std::collections::BTreeMap::new();
    for (ct, _) in &rows {
        let s = ct.support();
        if by_support.contains_key(&s) {
            continue;
        }
        let report = class_size_bounds(n, s)?;
        let analytic = class_size_analytic_lower(n, s, bits)?;
        let arrangement_ok = if 3 * s <= n {
            Some(arrangement_ratio_floor_holds(n, s, s)?)
        } else {
            None
        };
        let power_lower = if s >= 2 && 2 * s <= n {
            Some(class_size_power_lower(n, s)?)
        } else {
            None
        };
        by_support.insert(s, (report, analytic, arrangement_ok, power_lower));
    }
    for (ct, size) in &rows {
        let (report, analytic, arrangement_ok, power_lower) = &by_support[&ct.support()];
        if !report.contains_int(size) {
            violations += 1;
        }
        let size_rat = BigRational::from_integer(size.clone().into());
        if *analytic > size_rat {
            violations += 1;
        }
        if arrangement_ok == &Some(false) {
            violations += 1;
        }
        if let Some(bound) = power_lower {
            if size < bound {
                violations += 1;
            }
        }
        if !multiplicity_ratio_floor_holds(ct, ct) {
            violations += 1;
        }
    }
    Ok((rows.len() as u64, violations))
}

/// All ordered type pairs of one degree whose supports fit side by side,
/// each checked for |C*| >= (|C1||C2|)^(1-eps). Returns (pairs, violations).
fn sweep_expansion_one(n: u64, eps: Epsilon) -> Result<(u64, u64)> {
    let types: Vec<(CycleType, u64)> = enumerate(n).map(|ct| {
        let s = ct.support();
        (ct, s)
    }).collect();
    let per_type: Result<Vec<(u64, u64)>> = types
        .par_iter()
        .map(|(ct1, s1)| {
            let mut pairs = 0u64;
            let mut viol = 0u64;
            for (ct2, s2) in &types {
                if s1 + s2 > n {
                    continue;
                }
                pairs += 1;
                if !expansion_verdict(ct1, ct2, eps)?.verdict {
                    viol += 1;
                }
            }
            Ok((pairs, viol))
        })
        .collect();
    let per_type = per_type?;
    Ok((
        per_type.iter().map(|&(p, _)| p).sum(),
        per_type.iter().map(|&(_, v)| v).sum(),
    ))
}

// --- oracle ---

struct OracleArgs {
    group: String,
    task: OracleTask,
    classes: Option<String>,
    class_ids: Option<String>,
    with: Option<String>,
    with_ids: Option<String>,
    cap: u32,
    eps: Option<String>,
    type1: Option<String>,
    type2: Option<String>,
}

fn perm_degree(kind: GroupKind) -> Result<u64> {
    match kind {
        GroupKind::Symmetric(n) | GroupKind::Alternating(n) => Ok(n as u64),
        GroupKind::Matrix { .. } => Err(Error::InvalidArgument(
            "cycle type selectors need a permutation group; use --class-ids".into(),
        )),
    }
}

/// Builds a normal subset from `--classes` (cycle types) and/or ids,
/// returning it with the label that goes into the report.
fn parse_subset(
    snap: &GroupSnapshot,
    classes: &Option<String>,
    ids: &Option<String>,
    flag: &str,
) -> Result<(NormalSubset, String)> {
    let mut selected = Vec::new();
    let mut label_parts = Vec::new();
    if let Some(text) = classes {
        let n = perm_degree(snap.kind())?;
        for token in text.split(',') {
            let ct = parse_cycle_type(token.trim(), n)?;
            label_parts.push(ct.to_string());
            selected.extend(snap.class_ids_of_type(&ct)?);
        }
    }
    if let Some(text) = ids {
        for token in text.split(',') {
            let id: u32 = token.trim().parse().map_err(|_| Error::Parse {
                input: text.clone(),
                pos: 0,
                msg: "class ids must be integers".to_string(),
            })?;
            label_parts.push(format!("#{id}"));
            selected.push(id);
        }
    }
    if selected.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "select classes with {flag}"
        )));
    }
    Ok((snap.subset_from_ids(selected)?, label_parts.join(" + ")))
}

fn cmd_oracle<W: Write>(
    emitter: &mut Emitter<W>,
    args: &OracleArgs,
    cache: Option<&std::path::Path>,
    bits: u32,
) -> Result<u64> {
    let _ = bits;
    let kind = parse_group(&args.group)?;
    let snap = load_or_build(kind, cache)?;
    let group_label = kind.to_string();
    match args.task {
        OracleTask::Classes => {
            let perm = perm_degree(kind).is_ok();
            for id in 0..snap.class_count() as u32 {
                let mut record = Record::new()
                    .str("group", group_label.clone())
                    .int("order", snap.order())
                    .int("class", u64::from(id))
                    .int("size", snap.class_size(id));
                if perm {
                    record = record.str("type", snap.class_rep(id).cycle_type().to_string());
                } else {
                    record = record.int("support", snap.class_support(id));
                }
                emitter.emit(&record)?;
            }
            Ok(0)
        }
        OracleTask::Product => {
            let (a, left) = parse_subset(&snap, &args.classes, &args.class_ids, "--classes")?;
            let (b, right) = parse_subset(&snap, &args.with, &args.with_ids, "--with")?;
            let product = snap.product_set(&a, &b);
            let ids: Vec<String> = product.class_ids().map(|id| id.to_string()).collect();
            emitter.emit(
                &Record::new()
                    .str("group", group_label)
                    .str("left", left)
                    .str("right", right)
                    .int("classes", product.class_count() as u64)
                    .int("size", product.count())
                    .str("ids", ids.join(" ")),
            )?;
            Ok(0)
        }
        OracleTask::Covering => {
            let (a, label) = parse_subset(&snap, &args.classes, &args.class_ids, "--classes")?;
            let outcome = snap.covering_number(&a, args.cap)?;
            let (covered, steps) = match outcome {
                CoveringOutcome::Within(b) => (true, u64::from(b)),
                CoveringOutcome::NotWithin { cap } => (false, u64::from(cap)),
            };
            emitter.emit(
                &Record::new()
                    .str("group", group_label)
                    .str("subset", label)
                    .int("size", a.count())
                    .int("cap", u64::from(args.cap))
                    .bool("covered", covered)
                    .int("steps", steps),
            )?;
            Ok(u64::from(!covered))
        }
        OracleTask::Bigclass => {
            let (a, label) = parse_subset(&snap, &args.classes, &args.class_ids, "--classes")?;
            let eps = parse_eps(require(args.eps.as_deref(), "--eps")?)?;
            let report = snap.bigclass_check(&a, eps)?;
            emitter.emit(
                &Record::new()
                    .str("group", group_label)
                    .str("subset", label)
                    .int("size", report.subset_size)
                    .str("eps", eps.to_string())
                    .int("largest_class", u64::from(report.largest_class))
                    .int("largest_size", report.largest_size)
                    .bool("verdict", report.verdict)
                    .bool("companion", report.companion),
            )?;
            Ok(u64::from(!report.verdict) + u64::from(!report.companion))
        }
        OracleTask::StarContain => {
            let n = perm_degree(kind)?;
            let ct1 = parse_cycle_type(require(args.type1.as_deref(), "--type1")?, n)?;
            let ct2 = parse_cycle_type(require(args.type2.as_deref(), "--type2")?, n)?;
            let r = snap.star_containment_check(&ct1, &ct2)?;
            emitter.emit(
                &Record::new()
                    .str("group", group_label)
                    .str("type1", ct1.to_string())
                    .str("type2", ct2.to_string())
                    .str("star", r.star_type.to_string())
                    .bool("contained", r.contained)
                    .bool("size_matches", r.size_matches),
            )?;
            Ok(u64::from(!r.contained) + u64::from(!r.size_matches))
        }
    }
}

// --- classical ---

struct ClassicalArgs {
    task: ClassicalTask,
    spec: Option<String>,
    desc: Option<String>,
    with: Option<String>,
    blocks: Option<String>,
    family: Option<String>,
    n: Option<u64>,
    s: Option<u64>,
    s2: Option<u64>,
    eps: Option<String>,
}

fn cmd_classical<W: Write>(emitter: &mut Emitter<W>, args: &ClassicalArgs) -> Result<u64> {
    match args.task {
        ClassicalTask::Exponents => {
            let pairs = parse_blocks(require(args.blocks.as_deref(), "--blocks")?)?;
            // The descriptor constructor validates the block list; the tag
            // and complement play no part in the exponents.
            let desc = JordanDescriptor::new(classical::EigenTag::Generic, &pairs, 0)?;
            let blocks = desc.block_map();
            let g_window = symplectic_exponent_window(blocks);
            let h_window = orthogonal_exponent_window(blocks);
            emitter.emit(
                &Record::new()
                    .str("blocks", desc.to_string())
                    .int("f", linear_exponent(blocks))
                    .int("g", symplectic_exponent(blocks))
                    .int("h", orthogonal_exponent(blocks))
                    .str("g_even_lo", g_window.lo.to_string())
                    .str("g_even_hi", g_window.hi.to_string())
                    .str("h_even_lo", h_window.lo.to_string())
                    .str("h_even_hi", h_window.hi.to_string()),
            )?;
            Ok(0)
        }
        ClassicalTask::Bounds => {
            let spec = parse_group_spec(require(args.spec.as_deref(), "--spec")?)?;
            let s = require(args.s, "--s")?;
            let window = class_size_exponents(&spec, s)?;
            emitter.emit(
                &Record::new()
                    .str("spec", spec.to_string())
                    .int("s", s)
                    .str("lo", window.lo.to_string())
                    .str("hi", window.hi.to_string())
                    .bool("constant_caveat", window.constant_caveat),
            )?;
            Ok(0)
        }
        ClassicalTask::Star => {
            let (spec1, x1) = parse_descriptor(require(args.desc.as_deref(), "--desc")?)?;
            let (spec2, x2) = parse_descriptor(require(args.with.as_deref(), "--with")?)?;
            if spec1 != spec2 {
                return Err(Error::InvalidArgument(format!(
                    "descriptors live in different groups: {spec1} vs {spec2}"
                )));
            }
            match args.eps.as_deref() {
                None => {
                    let y = classical::star(&x1, &x2)?;
                    emitter.emit(
                        &Record::new()
                            .str("spec", spec1.to_string())
                            .str("x1", x1.to_string())
                            .str("x2", x2.to_string())
                            .str("star", classical::format_descriptor(&spec1, &y))
                            .int("s1", x1.support())
                            .int("s2", x2.support())
                            .int("star_support", y.support()),
                    )?;
                    Ok(0)
                }
                Some(text) => {
                    let eps = parse_eps(text)?;
                    let v = star_expansion_verdict(&spec1, &x1, &x2, eps)?;
                    emitter.emit(
                        &Record::new()
                            .str("spec", spec1.to_string())
                            .str("x1", x1.to_string())
                            .str("x2", x2.to_string())
                            .str("star", classical::format_descriptor(&spec1, &v.product))
                            .int("s1", v.s1)
                            .int("s2", v.s2)
                            .int("star_support", v.product.support())
                            .str("eps", eps.to_string())
                            .str("win_lo", v.product_window.lo.to_string())
                            .str("win_hi", v.product_window.hi.to_string())
                            .bool("exponent_ok", v.exponent_inequality)
                            .bool("ratio_ok", v.ratio_holds),
                    )?;
                    Ok(u64::from(!v.exponent_inequality) + u64::from(!v.ratio_holds))
                }
            }
        }
        ClassicalTask::Dims => {
            let token = require(args.family.as_deref(), "--family")?;
            let family = ClassicalFamily::from_token(token).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown family {token:?} (expected L, U, Sp, O+, O-)"
                ))
            })?;
            let n = require(args.n, "--n")?;
            let s = require(args.s, "--s")?;
            let window = class_dimension_bounds(family, n, s)?;
            let mut record = Record::new()
                .str("family", family.token())
                .int("n", n)
                .int("s", s)
                .str("lo", window.lo.to_string())
                .str("hi", window.hi.to_string());
            let mut violations = 0;
            if let Some(s2) = args.s2 {
                let eps = parse_eps(require(args.eps.as_deref(), "--eps")?)?;
                let certified = dimension_expansion_certified(family, n, s, s2, eps)?;
                record = record
                    .int("s2", s2)
                    .str("eps", eps.to_string())
                    .bool("certified", certified);
                violations += u64::from(!certified);
            }
            emitter.emit(&record)?;
            Ok(violations)
        }
    }
}
