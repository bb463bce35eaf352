//! Exact arithmetic for conjugacy classes in symmetric, alternating, and
//! small classical groups.
//!
//! Everything here is computed over the integers and rationals; there is no
//! floating point anywhere in the crate. Quantities that are genuinely
//! irrational (Stirling enclosures, fractional powers, the class zeta
//! function at non-integer arguments) are returned as certified rational
//! intervals with outward rounding, so every reported bound is a true bound.
//!
//! The crate is organized around four kinds of objects:
//!
//! - [`cycle`]: cycle types of permutations (integer partitions with
//!   multiplicity bookkeeping), exact class sizes in `S_n` and `A_n`, and the
//!   star product of disjoint-support class representatives.
//! - [`sym`]: the bound suite for symmetric-group classes: two-sided class
//!   size bounds, Stirling enclosures, product-ratio lower bounds, the
//!   small-class support threshold, expansion verdicts, and the class zeta
//!   function.
//! - [`classical`]: the support/exponent calculus for classical matrix
//!   groups: Jordan block descriptors, centralizer exponents, class size and
//!   dimension windows, and the classical star product.
//! - [`oracle`]: brute-force snapshots of small groups (symmetric,
//!   alternating, and matrix groups over small prime fields) used to verify
//!   every formula above by exhaustive enumeration.
//!
//! The `classex` binary exposes the same operations as subcommands; see the
//! repository README or `classex --help`.

pub mod classical;
pub mod cli;
pub mod cycle;
pub mod enclosure;
pub mod error;
pub mod oracle;
pub mod report;
pub mod sym;

pub use error::{Error, Result};
