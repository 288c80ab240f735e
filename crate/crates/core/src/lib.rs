//! Square roots modulo an odd prime.
//!
//! The crate implements every practical solver around the same field core:
//! the direct formulas for p = 3 (mod 4) and p = 5 (mod 8), Tonelli-Shanks
//! (with random or reciprocity-driven non-residue search), Cipolla in
//! F_p[w]/(w^2 - d), Peralta's two ring variants, and four solvers that read
//! the root off 4-torsion points of the singular cubic y^2 = x(x+a)^2.
//! A trial harness generates primes with a prescribed 2-adic valuation,
//! replays seeded experiments, and summarizes success rates and timings.
//!
//! Every returned root is canonical: the smaller element of {x, p - x}.

pub mod classical;
pub mod curve;
pub mod direct;
pub mod error;
pub mod field;
pub mod harness;
pub mod jacobi;
pub mod prime;
pub mod ring;
pub mod solve;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeContext, SqrtOutcome};
pub use jacobi::{find_nonresidue, jacobi, SearchStrategy};
pub use solve::{solve, Algorithm};

use num_bigint::BigUint;
use num_traits::Num;

/// Probabilistic loops abort after this many unsuccessful trials; under the
/// 1/2-per-trial success bounds the abort probability is below 2^-128.
pub const RETRY_LIMIT: u32 = 128;

/// Parses a nonnegative integer from decimal or 0x-prefixed lowercase hex.
pub fn parse_integer(text: &str) -> Result<BigUint> {
    let text = text.trim();
    let parsed = if let Some(hex) = text.strip_prefix("0x") {
        BigUint::from_str_radix(hex, 16)
    } else {
        BigUint::from_str_radix(text, 10)
    };
    parsed.map_err(|e| Error::Serialization(format!("bad integer literal: {e}")))
}
