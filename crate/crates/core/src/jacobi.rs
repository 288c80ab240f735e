//! Jacobi symbol via binary reciprocity, and quadratic non-residue search.
//!
//! The symbol implementation is independent of the Euler-criterion path in
//! [`FieldElement::legendre`](crate::field::FieldElement::legendre); the two
//! cross-check each other in the test suite.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeContext};
use crate::prime::SmallPrimes;
use crate::RETRY_LIMIT;

/// Jacobi symbol (a/n) for odd n >= 3. Agrees with the Legendre symbol when
/// n is prime.
///
/// ```
/// use num_bigint::BigUint;
/// use modsqrt::jacobi;
/// let n = BigUint::from(9907u32);
/// assert_eq!(jacobi(&BigUint::from(1001u32), &n), -1);
/// ```
pub fn jacobi(a: &BigUint, n: &BigUint) -> i8 {
    assert!(
        n.bit(0) && *n >= BigUint::from(3u32),
        "jacobi denominator must be an odd integer >= 3"
    );
    let mut a = a % n;
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let z = a.trailing_zeros().expect("a != 0");
        a >>= z;
        // (2/n) = -1 exactly when n = 3, 5 (mod 8)
        if z % 2 == 1 && n.bit(0) && (n.bit(1) != n.bit(2)) {
            t = -t;
        }
        // reciprocity: flip when both are 3 (mod 4)
        if a.bit(0) && a.bit(1) && n.bit(1) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// How the non-residue search picks its candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Uniform draws from [2, p - 1], capped at [`RETRY_LIMIT`] trials.
    Random,
    /// Primes 2, 3, 5, 7, ... tested with the Jacobi symbol.
    Sequential,
}

/// Finds n with legendre(n) = -1.
pub fn find_nonresidue<R: Rng + ?Sized>(
    ctx: &PrimeContext,
    strategy: SearchStrategy,
    rng: &mut R,
) -> Result<FieldElement> {
    find_nonresidue_counted(ctx, strategy, rng).map(|(n, _)| n)
}

/// Same as [`find_nonresidue`] but also reports how many candidates failed
/// before the hit.
pub(crate) fn find_nonresidue_counted<R: Rng + ?Sized>(
    ctx: &PrimeContext,
    strategy: SearchStrategy,
    rng: &mut R,
) -> Result<(FieldElement, u32)> {
    let p = ctx.modulus();
    match strategy {
        SearchStrategy::Random => {
            let lo = BigUint::from(2u32);
            for attempt in 0..RETRY_LIMIT {
                let n = ctx.element(rng.gen_biguint_range(&lo, p));
                if n.legendre() == -1 {
                    return Ok((n, attempt));
                }
            }
            Err(Error::RetryLimitExceeded(RETRY_LIMIT))
        }
        SearchStrategy::Sequential => {
            // The least non-residue is prime and smaller than p, so this
            // terminates for every odd prime p.
            let mut failures = 0u32;
            for q in SmallPrimes::new() {
                let q = BigUint::from(q);
                if q >= *p {
                    break;
                }
                if jacobi(&q, p) == -1 {
                    return Ok((ctx.element(q), failures));
                }
                failures += 1;
            }
            Err(Error::RetryLimitExceeded(RETRY_LIMIT))
        }
    }
}
