//! Pinned fixtures for the solver microbenchmarks: primes of the sizes the
//! timing table uses, frozen so benchmark runs are comparable across
//! machines and sessions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use modsqrt::{parse_integer, FieldElement, PrimeContext};

/// 2017 = 2^5 * 63 + 1, the small worked-example prime (e = 5).
pub fn context_11bit() -> PrimeContext {
    PrimeContext::new(parse_integer("2017").unwrap()).unwrap()
}

/// A 256-bit prime with e = 4, generated once and frozen here.
pub fn context_256bit() -> PrimeContext {
    PrimeContext::new(
        parse_integer(PRIME_256_E4).expect("pinned prime literal"),
    )
    .expect("pinned 256-bit prime")
}

pub const PRIME_256_E4: &str =
    "73903885499784383469601213153901953299642324548931589716228950208166043622929";

/// A solvable instance a = s^2 for a seeded nonzero s.
pub fn sample_residue(ctx: &PrimeContext, rng: &mut impl Rng) -> FieldElement {
    ctx.sample(rng, true).square()
}

/// Deterministic rng for benchmark setup.
pub fn bench_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_primes_validate() {
        assert_eq!(context_11bit().two_adic_valuation(), 5);
        let ctx = context_256bit();
        assert_eq!(ctx.two_adic_valuation(), 4);
        assert_eq!(ctx.modulus().bits(), 256);
    }
}
