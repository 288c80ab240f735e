//! Primality testing and random prime generation with a prescribed
//! 2-adic valuation of p - 1.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::field::PrimeContext;

/// Miller-Rabin round count; composite acceptance probability < 4^-40 = 2^-80.
const MR_ROUNDS: u32 = 40;

/// Fixed key for the base stream of the Miller-Rabin test, so that primality
/// verdicts are reproducible across runs.
const MR_SEED: [u8; 32] = *b"modsqrt.miller-rabin.base.str\0\0\0";

/// Candidates examined per requested bit of the prime before giving up.
const CANDIDATES_PER_BIT: u32 = 64;

/// Unbounded stream of primes 2, 3, 5, 7, ... by trial division.
pub struct SmallPrimes {
    found: Vec<u64>,
    next: u64,
}

impl SmallPrimes {
    pub fn new() -> Self {
        SmallPrimes { found: Vec::new(), next: 2 }
    }
}

impl Default for SmallPrimes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for SmallPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next = if c == 2 { 3 } else { c + 2 };
            let composite = self
                .found
                .iter()
                .take_while(|&&q| q * q <= c)
                .any(|&q| c % q == 0);
            if !composite {
                self.found.push(c);
                return Some(c);
            }
        }
    }
}

/// All primes strictly below `limit`.
pub fn small_primes_below(limit: u64) -> Vec<u64> {
    SmallPrimes::new().take_while(|&q| q < limit).collect()
}

/// Probabilistic primality test. Exact for n < 10^6 (full trial division);
/// otherwise Miller-Rabin with [`MR_ROUNDS`] pseudo-random bases.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for q in SmallPrimes::new().take_while(|&q| q < 1000) {
        let q = BigUint::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    if *n < BigUint::from(1_000_000u32) {
        // trial division above already covers sqrt(n)
        return true;
    }

    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;

    let mut rng = ChaCha20Rng::from_seed(MR_SEED);
    'rounds: for _ in 0..MR_ROUNDS {
        let base = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = base.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

/// Random prime with exactly `bits` bits and p - 1 = 2^e * m for odd m,
/// i.e. 2-adic valuation of p - 1 equal to `e` exactly.
pub fn gen_prime_with_valuation<R: Rng + ?Sized>(
    bits: u32,
    e: u32,
    rng: &mut R,
) -> Result<PrimeContext> {
    if bits < 8 || e < 1 || e > bits - 2 {
        return Err(Error::BadParameter);
    }
    let lo_p = BigUint::one() << (bits - 1) as usize;
    let hi_p = (BigUint::one() << bits as usize) - 1u32;
    // p = m * 2^e + 1 must land in [lo_p, hi_p]
    let m_lo = (&lo_p - 1u32 + ((BigUint::one() << e as usize) - 1u32)) >> e as usize;
    let m_lo = if m_lo.is_zero() { BigUint::one() } else { m_lo };
    let m_hi = (&hi_p - 1u32) >> e as usize;
    if m_lo > m_hi {
        return Err(Error::BadParameter);
    }

    let budget = CANDIDATES_PER_BIT.saturating_mul(bits);
    let upper = &m_hi + 1u32;
    for _ in 0..budget {
        let mut m = rng.gen_biguint_range(&m_lo, &upper);
        m.set_bit(0, true);
        if m > m_hi {
            continue;
        }
        let p = (&m << e as usize) + 1u32;
        if is_probable_prime(&p) {
            let ctx = PrimeContext::new(p)?;
            debug_assert_eq!(ctx.two_adic_valuation(), e);
            return Ok(ctx);
        }
    }
    Err(Error::GenerationFailed(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_prime_stream() {
        let ps = small_primes_below(30);
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn primality_exact_small() {
        assert!(is_probable_prime(&BigUint::from(2017u32)));
        assert!(is_probable_prime(&BigUint::from(2u32)));
        assert!(!is_probable_prime(&BigUint::from(2016u32)));
        assert!(!is_probable_prime(&BigUint::from(1u32)));
        // Carmichael number
        assert!(!is_probable_prime(&BigUint::from(561u32)));
    }

    #[test]
    fn primality_large_known() {
        // 2^61 - 1 is a Mersenne prime; its square is composite.
        let m61 = (BigUint::one() << 61usize) - 1u32;
        assert!(is_probable_prime(&m61));
        assert!(!is_probable_prime(&(&m61 * &m61)));
    }

    #[test]
    fn generated_prime_has_requested_valuation() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for &(bits, e) in &[(11u32, 5u32), (16, 2), (32, 1), (48, 6)] {
            let ctx = gen_prime_with_valuation(bits, e, &mut rng).unwrap();
            assert_eq!(ctx.two_adic_valuation(), e);
            assert!(ctx.odd_part().bit(0));
            assert_eq!(ctx.modulus().bits(), bits as u64);
        }
    }

    #[test]
    fn eleven_bit_e5_can_hit_2017() {
        // the (bits=11, e=5) cell ranges over p = 32m + 1 in [1057, 2017]
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let mut seen_2017 = false;
        for _ in 0..256 {
            let ctx = gen_prime_with_valuation(11, 5, &mut rng).unwrap();
            let p: u64 = ctx.modulus().try_into().unwrap();
            assert!((1024..2048).contains(&p));
            if p == 2017 {
                seen_2017 = true;
            }
        }
        assert!(seen_2017);
    }

    #[test]
    fn valuation_one_means_3_mod_4() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..16 {
            let ctx = gen_prime_with_valuation(12, 1, &mut rng).unwrap();
            let p: u64 = ctx.modulus().try_into().unwrap();
            assert_eq!(p % 4, 3);
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        assert_eq!(gen_prime_with_valuation(7, 1, &mut rng), Err(Error::BadParameter));
        assert_eq!(gen_prime_with_valuation(8, 7, &mut rng), Err(Error::BadParameter));
        assert_eq!(gen_prime_with_valuation(8, 0, &mut rng), Err(Error::BadParameter));
    }
}
