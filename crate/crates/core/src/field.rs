//! Arbitrary-precision prime-field arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::prime::is_probable_prime;
use crate::solve::Algorithm;

/// An odd prime p together with the decomposition p - 1 = 2^e * m, m odd.
///
/// Construction validates primality probabilistically (error below 2^-80).
/// Clones are cheap and share storage; a context is immutable and safe to
/// share across threads.
#[derive(Clone)]
pub struct PrimeContext {
    inner: Arc<Inner>,
}

struct Inner {
    p: BigUint,
    e: u32,
    m: BigUint,
}

impl PrimeContext {
    /// Validates that `p` is an odd prime >= 3 and splits p - 1 into its
    /// 2-power and odd parts.
    pub fn new(p: BigUint) -> Result<Self> {
        if p < BigUint::from(3u32) || !p.bit(0) || !is_probable_prime(&p) {
            return Err(Error::CompositeModulus);
        }
        let pm1 = &p - 1u32;
        let e = pm1.trailing_zeros().expect("p - 1 > 0") as u32;
        let m = &pm1 >> e as usize;
        Ok(PrimeContext {
            inner: Arc::new(Inner { p, e, m }),
        })
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub fn modulus(&self) -> &BigUint {
        &self.inner.p
    }

    /// e in p - 1 = 2^e * m.
    pub fn two_adic_valuation(&self) -> u32 {
        self.inner.e
    }

    /// The odd cofactor m in p - 1 = 2^e * m.
    pub fn odd_part(&self) -> &BigUint {
        &self.inner.m
    }

    /// Residue of `value` mod p.
    pub fn element<T: Into<BigUint>>(&self, value: T) -> FieldElement {
        let v = value.into() % self.modulus();
        FieldElement {
            value: v,
            ctx: self.clone(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(BigUint::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.element(BigUint::one())
    }

    /// Uniform draw from [0, p), or [1, p) when `nonzero` is set.
    /// Reproducible for a given rng state.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, nonzero: bool) -> FieldElement {
        loop {
            let v = rng.gen_biguint_below(self.modulus());
            if nonzero && v.is_zero() {
                continue;
            }
            return FieldElement {
                value: v,
                ctx: self.clone(),
            };
        }
    }

    /// True when both contexts describe the same prime.
    pub fn same(&self, other: &PrimeContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.p == other.inner.p
    }
}

impl fmt::Debug for PrimeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PrimeContext {{ p: {}, e: {}, m: {} }}",
            self.inner.p, self.inner.e, self.inner.m
        )
    }
}

impl PartialEq for PrimeContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for PrimeContext {}

/// A residue in [0, p). Reduction is handled internally; callers never see
/// an unreduced value.
#[derive(Clone)]
pub struct FieldElement {
    value: BigUint,
    ctx: PrimeContext,
}

impl FieldElement {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    fn lift(&self, value: BigUint) -> FieldElement {
        FieldElement {
            value,
            ctx: self.ctx.clone(),
        }
    }

    fn check_same(&self, other: &FieldElement) {
        assert!(
            self.ctx.same(&other.ctx),
            "field elements from different moduli"
        );
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn double(&self) -> FieldElement {
        self + self
    }

    /// self^exponent by square-and-multiply; work is linear in the exponent's
    /// bit length.
    pub fn pow(&self, exponent: &BigUint) -> FieldElement {
        self.lift(self.value.modpow(exponent, self.ctx.modulus()))
    }

    pub fn pow_u64(&self, exponent: u64) -> FieldElement {
        self.pow(&BigUint::from(exponent))
    }

    /// Multiplicative inverse via Fermat; zero has none.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(&(self.ctx.modulus() - 2u32)))
    }

    /// Legendre symbol: 0 for zero, +1 for nonzero squares, -1 otherwise.
    /// Computed as a^((p-1)/2) with p - 1 mapped to -1.
    pub fn legendre(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let exp = (self.ctx.modulus() - 1u32) >> 1;
        let r = self.value.modpow(&exp, self.ctx.modulus());
        if r.is_one() {
            1
        } else {
            debug_assert_eq!(r, self.ctx.modulus() - 1u32);
            -1
        }
    }

    /// Canonical representative of the pair {x, p - x}: the smaller one.
    pub fn canonical(&self) -> FieldElement {
        let other = self.ctx.modulus() - &self.value;
        if self.value <= other {
            self.clone()
        } else {
            self.lift(other)
        }
    }

    /// Lowercase hexadecimal text, no leading zeros.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.ctx.modulus())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        let mut v = &self.value + &rhs.value;
        if v >= *self.ctx.modulus() {
            v -= self.ctx.modulus();
        }
        self.lift(v)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        let v = if self.value >= rhs.value {
            &self.value - &rhs.value
        } else {
            self.ctx.modulus() - &rhs.value + &self.value
        };
        self.lift(v)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        self.lift(&self.value * &rhs.value % self.ctx.modulus())
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        if self.value.is_zero() {
            self.clone()
        } else {
            self.lift(self.ctx.modulus() - &self.value)
        }
    }
}

/// Result of a square-root computation: the canonical root (root <= p - root),
/// how many times the solver had to resample, and which algorithm produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtOutcome {
    pub root: FieldElement,
    pub retries: u32,
    pub algorithm: Algorithm,
}

impl SqrtOutcome {
    pub(crate) fn new(root: FieldElement, retries: u32, algorithm: Algorithm) -> Self {
        let root = root.canonical();
        SqrtOutcome {
            root,
            retries,
            algorithm,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::from_u64(p).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx(2017);
        assert_eq!(c.two_adic_valuation(), 5);
        assert_eq!(*c.odd_part(), BigUint::from(63u32));
        let c = ctx(17);
        assert_eq!((c.two_adic_valuation(), c.odd_part().clone()), (4, BigUint::one()));
        let c = ctx(41);
        assert_eq!((c.two_adic_valuation(), c.odd_part().clone()), (3, BigUint::from(5u32)));
    }

    #[test]
    fn decomposition_consistency() {
        for p in [3u64, 5, 7, 13, 97, 2017, 65537] {
            let c = ctx(p);
            let rebuilt = (c.odd_part() << c.two_adic_valuation() as usize) + 1u32;
            assert_eq!(rebuilt, *c.modulus());
            assert!(c.odd_part().bit(0));
        }
    }

    #[test]
    fn rejects_composites_and_evens() {
        assert_eq!(PrimeContext::from_u64(15).unwrap_err(), Error::CompositeModulus);
        assert_eq!(PrimeContext::from_u64(2).unwrap_err(), Error::CompositeModulus);
        assert_eq!(PrimeContext::from_u64(1).unwrap_err(), Error::CompositeModulus);
        assert_eq!(PrimeContext::from_u64(561).unwrap_err(), Error::CompositeModulus);
    }

    #[test]
    fn mod_pow_examples() {
        let c = ctx(17);
        assert_eq!(c.element(3u32).pow_u64(8), c.element(16u32));
        let c = ctx(2017);
        assert_eq!(c.element(2u32).pow_u64(1008), c.one());
        let c = ctx(13);
        assert_eq!(c.element(7u32).pow_u64(0), c.one());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(ctx(2017).element(0u32).legendre(), 0);
        assert_eq!(ctx(2017).element(2u32).legendre(), 1);
        assert_eq!(ctx(7).element(3u32).legendre(), -1);
    }

    #[test]
    fn arithmetic_basics() {
        let c = ctx(13);
        let a = c.element(9u32);
        let b = c.element(7u32);
        assert_eq!(&a + &b, c.element(3u32));
        assert_eq!(&a - &b, c.element(2u32));
        assert_eq!(&b - &a, c.element(11u32));
        assert_eq!(&a * &b, c.element(11u32));
        assert_eq!(-&a, c.element(4u32));
        assert_eq!(&a * &a.inv().unwrap(), c.one());
        assert!(c.zero().inv().is_err());
    }

    #[test]
    fn canonical_picks_smaller_of_pair() {
        let c = ctx(2017);
        assert_eq!(c.element(1031u32).canonical(), c.element(986u32));
        assert_eq!(c.element(986u32).canonical(), c.element(986u32));
        assert_eq!(c.zero().canonical(), c.zero());
    }

    #[test]
    fn sampling_is_reproducible_and_respects_nonzero() {
        let c = ctx(17);
        let mut r1 = ChaCha20Rng::seed_from_u64(99);
        let mut r2 = ChaCha20Rng::seed_from_u64(99);
        let a1: Vec<_> = (0..20).map(|_| c.sample(&mut r1, false)).collect();
        let a2: Vec<_> = (0..20).map(|_| c.sample(&mut r2, false)).collect();
        assert_eq!(a1, a2);
        let mut r3 = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..200 {
            assert!(!c.sample(&mut r3, true).is_zero());
        }
    }

    #[test]
    fn sampling_is_close_to_uniform() {
        // 10^4 draws at p = 17; each residue count within 5 sigma of n/17
        let c = ctx(17);
        let mut rng = ChaCha20Rng::seed_from_u64(424242);
        let n = 10_000usize;
        let mut counts = [0usize; 17];
        for _ in 0..n {
            let v: u64 = c.sample(&mut rng, false).value().try_into().unwrap();
            counts[v as usize] += 1;
        }
        let q = 1.0 / 17.0;
        let mean = n as f64 * q;
        let sigma = (n as f64 * q * (1.0 - q)).sqrt();
        for (v, &count) in counts.iter().enumerate() {
            let dev = (count as f64 - mean).abs();
            assert!(dev < 5.0 * sigma, "residue {v} count {count} off by {dev}");
        }
    }

    #[test]
    fn text_forms() {
        let c = ctx(2017);
        let x = c.element(255u32);
        assert_eq!(x.to_string(), "255");
        assert_eq!(x.to_hex(), "ff");
    }
}
