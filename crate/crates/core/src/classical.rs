//! The classical probabilistic square-root algorithms: Tonelli-Shanks,
//! Cipolla, and Peralta's two variants.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeContext, SqrtOutcome};
use crate::jacobi::{find_nonresidue_counted, SearchStrategy};
use crate::ring::QuadRing;
use crate::solve::Algorithm;
use crate::RETRY_LIMIT;

/// Handles a = 0 and non-residues uniformly for every solver entry point.
pub(crate) fn residue_precheck(
    a: &FieldElement,
    algorithm: Algorithm,
) -> Result<Option<SqrtOutcome>> {
    if a.is_zero() {
        return Ok(Some(SqrtOutcome::new(a.clone(), 0, algorithm)));
    }
    if a.legendre() == -1 {
        return Err(Error::NonResidue);
    }
    Ok(None)
}

/// Least r >= 0 with z^r = b, where z generates the Sylow-2 subgroup
/// (order 2^e). The bits of r are fixed one at a time: with the low bits
/// of r settled, (b * z^-r)^(2^(e-1-k)) is +-1 and its sign is bit k.
pub fn sylow_dlog(b: &FieldElement, z: &FieldElement, ctx: &PrimeContext) -> Result<BigUint> {
    let e = ctx.two_adic_valuation();
    let one = ctx.one();
    let minus_one = -&one;
    let z_inv = z.inv().map_err(|_| Error::NotInSubgroup)?;
    let mut r = BigUint::zero();
    for k in 0..e {
        let q = b * &z_inv.pow(&r);
        let mut t = q;
        for _ in 0..(e - 1 - k) {
            t = t.square();
        }
        if t == minus_one {
            r.set_bit(k as u64, true);
        } else if t != one {
            return Err(Error::NotInSubgroup);
        }
    }
    if z.pow(&r) != *b {
        return Err(Error::NotInSubgroup);
    }
    Ok(r)
}

/// Enumeration cross-check for [`sylow_dlog`]; only sensible for small e.
pub fn sylow_dlog_naive(
    b: &FieldElement,
    z: &FieldElement,
    ctx: &PrimeContext,
) -> Result<BigUint> {
    let e = ctx.two_adic_valuation();
    assert!(e <= 20, "naive enumeration is capped at e <= 20");
    let mut acc = ctx.one();
    for r in 0..(1u64 << e) {
        if acc == *b {
            return Ok(BigUint::from(r));
        }
        acc = &acc * z;
    }
    Err(Error::NotInSubgroup)
}

/// Tonelli-Shanks. Finds a non-residue n (strategy-dependent), sets
/// z = n^m and b = a^m, solves b = z^r in the Sylow-2 subgroup, and returns
/// a^((m+1)/2) * z^(-r/2). The reported retries count failed non-residue
/// candidates.
pub fn tonelli_shanks<R: Rng + ?Sized>(
    a: &FieldElement,
    strategy: SearchStrategy,
    rng: &mut R,
) -> Result<SqrtOutcome> {
    let algorithm = match strategy {
        SearchStrategy::Random => Algorithm::Tonelli,
        SearchStrategy::Sequential => Algorithm::TonelliQr,
    };
    if let Some(out) = residue_precheck(a, algorithm)? {
        return Ok(out);
    }
    let ctx = a.context().clone();
    let m = ctx.odd_part();
    let (n, retries) = find_nonresidue_counted(&ctx, strategy, rng)?;
    let z = n.pow(m);
    let b = a.pow(m);
    let r = sylow_dlog(&b, &z, &ctx)?;
    // a is a residue, so b = a^m is an even power of the generator z
    if r.bit(0) {
        return Err(Error::InternalInvariantViolation(
            "odd sylow discrete log for a quadratic residue",
        ));
    }
    let half_r: BigUint = &r >> 1;
    let mut x = a.pow(&((m + 1u32) >> 1));
    if !half_r.is_zero() {
        // z has order 2^e, so z^(-r/2) = z^(2^e - r/2)
        let exp = (BigUint::one() << ctx.two_adic_valuation() as usize) - &half_r;
        x = &x * &z.pow(&exp);
    }
    debug_assert_eq!(x.square(), *a);
    Ok(SqrtOutcome::new(x, retries, algorithm))
}

/// Cipolla. Samples t until t^2 - a is a non-residue, then reads the root
/// off (t + w)^((p+1)/2) in F_p[w]/(w^2 - (t^2 - a)).
pub fn cipolla<R: Rng + ?Sized>(a: &FieldElement, rng: &mut R) -> Result<SqrtOutcome> {
    if let Some(out) = residue_precheck(a, Algorithm::Cipolla)? {
        return Ok(out);
    }
    let ctx = a.context().clone();
    let exp = (ctx.modulus() + 1u32) >> 1;
    for attempt in 0..RETRY_LIMIT {
        let t = ctx.sample(rng, false);
        let d = &t.square() - a;
        if d.legendre() != -1 {
            continue;
        }
        let ring = QuadRing::new(d)?;
        let x = ring.element(t, ctx.one()).pow(&exp);
        if !x.c1().is_zero() {
            return Err(Error::InternalInvariantViolation(
                "cipolla power has a w component",
            ));
        }
        let root = x.c0().clone();
        debug_assert_eq!(root.square(), *a);
        return Ok(SqrtOutcome::new(root, attempt, Algorithm::Cipolla));
    }
    Err(Error::RetryLimitExceeded(RETRY_LIMIT))
}

/// Peralta's first variant. Samples r in [1, p-1]; r with r^2 = a is the
/// answer outright, otherwise the root is v^-1 whenever
/// (r + w)^((p-1)/2) = 0 + v w over w^2 = a.
pub fn peralta_one<R: Rng + ?Sized>(a: &FieldElement, rng: &mut R) -> Result<SqrtOutcome> {
    if let Some(out) = residue_precheck(a, Algorithm::PeraltaOne)? {
        return Ok(out);
    }
    let ctx = a.context().clone();
    let ring = QuadRing::new(a.clone())?;
    let exp = (ctx.modulus() - 1u32) >> 1;
    for attempt in 0..RETRY_LIMIT {
        let r = ctx.sample(rng, true);
        if r.square() == *a {
            return Ok(SqrtOutcome::new(r, attempt, Algorithm::PeraltaOne));
        }
        let x = ring.element(r, ctx.one()).pow(&exp);
        if x.c0().is_zero() {
            let root = x.c1().inv()?;
            debug_assert_eq!(root.square(), *a);
            return Ok(SqrtOutcome::new(root, attempt, Algorithm::PeraltaOne));
        }
    }
    Err(Error::RetryLimitExceeded(RETRY_LIMIT))
}

/// Peralta's second variant, over w^2 = -a. Raises r + w to the odd part m,
/// then squares at most e times until the field component vanishes; the
/// predecessor k + l w yields the root k/l.
pub fn peralta_two<R: Rng + ?Sized>(a: &FieldElement, rng: &mut R) -> Result<SqrtOutcome> {
    if let Some(out) = residue_precheck(a, Algorithm::PeraltaTwo)? {
        return Ok(out);
    }
    let ctx = a.context().clone();
    let minus_a = -a;
    let ring = QuadRing::new(minus_a.clone())?;
    let m = ctx.odd_part();
    let e = ctx.two_adic_valuation();
    for attempt in 0..RETRY_LIMIT {
        let r = ctx.sample(rng, true);
        if r.square() == minus_a {
            continue; // r + w would be a zero divisor
        }
        let mut x = ring.element(r, ctx.one()).pow(m);
        if x.c0().is_zero() || x.c1().is_zero() {
            continue;
        }
        for _ in 0..e {
            let next = x.square();
            if next.c0().is_zero() {
                let root = x.c0() * &x.c1().inv()?;
                debug_assert_eq!(root.square(), *a);
                return Ok(SqrtOutcome::new(root, attempt, Algorithm::PeraltaTwo));
            }
            x = next;
        }
        // chain exhausted without a pure-w element; resample
    }
    Err(Error::RetryLimitExceeded(RETRY_LIMIT))
}
