//! Closed-form square roots for p = 3 (mod 4) and p = 5 (mod 8), and an
//! exhaustive-scan oracle for small moduli.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{FieldElement, SqrtOutcome};
use crate::solve::Algorithm;

/// Largest modulus the exhaustive scan will accept.
const SCAN_BOUND: u64 = 1 << 20;

/// Square root by direct exponentiation. Only valid when the 2-adic
/// valuation e of p - 1 is 1 or 2:
///
/// * e = 1: a^((p+1)/4)
/// * e = 2: a^((p+3)/8) when a^((p-1)/4) = 1, otherwise 2a * (4a)^((p-5)/8)
pub fn sqrt_direct(a: &FieldElement) -> Result<SqrtOutcome> {
    let ctx = a.context();
    if a.is_zero() {
        return Ok(SqrtOutcome::new(a.clone(), 0, Algorithm::Direct));
    }
    if a.legendre() == -1 {
        return Err(Error::NonResidue);
    }
    let p = ctx.modulus();
    let root = match ctx.two_adic_valuation() {
        1 => a.pow(&((p + 1u32) >> 2)),
        2 => {
            let probe = a.pow(&((p - 1u32) >> 2));
            if probe.is_one() {
                a.pow(&((p + 3u32) >> 3))
            } else {
                let two = ctx.element(2u32);
                let four_a = &ctx.element(4u32) * a;
                &(&two * a) * &four_a.pow(&((p - 5u32) >> 3))
            }
        }
        _ => return Err(Error::WrongValuation),
    };
    debug_assert_eq!(root.square(), *a);
    Ok(SqrtOutcome::new(root, 0, Algorithm::Direct))
}

/// Every x in [0, p) with x^2 = a, by exhaustive scan. Intended as an
/// independent oracle for the real solvers; refuses p > 2^20.
pub fn brute_force_sqrt(a: &FieldElement) -> Result<Vec<FieldElement>> {
    let ctx = a.context();
    let p = match ctx.modulus().to_u64() {
        Some(p) if p <= SCAN_BOUND => p,
        _ => return Err(Error::ModulusTooLarge),
    };
    let target = a.value().to_u64().expect("reduced value fits");
    let mut roots = Vec::new();
    for x in 0..p {
        if x * x % p == target {
            roots.push(ctx.element(x));
        }
    }
    Ok(roots)
}
