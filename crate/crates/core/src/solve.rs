//! Unified solver facade and algorithm tags.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classical::{cipolla, peralta_one, peralta_two, tonelli_shanks};
use crate::curve::{sqrt_curve_basic, sqrt_curve_cipolla, sqrt_curve_enhanced, sqrt_curve_tonelli};
use crate::direct::sqrt_direct;
use crate::error::{Error, Result};
use crate::field::{FieldElement, SqrtOutcome};
use crate::jacobi::SearchStrategy;

/// Every solver the crate ships, by CLI tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    /// Direct exponentiation; valid for e <= 2 only.
    Direct,
    /// Tonelli-Shanks with random non-residue search.
    Tonelli,
    /// Tonelli-Shanks searching small primes with the reciprocity symbol.
    TonelliQr,
    Cipolla,
    PeraltaOne,
    PeraltaTwo,
    CurveBasic,
    CurveEnhanced,
    CurveTonelli,
    CurveCipolla,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Direct => "direct",
            Algorithm::Tonelli => "tonelli",
            Algorithm::TonelliQr => "tonelli-qr",
            Algorithm::Cipolla => "cipolla",
            Algorithm::PeraltaOne => "peralta1",
            Algorithm::PeraltaTwo => "peralta2",
            Algorithm::CurveBasic => "curve-basic",
            Algorithm::CurveEnhanced => "curve-enhanced",
            Algorithm::CurveTonelli => "curve-tonelli",
            Algorithm::CurveCipolla => "curve-cipolla",
        }
    }

    pub fn all() -> [Algorithm; 10] {
        [
            Algorithm::Direct,
            Algorithm::Tonelli,
            Algorithm::TonelliQr,
            Algorithm::Cipolla,
            Algorithm::PeraltaOne,
            Algorithm::PeraltaTwo,
            Algorithm::CurveBasic,
            Algorithm::CurveEnhanced,
            Algorithm::CurveTonelli,
            Algorithm::CurveCipolla,
        ]
    }

    /// The five algorithms the timing table compares.
    pub fn benchmark_set() -> Vec<Algorithm> {
        vec![
            Algorithm::Tonelli,
            Algorithm::TonelliQr,
            Algorithm::Cipolla,
            Algorithm::PeraltaOne,
            Algorithm::CurveEnhanced,
        ]
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::all()
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::InvalidPlan(format!("unknown algorithm tag `{s}`")))
    }
}

/// Runs the requested solver, or routes automatically when `algorithm` is
/// `None`: zero maps to zero, e <= 2 goes to the direct formulas, and
/// everything else to the enhanced curve solver. Non-residues are rejected
/// uniformly.
pub fn solve<R: Rng + ?Sized>(
    a: &FieldElement,
    algorithm: Option<Algorithm>,
    rng: &mut R,
) -> Result<SqrtOutcome> {
    match algorithm {
        None => {
            if a.is_zero() {
                return Ok(SqrtOutcome::new(a.clone(), 0, Algorithm::Direct));
            }
            if a.context().two_adic_valuation() <= 2 {
                sqrt_direct(a)
            } else {
                sqrt_curve_enhanced(a, rng)
            }
        }
        Some(Algorithm::Direct) => sqrt_direct(a),
        Some(Algorithm::Tonelli) => tonelli_shanks(a, SearchStrategy::Random, rng),
        Some(Algorithm::TonelliQr) => tonelli_shanks(a, SearchStrategy::Sequential, rng),
        Some(Algorithm::Cipolla) => cipolla(a, rng),
        Some(Algorithm::PeraltaOne) => peralta_one(a, rng),
        Some(Algorithm::PeraltaTwo) => peralta_two(a, rng),
        Some(Algorithm::CurveBasic) => sqrt_curve_basic(a, rng),
        Some(Algorithm::CurveEnhanced) => sqrt_curve_enhanced(a, rng),
        Some(Algorithm::CurveTonelli) => sqrt_curve_tonelli(a, rng),
        Some(Algorithm::CurveCipolla) => sqrt_curve_cipolla(a, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeContext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::from_u64(p).unwrap()
    }

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    #[test]
    fn tags_round_trip() {
        for alg in Algorithm::all() {
            assert_eq!(alg.tag().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("nope".parse::<Algorithm>().is_err());
    }

    #[test]
    fn auto_routes_by_valuation() {
        let c = ctx(7);
        let out = solve(&c.element(2u32), None, &mut rng(0)).unwrap();
        assert_eq!(out.root, c.element(3u32));
        assert_eq!(out.algorithm, Algorithm::Direct);

        let c = ctx(2017);
        let out = solve(&c.element(2u32), None, &mut rng(0)).unwrap();
        assert_eq!(out.root, c.element(986u32));
        assert_eq!(out.algorithm, Algorithm::CurveEnhanced);

        let out = solve(&c.zero(), None, &mut rng(0)).unwrap();
        assert!(out.root.is_zero());
    }

    #[test]
    fn worked_example_via_tag() {
        let c = ctx(2017);
        let out = solve(&c.element(2u32), Some(Algorithm::CurveCipolla), &mut rng(1)).unwrap();
        assert_eq!(out.root, c.element(986u32));
    }

    #[test]
    fn nonresidue_rejected_for_every_tag() {
        let c = ctx(13);
        let five = c.element(5u32);
        for alg in Algorithm::all() {
            assert_eq!(
                solve(&five, Some(alg), &mut rng(2)).unwrap_err(),
                Error::NonResidue,
                "{alg}"
            );
        }
    }

    #[test]
    fn direct_forced_at_high_valuation_fails() {
        let c = ctx(2017);
        assert_eq!(
            solve(&c.element(2u32), Some(Algorithm::Direct), &mut rng(3)).unwrap_err(),
            Error::WrongValuation
        );
    }
}
