//! Arithmetic in R = F_p[w]/(w^2 - d).
//!
//! For d a non-residue R is the field with p^2 elements; for d a nonzero
//! residue it is a ring with zero divisors. Both regimes share the same
//! arithmetic, and products of zero divisors are ordinary ring values.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeContext};

/// Descriptor of F_p[w]/(w^2 - d) for a fixed nonzero d.
#[derive(Clone)]
pub struct QuadRing {
    inner: Arc<RingInner>,
}

struct RingInner {
    ctx: PrimeContext,
    d: FieldElement,
}

impl QuadRing {
    /// d = 0 would collapse the quotient to dual numbers and is rejected.
    pub fn new(d: FieldElement) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::BadParameter);
        }
        let ctx = d.context().clone();
        Ok(QuadRing {
            inner: Arc::new(RingInner { ctx, d }),
        })
    }

    pub fn context(&self) -> &PrimeContext {
        &self.inner.ctx
    }

    /// The value of w^2.
    pub fn d(&self) -> &FieldElement {
        &self.inner.d
    }

    pub fn element(&self, c0: FieldElement, c1: FieldElement) -> QuadElement {
        assert!(
            c0.context().same(self.context()) && c1.context().same(self.context()),
            "components from a different field"
        );
        QuadElement {
            c0,
            c1,
            ring: self.clone(),
        }
    }

    /// Embeds a base-field value as c + 0w.
    pub fn constant(&self, c: FieldElement) -> QuadElement {
        let zero = self.context().zero();
        self.element(c, zero)
    }

    pub fn one(&self) -> QuadElement {
        self.constant(self.context().one())
    }

    /// The generator w itself.
    pub fn w(&self) -> QuadElement {
        self.element(self.context().zero(), self.context().one())
    }

    pub fn same(&self, other: &QuadRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.context().same(other.context()) && self.d() == other.d())
    }
}

impl fmt::Debug for QuadRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuadRing {{ p: {}, d: {} }}",
            self.context().modulus(),
            self.d()
        )
    }
}

/// c0 + c1*w with both components reduced mod p.
#[derive(Clone)]
pub struct QuadElement {
    c0: FieldElement,
    c1: FieldElement,
    ring: QuadRing,
}

impl QuadElement {
    pub fn c0(&self) -> &FieldElement {
        &self.c0
    }

    pub fn c1(&self) -> &FieldElement {
        &self.c1
    }

    pub fn ring(&self) -> &QuadRing {
        &self.ring
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    /// (x0 + x1 w)(y0 + y1 w) = (x0 y0 + x1 y1 d) + (x0 y1 + x1 y0) w.
    pub fn mul(&self, other: &QuadElement) -> Result<QuadElement> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &QuadElement) -> QuadElement {
        let d = self.ring.d();
        let c0 = &(&self.c0 * &other.c0) + &(&(&self.c1 * &other.c1) * d);
        let c1 = &(&self.c0 * &other.c1) + &(&self.c1 * &other.c0);
        self.ring.element(c0, c1)
    }

    pub fn square(&self) -> QuadElement {
        self.mul_unchecked(self)
    }

    /// Square-and-multiply over the ring product.
    pub fn pow(&self, exponent: &BigUint) -> QuadElement {
        let mut acc = self.ring.one();
        for i in (0..exponent.bits()).rev() {
            acc = acc.square();
            if exponent.bit(i) {
                acc = acc.mul_unchecked(self);
            }
        }
        acc
    }

    /// c0 - c1 w; equals the p-th power map whenever d is a non-residue.
    pub fn conjugate(&self) -> QuadElement {
        self.ring.element(self.c0.clone(), -&self.c1)
    }

    /// N(c0 + c1 w) = c0^2 - c1^2 d; zero exactly on zero and zero divisors.
    pub fn norm(&self) -> FieldElement {
        &self.c0.square() - &(&self.c1.square() * self.ring.d())
    }

    /// conjugate(x) / N(x); errors when the norm vanishes.
    pub fn inv(&self) -> Result<QuadElement> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n_inv = n.inv()?;
        let conj = self.conjugate();
        Ok(self
            .ring
            .element(&conj.c0 * &n_inv, &conj.c1 * &n_inv))
    }
}

impl PartialEq for QuadElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.c0 == other.c0 && self.c1 == other.c1
    }
}

impl Eq for QuadElement {}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}*w mod {} (w^2={})",
            self.c0,
            self.c1,
            self.ring.context().modulus(),
            self.ring.d()
        )
    }
}

impl fmt::Debug for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
