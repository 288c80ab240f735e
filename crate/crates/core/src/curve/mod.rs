//! Group law on the singular cubic E: y^2 = x(x+a)^2 and the square-root
//! solvers built on its 4-torsion points.
//!
//! Affine arithmetic works directly on the curve equation with the tangent
//! slope k = (x+a)(3x+a)/(2y). Projective arithmetic shifts to the
//! short-Weierstrass model y^2 = x^3 + Ax + B with A = -a^2/3, B = -2a^3/27
//! (valid for p > 3), runs inversion-free homogeneous formulas there, and
//! shifts back. The two paths cross-check each other.

mod solvers;

pub use solvers::{sqrt_curve_basic, sqrt_curve_cipolla, sqrt_curve_enhanced, sqrt_curve_tonelli};

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeContext};

/// Coordinate system used by scalar multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinates {
    Affine,
    Projective,
}

/// The curve y^2 = x(x+a)^2 for a fixed nonzero quadratic residue a,
/// together with its shifted short-Weierstrass coefficients.
#[derive(Clone, Debug)]
pub struct SingularCurve {
    a: FieldElement,
    /// A = -a^2/3 of the shifted model.
    shifted_a: FieldElement,
    /// B = -2a^3/27 of the shifted model.
    shifted_b: FieldElement,
    /// x-coordinate -a of the singular point (direct model).
    singular_x: FieldElement,
}

/// A point of E. `Projective` carries direct-model homogeneous coordinates:
/// (X : Y : Z) with Z != 0 is the affine point (X/Z, Y/Z) and (0 : Y : 0)
/// is the point at infinity.
///
/// Derived equality is representational; use [`SingularCurve::equals`] or
/// [`SingularCurve::normalize`] to compare group elements across
/// representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(FieldElement, FieldElement),
    Projective(FieldElement, FieldElement, FieldElement),
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "infinity"),
            CurvePoint::Affine(x, y) => write!(f, "({}, {}) mod {}", x, y, x.context().modulus()),
            CurvePoint::Projective(x, y, z) => write!(f, "({} : {} : {})", x, y, z),
        }
    }
}

/// Internal shifted-model homogeneous point.
#[derive(Clone)]
struct Shifted {
    x: FieldElement,
    y: FieldElement,
    z: FieldElement,
}

impl SingularCurve {
    /// Builds the curve for a nonzero residue a. Requires p > 3 so the
    /// coordinate shift x -> x - 2a/3 exists.
    pub fn new(a: FieldElement) -> Result<Self> {
        let ctx = a.context().clone();
        if *ctx.modulus() == BigUint::from(3u32) {
            return Err(Error::BadCharacteristic);
        }
        if a.legendre() != 1 {
            return Err(Error::NonResidue);
        }
        let three_inv = ctx.element(3u32).inv()?;
        let a_sq = a.square();
        let shifted_a = -&(&a_sq * &three_inv);
        let a_cubed = &a_sq * &a;
        let twentyseven_inv = ctx.element(27u32).inv()?;
        let shifted_b = -&(&(&ctx.element(2u32) * &a_cubed) * &twentyseven_inv);
        let singular_x = -&a;
        Ok(SingularCurve {
            a,
            shifted_a,
            shifted_b,
            singular_x,
        })
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    /// Coefficient A of the shifted model y^2 = x^3 + Ax + B.
    pub fn shifted_a(&self) -> &FieldElement {
        &self.shifted_a
    }

    /// Coefficient B of the shifted model.
    pub fn shifted_b(&self) -> &FieldElement {
        &self.shifted_b
    }

    pub fn context(&self) -> &PrimeContext {
        self.a.context()
    }

    /// The unique 2-torsion point (0, 0).
    pub fn two_torsion(&self) -> CurvePoint {
        CurvePoint::Affine(self.context().zero(), self.context().zero())
    }

    pub fn is_two_torsion(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Affine(x, y) => x.is_zero() && y.is_zero(),
            CurvePoint::Projective(x, y, z) => !z.is_zero() && x.is_zero() && y.is_zero(),
            CurvePoint::Infinity => false,
        }
    }

    /// Membership test: infinity, or an affine/projective solution of
    /// y^2 = x(x+a)^2 other than the singular point (-a, 0).
    pub fn is_on_curve(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                if *x == self.singular_x && y.is_zero() {
                    return false;
                }
                let xa = x + &self.a;
                y.square() == &(x * &xa) * &xa
            }
            CurvePoint::Projective(x, y, z) => {
                if z.is_zero() {
                    return x.is_zero() && !y.is_zero();
                }
                // homogeneous direct model: Y^2 Z = X^3 + 2a X^2 Z + a^2 X Z^2
                let singular = *x == &self.singular_x * z && y.is_zero();
                if singular {
                    return false;
                }
                let lhs = &y.square() * z;
                let two_a = self.a.double();
                let a_sq = self.a.square();
                let rhs = &(&(&x.square() * x) + &(&(&two_a * &x.square()) * z))
                    + &(&(&a_sq * x) * &z.square());
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y),
            CurvePoint::Projective(x, y, z) => {
                CurvePoint::Projective(x.clone(), -y, z.clone())
            }
        }
    }

    /// Canonical form: Infinity or Affine.
    pub fn normalize(&self, pt: &CurvePoint) -> Result<CurvePoint> {
        match pt {
            CurvePoint::Infinity => Ok(CurvePoint::Infinity),
            CurvePoint::Affine(..) => Ok(pt.clone()),
            CurvePoint::Projective(x, y, z) => {
                if z.is_zero() {
                    return Ok(CurvePoint::Infinity);
                }
                let z_inv = z.inv()?;
                Ok(CurvePoint::Affine(x * &z_inv, y * &z_inv))
            }
        }
    }

    /// Group equality across representations.
    pub fn equals(&self, p: &CurvePoint, q: &CurvePoint) -> bool {
        match (self.normalize(p), self.normalize(q)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Chord-and-tangent addition directly on y^2 = x(x+a)^2.
    ///
    /// Distinct x: k = (y1-y2)/(x1-x2), x3 = k^2 - 2a - x1 - x2.
    /// Doubling:   k = (x+a)(3x+a)/(2y), x3 = k^2 - 2a - 2x.
    /// In both cases y3 = k(x1-x3) - y1.
    pub fn add_affine(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        let p = self.normalize(p)?;
        let q = self.normalize(q)?;
        let (x1, y1, x2, y2) = match (&p, &q) {
            (CurvePoint::Infinity, _) => return Ok(q),
            (_, CurvePoint::Infinity) => return Ok(p),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
            _ => unreachable!("normalize returns affine or infinity"),
        };
        let two_a = self.a.double();
        let k = if x1 == x2 {
            if *y1 != *y2 || y1.is_zero() {
                // inverse points (or doubling the 2-torsion)
                if (y1 + y2).is_zero() {
                    return Ok(CurvePoint::Infinity);
                }
                return Err(Error::InternalInvariantViolation(
                    "points share x with inconsistent y",
                ));
            }
            let xa = x1 + &self.a;
            let numer = &xa * &(&(&x1.double() + x1) + &self.a);
            &numer * &y1.double().inv()?
        } else {
            &(y1 - y2) * &(x1 - x2).inv()?
        };
        let x3 = if x1 == x2 {
            &(&k.square() - &two_a) - &x1.double()
        } else {
            &(&(&k.square() - &two_a) - x1) - x2
        };
        let y3 = &(&k * &(x1 - &x3)) - y1;
        if x3 == self.singular_x && y3.is_zero() {
            return Err(Error::SingularPointReached);
        }
        Ok(CurvePoint::Affine(x3, y3))
    }

    fn to_shifted(&self, pt: &CurvePoint) -> Shifted {
        let ctx = self.context();
        let three = ctx.element(3u32);
        match pt {
            CurvePoint::Infinity => Shifted {
                x: ctx.zero(),
                y: ctx.one(),
                z: ctx.zero(),
            },
            // (x, y) -> (3x + 2a : 3y : 3), avoiding a division by 3
            CurvePoint::Affine(x, y) => Shifted {
                x: &(&three * x) + &self.a.double(),
                y: &three * y,
                z: three,
            },
            CurvePoint::Projective(x, y, z) => Shifted {
                x: &(&three * x) + &(&self.a.double() * z),
                y: &three * y,
                z: &three * z,
            },
        }
    }

    fn from_shifted(&self, pt: &Shifted) -> CurvePoint {
        if pt.z.is_zero() {
            return CurvePoint::Infinity;
        }
        let three = self.context().element(3u32);
        CurvePoint::Projective(
            &(&three * &pt.x) - &(&self.a.double() * &pt.z),
            &three * &pt.y,
            &three * &pt.z,
        )
    }

    fn shifted_check_singular(&self, pt: &Shifted) -> Result<()> {
        // shifted singular point is (-a/3, 0): 3X = -aZ and Y = 0
        if pt.z.is_zero() {
            return Ok(());
        }
        let three = self.context().element(3u32);
        if pt.y.is_zero() && (&three * &pt.x) == -&(&self.a * &pt.z) {
            return Err(Error::SingularPointReached);
        }
        Ok(())
    }

    /// Homogeneous doubling on the shifted model; no inversions.
    fn shifted_double(&self, p: &Shifted) -> Result<Shifted> {
        let ctx = self.context();
        if p.z.is_zero() || p.y.is_zero() {
            return Ok(self.to_shifted(&CurvePoint::Infinity));
        }
        let three = ctx.element(3u32);
        let w = &(&three * &p.x.square()) + &(&self.shifted_a * &p.z.square());
        let s = &p.y * &p.z;
        let b = &(&p.x * &p.y) * &s;
        let h = &w.square() - &b.double().double().double();
        let x3 = &h.double() * &s;
        let eight = ctx.element(8u32);
        let y3 = &(&w * &(&b.double().double() - &h))
            - &(&(&eight * &p.y.square()) * &s.square());
        let z3 = &(&eight * &s.square()) * &s;
        let out = Shifted { x: x3, y: y3, z: z3 };
        self.shifted_check_singular(&out)?;
        Ok(out)
    }

    /// Homogeneous addition on the shifted model:
    /// K = Y2 Z1 - Y1 Z2, L = X2 Z1 - X1 Z2,
    /// M = K^2 Z1 Z2 - L^3 - 2 L^2 X1 Z2,
    /// X3 = L M, Y3 = K (L^2 X1 Z2 - M) - L^3 Y1 Z2, Z3 = L^3 Z1 Z2.
    fn shifted_add(&self, p: &Shifted, q: &Shifted) -> Result<Shifted> {
        if p.z.is_zero() {
            return Ok(q.clone());
        }
        if q.z.is_zero() {
            return Ok(p.clone());
        }
        let k = &(&q.y * &p.z) - &(&p.y * &q.z);
        let l = &(&q.x * &p.z) - &(&p.x * &q.z);
        if l.is_zero() {
            if k.is_zero() {
                return self.shifted_double(p);
            }
            return Ok(self.to_shifted(&CurvePoint::Infinity));
        }
        let z1z2 = &p.z * &q.z;
        let l_sq = l.square();
        let l_cu = &l_sq * &l;
        let x1z2 = &p.x * &q.z;
        let m = &(&(&k.square() * &z1z2) - &l_cu) - &(&l_sq * &x1z2).double();
        let x3 = &l * &m;
        let y3 = &(&k * &(&(&l_sq * &x1z2) - &m)) - &(&l_cu * &(&p.y * &q.z));
        let z3 = &l_cu * &z1z2;
        let out = Shifted { x: x3, y: y3, z: z3 };
        self.shifted_check_singular(&out)?;
        Ok(out)
    }

    /// Inversion-free addition: shift to the short-Weierstrass model, apply
    /// the homogeneous law, shift back. The result stays projective.
    pub fn add_projective(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        let sp = self.to_shifted(p);
        let sq = self.to_shifted(q);
        let sum = self.shifted_add(&sp, &sq)?;
        Ok(self.from_shifted(&sum))
    }

    /// Double-and-add scalar multiplication; 0 * P = Infinity. The
    /// projective path performs no field inversions until the final
    /// normalization.
    pub fn scalar_mul(
        &self,
        k: &BigUint,
        p: &CurvePoint,
        coords: Coordinates,
    ) -> Result<CurvePoint> {
        match coords {
            Coordinates::Affine => {
                let mut acc = CurvePoint::Infinity;
                for i in (0..k.bits()).rev() {
                    acc = self.add_affine(&acc, &acc)?;
                    if k.bit(i) {
                        acc = self.add_affine(&acc, p)?;
                    }
                }
                Ok(acc)
            }
            Coordinates::Projective => {
                let base = self.to_shifted(p);
                let mut acc = self.to_shifted(&CurvePoint::Infinity);
                for i in (0..k.bits()).rev() {
                    acc = self.shifted_double(&acc)?;
                    if k.bit(i) {
                        acc = self.shifted_add(&acc, &base)?;
                    }
                }
                self.normalize(&self.from_shifted(&acc))
            }
        }
    }

    /// The point (t^2, t(t^2 + a)). Rejects t = 0 and t^2 = -a, which land
    /// on the 2-torsion and the singular point respectively.
    pub fn point_from_parameter(&self, t: &FieldElement) -> Result<CurvePoint> {
        if t.is_zero() {
            return Err(Error::BadParameter);
        }
        let x = t.square();
        if x == self.singular_x {
            return Err(Error::BadParameter);
        }
        let y = t * &(&x + &self.a);
        let pt = CurvePoint::Affine(x, y);
        debug_assert!(self.is_on_curve(&pt));
        Ok(pt)
    }

    /// Closed-form double of the parametrized point:
    /// 2P = ( (a - t^2)^2 / (4 t^2), (t^2 + a)^2 (t^2 - a) / (8 t^3) ).
    /// Exists to test the generic group law against an independent formula.
    pub fn double_via_parameter(&self, t: &FieldElement) -> Result<CurvePoint> {
        if t.is_zero() {
            return Err(Error::BadParameter);
        }
        let t_sq = t.square();
        if t_sq == self.singular_x {
            return Err(Error::BadParameter);
        }
        let four_tsq_inv = t_sq.double().double().inv()?;
        let a_minus = &self.a - &t_sq;
        let x3 = &a_minus.square() * &four_tsq_inv;
        let plus = &t_sq + &self.a;
        let minus = &t_sq - &self.a;
        let two_t_inv = t.double().inv()?;
        let y3 = &(&(&plus.square() * &minus) * &four_tsq_inv) * &two_t_inv;
        Ok(CurvePoint::Affine(x3, y3))
    }

    /// Reads the square root off a 4-torsion point T = (a, w): root = w/(2a).
    /// Verifies the 4-torsion property (x = a and 2T = (0,0)) and the root.
    pub fn extract_root(&self, t_pt: &CurvePoint) -> Result<FieldElement> {
        let t_pt = self.normalize(t_pt)?;
        let (x, w) = match &t_pt {
            CurvePoint::Affine(x, w) => (x, w),
            _ => return Err(Error::NotFourTorsion),
        };
        if *x != self.a {
            return Err(Error::NotFourTorsion);
        }
        let doubled = self.add_affine(&t_pt, &t_pt)?;
        if !self.is_two_torsion(&doubled) {
            return Err(Error::NotFourTorsion);
        }
        let root = w * &self.a.double().inv()?;
        if root.square() != self.a {
            return Err(Error::InternalInvariantViolation(
                "extracted value is not a square root",
            ));
        }
        Ok(root.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeContext;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::from_u64(p).unwrap()
    }

    fn curve(p: u64, a: u64) -> SingularCurve {
        SingularCurve::new(ctx(p).element(a)).unwrap()
    }

    fn affine(c: &SingularCurve, x: u64, y: u64) -> CurvePoint {
        CurvePoint::Affine(c.context().element(x), c.context().element(y))
    }

    fn mul(c: &SingularCurve, k: u64, p: &CurvePoint, coords: Coordinates) -> CurvePoint {
        let out = c.scalar_mul(&BigUint::from(k), p, coords).unwrap();
        c.normalize(&out).unwrap()
    }

    #[test]
    fn curve_construction() {
        let c = curve(2017, 2);
        // 4A^3 + 27B^2 = 0 marks the node
        let ctx = c.context();
        let four = ctx.element(4u32);
        let twenty_seven = ctx.element(27u32);
        let disc = &(&four * &c.shifted_a().pow_u64(3)) + &(&twenty_seven * &c.shifted_b().square());
        assert!(disc.is_zero());

        let c17 = curve(17, 2);
        let ctx = c17.context();
        let expect_a = -&(&ctx.element(4u32) * &ctx.element(3u32).inv().unwrap());
        let expect_b = -&(&ctx.element(16u32) * &ctx.element(27u32).inv().unwrap());
        assert_eq!(*c17.shifted_a(), expect_a);
        assert_eq!(*c17.shifted_b(), expect_b);
    }

    #[test]
    fn construction_rejects_bad_input() {
        let c = ctx(13);
        assert_eq!(
            SingularCurve::new(c.element(5u32)).unwrap_err(),
            Error::NonResidue
        );
        assert_eq!(
            SingularCurve::new(c.element(0u32)).unwrap_err(),
            Error::NonResidue
        );
        let c3 = ctx(3);
        assert_eq!(
            SingularCurve::new(c3.element(1u32)).unwrap_err(),
            Error::BadCharacteristic
        );
    }

    #[test]
    fn membership() {
        let c = curve(2017, 2);
        assert!(c.is_on_curve(&affine(&c, 1, 3)));
        assert!(c.is_on_curve(&affine(&c, 0, 0)));
        assert!(c.is_on_curve(&CurvePoint::Infinity));
        // the singular point (-a, 0) is excluded
        assert!(!c.is_on_curve(&affine(&c, 2015, 0)));
        assert!(!c.is_on_curve(&affine(&c, 1, 4)));
    }

    #[test]
    fn identity_and_inverses() {
        let c = curve(2017, 2);
        let p = affine(&c, 1, 3);
        assert_eq!(c.add_affine(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(c.add_affine(&CurvePoint::Infinity, &p).unwrap(), p);
        let sum = c.add_affine(&p, &c.negate(&p)).unwrap();
        assert!(sum.is_infinity());
        let proj = c.add_projective(&p, &c.negate(&p)).unwrap();
        assert!(c.normalize(&proj).unwrap().is_infinity());
    }

    #[test]
    fn two_torsion_doubles_to_infinity() {
        let c = curve(2017, 2);
        let t = c.two_torsion();
        assert!(c.add_affine(&t, &t).unwrap().is_infinity());
        let proj = c.add_projective(&t, &t).unwrap();
        assert!(c.normalize(&proj).unwrap().is_infinity());
    }

    #[test]
    fn worked_doubling() {
        let c = curve(2017, 2);
        let p = affine(&c, 1, 3);
        let d = c.add_affine(&p, &p).unwrap();
        assert_eq!(d, affine(&c, 1513, 251));
        let via_param = c.double_via_parameter(&c.context().one()).unwrap();
        assert_eq!(via_param, d);
    }

    #[test]
    fn worked_scalar_multiples() {
        let c = curve(2017, 2);
        for coords in [Coordinates::Affine, Coordinates::Projective] {
            assert_eq!(mul(&c, 63, &affine(&c, 1, 3), coords), affine(&c, 2, 90));
            assert_eq!(mul(&c, 1008, &affine(&c, 289, 913), coords), affine(&c, 0, 0));
            assert_eq!(mul(&c, 63, &affine(&c, 289, 913), coords), affine(&c, 138, 258));
            assert_eq!(mul(&c, 8, &affine(&c, 138, 258), coords), affine(&c, 2, 1927));
            assert_eq!(mul(&c, 2016, &affine(&c, 1, 3), coords), CurvePoint::Infinity);
            assert_eq!(mul(&c, 0, &affine(&c, 1, 3), coords), CurvePoint::Infinity);
        }
    }

    #[test]
    fn parametrization_examples() {
        let c = curve(2017, 2);
        assert_eq!(
            c.point_from_parameter(&c.context().one()).unwrap(),
            affine(&c, 1, 3)
        );
        assert_eq!(
            c.point_from_parameter(&c.context().element(611u32)).unwrap(),
            affine(&c, 176, 1857)
        );
        assert_eq!(
            c.point_from_parameter(&c.context().zero()).unwrap_err(),
            Error::BadParameter
        );
        // t^2 = -a hits the singular point: -3 = 10 = 6^2 mod 13
        let c13 = curve(13, 3);
        assert_eq!(
            c13.point_from_parameter(&c13.context().element(6u32)).unwrap_err(),
            Error::BadParameter
        );
    }

    #[test]
    fn parameter_doubling_of_root_param_gives_two_torsion() {
        // t = sqrt(a): 2P = (0, 0)
        let c = curve(13, 3);
        let t = c.context().element(4u32); // 4^2 = 3
        let d = c.double_via_parameter(&t).unwrap();
        assert!(c.is_two_torsion(&d));
    }

    #[test]
    fn extraction_examples() {
        let c = curve(2017, 2);
        let root = c.extract_root(&affine(&c, 2, 90)).unwrap();
        assert_eq!(root, c.context().element(986u32));
        let root = c.extract_root(&affine(&c, 2, 1927)).unwrap();
        assert_eq!(root, c.context().element(986u32));
        assert_eq!(
            c.extract_root(&affine(&c, 1, 3)).unwrap_err(),
            Error::NotFourTorsion
        );
        assert_eq!(
            c.extract_root(&c.two_torsion()).unwrap_err(),
            Error::NotFourTorsion
        );
    }

    #[test]
    fn four_torsion_points_are_a_with_both_roots() {
        // the 4-torsion points are exactly (a, +-2a sqrt(a))
        let c = curve(13, 3);
        let ctx = c.context();
        let s = ctx.element(4u32); // sqrt(3)
        let w = &ctx.element(6u32) * &s; // 2a sqrt(a)
        for y in [w.clone(), -&w] {
            let t = CurvePoint::Affine(ctx.element(3u32), y);
            assert!(c.is_on_curve(&t));
            let d = c.add_affine(&t, &t).unwrap();
            assert!(c.is_two_torsion(&d));
            assert_eq!(c.extract_root(&t).unwrap(), ctx.element(4u32));
        }
    }

    #[test]
    fn projective_matches_affine_on_sums() {
        let c = curve(2017, 2);
        let p = affine(&c, 1, 3);
        let q = affine(&c, 176, 1857);
        let s1 = c.add_affine(&p, &q).unwrap();
        let s2 = c.normalize(&c.add_projective(&p, &q).unwrap()).unwrap();
        assert_eq!(s1, s2);
        assert!(c.is_on_curve(&s1));
    }

    #[test]
    fn group_order_annihilates_points() {
        for (p, a) in [(13u64, 3u64), (17, 2), (29, 5), (2017, 2)] {
            let c = curve(p, a);
            let order = BigUint::from(p - 1);
            for t in 1..p.min(40) {
                let t = c.context().element(t);
                let pt = match c.point_from_parameter(&t) {
                    Ok(pt) => pt,
                    Err(_) => continue,
                };
                let out = c.scalar_mul(&order, &pt, Coordinates::Projective).unwrap();
                assert!(out.is_infinity(), "({p},{a}) t={t}");
            }
        }
    }
}
