use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Element of the rational function field Q(a).
///
/// Kept in lowest terms with a primitive integer denominator whose leading
/// coefficient is positive. The numerator may carry rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DomainError);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RatFunc { num, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn param() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn normalized(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let (content, prim) = den.content_primitive();
        RatFunc { num: num.scale(&content.recip()), den: prim }
    }

    /// Exact substitution `a = a0`.
    pub fn eval(&self, a0: &Rational) -> Result<Rational> {
        let d = self.den.eval(a0);
        if d.is_zero() {
            return Err(Error::PoleError(a0.clone()));
        }
        Ok(self.num.eval(a0) / d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DomainError);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Total degree of numerator and denominator, a rough size measure for pivoting.
    pub fn complexity(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: UniPoly::one(), den: UniPoly::one() }
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return RatFunc { num, den: self.den };
            }
            return Self::normalized(num, self.den);
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self + &rhs
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs.clone())
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self - &rhs
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: self.num.mul(&rhs.num), den: self.den };
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl<'a> AddAssign<&'a RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &'a RatFunc) {
        *self = std::mem::replace(self, RatFunc::zero()) + rhs;
    }
}

impl<'a> SubAssign<&'a RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &'a RatFunc) {
        *self = std::mem::replace(self, RatFunc::zero()) - rhs;
    }
}

impl<'a> MulAssign<&'a RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &'a RatFunc) {
        *self = std::mem::replace(self, RatFunc::zero()) * rhs;
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn inverse_is_normalized() {
        // (a - 1)/a inverts to a/(a - 1)
        let r = RatFunc::new(poly(&[-1, 1]), poly(&[0, 1])).unwrap();
        let inv = r.inv().unwrap();
        assert_eq!(inv.numer(), &poly(&[0, 1]));
        assert_eq!(inv.denom(), &poly(&[-1, 1]));
    }

    #[test]
    fn canonical_equality() {
        // 2a/2 == a/1
        let lhs = RatFunc::new(poly(&[0, 2]), poly(&[2])).unwrap();
        assert_eq!(lhs, RatFunc::param());
        // (a^2 - 1)/(2a - 2) == (a + 1)/2
        let r = RatFunc::new(poly(&[-1, 0, 1]), poly(&[-2, 2])).unwrap();
        assert!(r.denom().is_one());
        assert_eq!(r.to_string(), "1/2*a + 1/2");
    }

    #[test]
    fn negative_leading_denominator_flips() {
        let r = RatFunc::new(poly(&[1]), poly(&[1, -2])).unwrap();
        assert_eq!(r.denom(), &poly(&[-1, 2]));
        assert_eq!(r.numer(), &poly(&[-1]));
    }

    #[test]
    fn evaluation_and_poles() {
        let r = RatFunc::new(poly(&[0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(r.eval(&Rational::from_integer(1.into())), Err(Error::PoleError(Rational::one())));
        assert_eq!(r.eval(&Rational::from_integer(2.into())).unwrap(), Rational::from_integer(2.into()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(poly(&[1]), UniPoly::zero()), Err(Error::DomainError));
    }
}
