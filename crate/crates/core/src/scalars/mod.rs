//! Exact scalars: the rationals, the parametric field Q(a), and dense linear
//! algebra over either.

mod echelon;
mod matrix;
mod ratfunc;
mod unipoly;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use echelon::Echelon;
pub use matrix::{excluded_factors, ExactMatrix, Nullspace};
pub use ratfunc::RatFunc;
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Name of the parameter of Q(a).
pub const PARAMETER: &str = "a";

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Which coefficient field a computation runs over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ScalarField {
    Rationals,
    RatFunc { parameter: String },
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => f.write_str("QQ"),
            ScalarField::RatFunc { parameter } => write!(f, "QQ({parameter})"),
        }
    }
}

/// A field of exact scalars.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn field() -> ScalarField;
    fn from_rational(q: Rational) -> Self;
    fn inv(&self) -> Result<Self>;
    /// The value as a rational, when it is constant in the parameter.
    fn as_rational(&self) -> Option<Rational>;
    /// The parameter `a`, for parametric fields.
    fn parameter() -> Option<Self>;
    /// Rough size used to prefer simple pivots; zero for constants.
    fn complexity(&self) -> usize;
    /// A multiplier clearing denominators in the parameter (1 for constants).
    fn parameter_denominator(&self) -> Self;
    /// Squarefree monic part of the numerator when it depends on the parameter.
    fn parameter_factor(&self) -> Option<UniPoly>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }
}

impl Field for Rational {
    fn field() -> ScalarField {
        ScalarField::Rationals
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DomainError)
        } else {
            Ok(self.recip())
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn parameter() -> Option<Self> {
        None
    }
    fn complexity(&self) -> usize {
        0
    }
    fn parameter_denominator(&self) -> Self {
        Rational::one()
    }
    fn parameter_factor(&self) -> Option<UniPoly> {
        None
    }
}

impl Field for RatFunc {
    fn field() -> ScalarField {
        ScalarField::RatFunc { parameter: PARAMETER.to_string() }
    }
    fn from_rational(q: Rational) -> Self {
        RatFunc::constant(q)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.denom().is_one() && self.numer().is_constant() {
            Some(self.numer().constant_term())
        } else {
            None
        }
    }
    fn parameter() -> Option<Self> {
        Some(RatFunc::param())
    }
    fn complexity(&self) -> usize {
        RatFunc::complexity(self)
    }
    fn parameter_denominator(&self) -> Self {
        RatFunc::from_poly(self.denom().clone())
    }
    fn parameter_factor(&self) -> Option<UniPoly> {
        if self.numer().is_constant() {
            None
        } else {
            Some(self.numer().squarefree_part())
        }
    }
}

/// Exact substitution of the parameter.
pub fn ratfunc_eval(r: &RatFunc, a0: &Rational) -> Result<Rational> {
    r.eval(a0)
}

/// A scalar tagged with its field, for interfaces that decide the field at run time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    RatFunc(RatFunc),
}

impl Scalar {
    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Rational(_) => Rational::field(),
            Scalar::RatFunc(_) => RatFunc::field(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            (Scalar::RatFunc(x), Scalar::RatFunc(y)) => Ok(Scalar::RatFunc(x.clone() + y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
            (Scalar::RatFunc(x), Scalar::RatFunc(y)) => Ok(Scalar::RatFunc(x.clone() * y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::RatFunc(x) => Scalar::RatFunc(-x.clone()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(x) => Field::inv(x).map(Scalar::Rational),
            Scalar::RatFunc(x) => x.inv().map(Scalar::RatFunc),
        }
    }

    pub fn equals(&self, other: &Scalar) -> Result<bool> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(x == y),
            (Scalar::RatFunc(x), Scalar::RatFunc(y)) => Ok(x == y),
            _ => Err(self.mismatch(other)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::RatFunc(x) => write!(f, "{x}"),
        }
    }
}
