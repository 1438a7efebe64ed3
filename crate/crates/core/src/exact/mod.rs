//! Exact arithmetic: rationals, polynomials, rational functions, truncated Laurent
//! series and linear algebra over ℚ. Nothing in here ever rounds.

mod matrix;
mod poly;
mod ratfunc;
mod rational;
mod series;

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use matrix::{Echelon, RationalMatrix};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{q, Rational};
pub use series::{LaurentSeries, EXACT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("not a square: {0}")]
    NotASquare(String),
    #[error("insufficient precision: need O(s^{needed}), have O(s^{available})")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("series expansion of an exact series needs a finite precision")]
    UnboundedPrecision,
    #[error("division by a series that is zero to its precision")]
    DivisionByZero,
    #[error("cannot substitute a series of valuation {0}")]
    Composition(i64),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Formal derivative.
pub trait Derive {
    fn derive(&self) -> Self;
}

impl Derive for Polynomial {
    fn derive(&self) -> Self {
        self.derivative()
    }
}

impl Derive for RationalFunction {
    fn derive(&self) -> Self {
        self.derivative()
    }
}

impl Derive for LaurentSeries {
    fn derive(&self) -> Self {
        self.derivative()
    }
}

/// Commutative ring elements that can be scaled by rationals. This is what the
/// generic jet and trace-form code needs from its scalars.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// The unit of the ring `self` lives in.
    fn one_like(&self) -> Self;
}

impl Scalar for Rational {
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl Scalar for RationalFunction {
    fn scale(&self, c: &Rational) -> Self {
        RationalFunction::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn one_like(&self) -> Self {
        RationalFunction::one()
    }
}

/// A scalar ring with a derivation `d/dz`.
pub trait Differential: Scalar + Derive {
    /// Embeds a rational function of the chart coordinate.
    fn lift(&self, r: &RationalFunction) -> Self;
}

impl Differential for RationalFunction {
    fn lift(&self, r: &RationalFunction) -> Self {
        r.clone()
    }
}
