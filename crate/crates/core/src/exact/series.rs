//! Truncated Laurent series over the rationals.
//!
//! A series is `Σ_{e=valuation}^{precision-1} c_e s^e + O(s^precision)`. The precision
//! is absolute. Every operation computes the precision of its result from the
//! precisions of its inputs, never optimistically, and any read of a coefficient at
//! or beyond the known precision is an error.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ExactError, Polynomial, Rational};

/// Precision of a series that is known exactly (a Laurent polynomial).
pub const EXACT: i64 = i64::MAX / 8;

/// Largest relative precision an inversion or square root will expand to.
const MAX_TERMS: i64 = 1 << 16;

fn clamp(p: i64) -> i64 {
    p.min(EXACT)
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeries {
    valuation: i64,
    coefficients: Vec<Rational>,
    precision: i64,
}

impl LaurentSeries {
    /// Builds a series whose first coefficient sits at exponent `start`.
    /// Coefficients at or beyond `precision` are dropped.
    pub fn new(start: i64, coefficients: Vec<Rational>, precision: i64) -> Self {
        let mut coefficients = coefficients;
        let precision = clamp(precision);
        let keep = (precision - start).max(0) as usize;
        coefficients.truncate(keep);
        let mut s = LaurentSeries {
            valuation: start,
            coefficients,
            precision,
        };
        s.normalize();
        s
    }

    /// The series `O(s^precision)`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries {
            valuation: precision,
            coefficients: Vec::new(),
            precision,
        }
    }

    pub fn monomial(c: Rational, exponent: i64, precision: i64) -> Self {
        LaurentSeries::new(exponent, vec![c], precision)
    }

    /// The polynomial `p(s)`, known to the given precision.
    pub fn from_polynomial(p: &Polynomial, precision: i64) -> Self {
        LaurentSeries::new(0, p.coeffs().to_vec(), precision)
    }

    /// The exact Laurent polynomial `s^shift · p(s)`.
    pub fn exact(p: &Polynomial, shift: i64) -> Self {
        LaurentSeries::new(shift, p.coeffs().to_vec(), EXACT)
    }

    pub fn is_exact(&self) -> bool {
        self.precision >= EXACT
    }

    fn normalize(&mut self) {
        while self.coefficients.last().is_some_and(Rational::is_zero) {
            self.coefficients.pop();
        }
        let lead = self
            .coefficients
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coefficients.len());
        if lead > 0 {
            self.coefficients.drain(..lead);
            self.valuation += lead as i64;
        }
        if self.coefficients.is_empty() {
            self.valuation = self.precision;
        }
    }

    /// Lowest exponent with a nonzero coefficient; equals the precision when the
    /// series is zero to its precision.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Number of known coefficients past the valuation.
    pub fn relative_precision(&self) -> i64 {
        self.precision - self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coefficients.first()
    }

    /// Coefficient of `s^e`.
    pub fn coeff(&self, e: i64) -> Result<Rational, ExactError> {
        if e >= self.precision {
            return Err(ExactError::InsufficientPrecision {
                needed: e + 1,
                available: self.precision,
            });
        }
        if e < self.valuation {
            return Ok(Rational::zero());
        }
        Ok(self
            .coefficients
            .get((e - self.valuation) as usize)
            .cloned()
            .unwrap_or_default())
    }

    /// Stored coefficients starting at the valuation. Coefficients past the end of
    /// this slice and below the precision are zero.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        LaurentSeries::new(self.valuation, self.coefficients.clone(), precision)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentSeries::new(
            self.valuation,
            self.coefficients.iter().map(|a| a * c).collect(),
            self.precision,
        )
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + k,
            coefficients: self.coefficients.clone(),
            precision: clamp(self.precision.saturating_add(k)),
        }
    }

    /// Multiplicative inverse; the relative precision is preserved.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let Some(a0) = self.leading() else {
            return Err(ExactError::DivisionByZero);
        };
        let n = self.bounded_relative_precision()?;
        let a0_inv = a0.recip();
        let a = &self.coefficients;
        let at = |j: usize| a.get(j);
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k.min(a.len().saturating_sub(1)) {
                if let Some(aj) = at(j).filter(|c| !c.is_zero()) {
                    acc += &(aj * &b[k - j]);
                }
            }
            b.push(-(&acc * &a0_inv));
        }
        Ok(LaurentSeries::new(
            -self.valuation,
            b,
            -self.valuation + n as i64,
        ))
    }

    pub fn div(&self, rhs: &LaurentSeries) -> Result<Self, ExactError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents go through [`LaurentSeries::inverse`].
    pub fn pow(&self, e: i32) -> Result<Self, ExactError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = LaurentSeries::monomial(Rational::one(), 0, EXACT);
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    fn bounded_relative_precision(&self) -> Result<usize, ExactError> {
        let n = self.relative_precision();
        if n > MAX_TERMS {
            return Err(ExactError::UnboundedPrecision);
        }
        Ok(n as usize)
    }

    /// Square root with the branch fixed by the positive root of the leading coefficient.
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        let Some(a0) = self.leading() else {
            // O(s^p) has square root O(s^floor(p/2)).
            return Ok(LaurentSeries::zero(self.precision.div_euclid(2)));
        };
        if self.valuation.rem_euclid(2) != 0 {
            return Err(ExactError::NotASquare("odd valuation".into()));
        }
        let b0 = a0
            .sqrt_exact()
            .ok_or_else(|| ExactError::NotASquare(format!("leading coefficient {a0}")))?;
        let n = self.bounded_relative_precision()?;
        let a = &self.coefficients;
        let two_b0_inv = (&b0 + &b0).recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(b0);
        for k in 1..n {
            let mut acc = a.get(k).cloned().unwrap_or_default();
            for j in 1..k {
                acc -= &(&b[j] * &b[k - j]);
            }
            b.push(&acc * &two_b0_inv);
        }
        let v = self.valuation / 2;
        Ok(LaurentSeries::new(v, b, v + n as i64))
    }

    /// Formal derivative d/ds. The precision drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * &Rational::from(self.valuation + i as i64))
            .collect();
        let prec = if self.is_exact() {
            EXACT
        } else {
            self.precision - 1
        };
        LaurentSeries::new(self.valuation - 1, coeffs, prec)
    }

    /// Coefficient of `s^-1`.
    pub fn residue(&self) -> Result<Rational, ExactError> {
        if self.precision <= -1 {
            return Err(ExactError::InsufficientPrecision {
                needed: 0,
                available: self.precision,
            });
        }
        self.coeff(-1)
    }

    /// Substitutes a series of valuation >= 1 for the variable.
    pub fn compose(&self, inner: &LaurentSeries) -> Result<Self, ExactError> {
        if inner.valuation() < 1 {
            return Err(ExactError::Composition(inner.valuation()));
        }
        if self.is_zero() {
            // O(s^p) ∘ g = O(s^(p·val g)) for p >= 0; with a negative p, O(s^p)∘g is
            // bounded by g^p, which has precision p·val(g) as well.
            return Ok(LaurentSeries::zero(clamp(
                self.precision.saturating_mul(inner.valuation()),
            )));
        }
        let base = inner.pow(self.valuation as i32)?;
        let mut acc = LaurentSeries::zero(EXACT);
        for c in self.coefficients.iter().rev() {
            acc = &(&acc * inner) + &LaurentSeries::monomial(c.clone(), 0, EXACT);
        }
        // Unknown tail: O(t^rel) in the inner variable becomes O(s^(rel·val g)).
        if !self.is_exact() {
            acc = acc.truncate(self.relative_precision().saturating_mul(inner.valuation()));
        }
        Ok(&acc * &base)
    }

    pub fn is_exactly_equal(&self, other: &LaurentSeries) -> bool {
        self.precision == other.precision && self == other
    }

    /// Equality of all coefficients below the smaller of the two precisions.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        let p = min(self.precision, other.precision);
        (&self.truncate(p) - &other.truncate(p)).is_zero()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "({c})*s^{} + ", self.valuation + i as i64)?;
        }
        write!(f, "O(s^{})", self.precision)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&LaurentSeries> for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let prec = min(self.precision, rhs.precision);
        let start = min(self.valuation, rhs.valuation).min(prec);
        let end = [self, rhs]
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.valuation + s.coefficients.len() as i64)
            .max()
            .unwrap_or(start)
            .min(prec);
        let n = (end - start).max(0) as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for s in [self, rhs] {
            for (i, c) in s.coefficients.iter().enumerate() {
                let e = s.valuation + i as i64;
                if e >= end {
                    break;
                }
                coeffs[(e - start) as usize] += c;
            }
        }
        LaurentSeries::new(start, coeffs, prec)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            valuation: self.valuation,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

impl Sub<&LaurentSeries> for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul<&LaurentSeries> for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let prec = clamp(min(
            self.valuation.saturating_add(rhs.precision),
            rhs.valuation.saturating_add(self.precision),
        ));
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(prec);
        }
        let start = self.valuation + rhs.valuation;
        let n = ((prec - start).max(0) as usize)
            .min(self.coefficients.len() + rhs.coefficients.len() - 1);
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coefficients.iter().enumerate() {
            if i >= n {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        LaurentSeries::new(start, coeffs, prec)
    }
}

impl Add for LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: LaurentSeries) -> LaurentSeries {
        &self + &rhs
    }
}

impl Sub for LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: LaurentSeries) -> LaurentSeries {
        &self - &rhs
    }
}

impl Mul for LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: LaurentSeries) -> LaurentSeries {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn series(start: i64, c: &[i64], prec: i64) -> LaurentSeries {
        LaurentSeries::new(start, c.iter().map(|&v| Rational::from(v)).collect(), prec)
    }

    #[test]
    fn binomial_sqrt() {
        let s = series(0, &[1, 1], 4);
        let r = s.sqrt().unwrap();
        assert_eq!(r.coefficients(), &[q(1, 1), q(1, 2), q(-1, 8), q(1, 16)]);
        assert_eq!(r.precision(), 4);
    }

    #[test]
    fn sqrt_of_one_and_shifted() {
        let one = series(0, &[1], 6);
        assert_eq!(one.sqrt().unwrap(), one);
        let s = series(2, &[1, 1], 8);
        let r = s.sqrt().unwrap();
        assert_eq!(r.valuation(), 1);
        assert!((&r * &r).agrees_with(&s));
        assert_eq!(r.coeff(2).unwrap(), q(1, 2));
    }

    #[test]
    fn sqrt_errors() {
        assert!(matches!(
            series(1, &[1], 5).sqrt(),
            Err(ExactError::NotASquare(_))
        ));
        assert!(matches!(
            series(0, &[2, 1], 5).sqrt(),
            Err(ExactError::NotASquare(_))
        ));
    }

    #[test]
    fn residue_extraction() {
        assert_eq!(series(-1, &[1], 3).residue().unwrap(), q(1, 1));
        assert_eq!(series(-2, &[3, 5, 7], 1).residue().unwrap(), q(5, 1));
        assert!(matches!(
            series(-4, &[1], -1).residue(),
            Err(ExactError::InsufficientPrecision { .. })
        ));
        let g = series(-3, &[2, -1, 4, 9, 1], 5);
        assert!(g.derivative().residue().unwrap().is_zero());
    }

    #[test]
    fn precision_is_pessimistic() {
        let a = series(-2, &[1, 2, 3], 1);
        let b = series(1, &[1, 1, 1, 1], 5);
        let p = &a * &b;
        // min(-2 + 5, 1 + 1) = 2
        assert_eq!(p.precision(), 2);
        assert!(matches!(
            p.coeff(2),
            Err(ExactError::InsufficientPrecision { .. })
        ));
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.precision(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = series(-3, &[2, 1, 0, 5, -1, 7], 3);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.valuation(), 3);
        let one = &a * &inv;
        assert!(one.agrees_with(&series(0, &[1], 6)));
        assert_eq!(one.precision(), 6);
    }

    #[test]
    fn composition_with_reparametrization() {
        // f(t) = 1/t, t = s + s^2 -> 1/(s(1+s)) = s^-1 - 1 + s - ...
        let f = series(-1, &[1], 6);
        let g = series(1, &[1, 1], 10);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.coeff(-1).unwrap(), q(1, 1));
        assert_eq!(h.coeff(0).unwrap(), q(-1, 1));
        assert_eq!(h.coeff(1).unwrap(), q(1, 1));
    }
}
