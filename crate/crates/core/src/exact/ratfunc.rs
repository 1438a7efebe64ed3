//! Univariate rational functions over the rationals, kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Polynomial, Rational};

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if den.is_constant() {
            let c = den.leading().recip();
            return RationalFunction {
                num: num.scale(&c),
                den: Polynomial::one(),
            };
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let c = den.leading().recip();
        RationalFunction {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Polynomial::one().into()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::constant(c).into()
    }

    pub fn x() -> Self {
        Polynomial::x().into()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial, if the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.recip().pow(-e);
        }
        RationalFunction::new(self.num.pow(e as u32), self.den.pow(e as u32))
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| &self.num.eval(x) / &d)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(n, &self.den * &self.den)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RationalFunction) -> Self {
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let homogenize = |p: &Polynomial| {
            let mut acc = Polynomial::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &inner.num.pow(i as u32) * &inner.den.pow((n - i) as u32);
                acc = &acc + &term.scale(c);
            }
            acc
        };
        RationalFunction::new(homogenize(&self.num), homogenize(&self.den))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_polynomial() && rhs.is_polynomial() {
            return (&self.num * &rhs.num).into();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn x_minus(c: i64) -> Polynomial {
        Polynomial::from_ints(&[-c, 1])
    }

    #[test]
    fn quotient_rule() {
        let r = RationalFunction::new(Polynomial::one(), x_minus(2));
        let expected = RationalFunction::new(Polynomial::from_ints(&[-1]), x_minus(2).pow(2));
        assert_eq!(r.derivative(), expected);
    }

    #[test]
    fn lowest_terms() {
        let r = RationalFunction::new(
            &x_minus(1) * &x_minus(3),
            (&x_minus(1) * &x_minus(2)).scale(&q(2, 1)),
        );
        assert_eq!(r.num(), &x_minus(3).scale(&q(1, 2)));
        assert_eq!(r.den(), &x_minus(2));
        assert!(r.den().is_monic());
    }

    #[test]
    fn mobius_composition() {
        // (2z+1)/(z-3) composed with its inverse (3w+1)/(w-2) is the identity.
        let s = RationalFunction::new(Polynomial::from_ints(&[1, 2]), x_minus(3));
        let t = RationalFunction::new(Polynomial::from_ints(&[1, 3]), x_minus(2));
        assert_eq!(s.compose(&t), RationalFunction::x());
        assert_eq!(s.eval(&q(3, 1)), None);
        assert_eq!(s.eval(&q(0, 1)), Some(q(-1, 3)));
    }
}
