//! Weighted sections `(r₀(x) + r₁(x)·y)·(dx/y)^k` and the function field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Curve, RiemannError};
use crate::exact::{Derive, Differential, Polynomial, Rational, RationalFunction, Scalar};

/// A weight-`k` tensor on the curve. Weight −1 is a vector field, 0 a function,
/// 1 a one-form and 2 a quadratic differential.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub k: i32,
    pub r0: RationalFunction,
    pub r1: RationalFunction,
}

impl Section {
    pub fn new(k: i32, r0: RationalFunction, r1: RationalFunction) -> Self {
        Section { k, r0, r1 }
    }

    pub fn zero(k: i32) -> Self {
        Section::new(k, RationalFunction::zero(), RationalFunction::zero())
    }

    pub fn from_polys(k: i32, p0: Polynomial, p1: Polynomial) -> Self {
        Section::new(k, p0.into(), p1.into())
    }

    /// `x^i (dx/y)^k`.
    pub fn x_power(k: i32, i: usize) -> Self {
        Section::from_polys(
            k,
            Polynomial::monomial(Rational::one(), i),
            Polynomial::zero(),
        )
    }

    /// `x^i y (dx/y)^k`.
    pub fn x_power_y(k: i32, i: usize) -> Self {
        Section::from_polys(
            k,
            Polynomial::zero(),
            Polynomial::monomial(Rational::one(), i),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.r0.is_polynomial() && self.r1.is_polynomial()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Section::new(self.k, self.r0.scale(c), self.r1.scale(c))
    }

    /// Linear combination `Σ cᵢ sᵢ` of sections of a common weight.
    pub fn combination(k: i32, coeffs: &[Rational], sections: &[Section]) -> Self {
        assert_eq!(coeffs.len(), sections.len());
        coeffs
            .iter()
            .zip(sections)
            .filter(|(c, _)| !c.is_zero())
            .fold(Section::zero(k), |acc, (c, s)| &acc + &s.scale(c))
    }

    /// Tensor product, using `y² = f`. Weights add.
    pub fn mul(&self, other: &Section, curve: &Curve) -> Section {
        let f: RationalFunction = curve.f().clone().into();
        let r0 = &(&self.r0 * &other.r0) + &(&(&self.r1 * &other.r1) * &f);
        let r1 = &(&self.r0 * &other.r1) + &(&self.r1 * &other.r0);
        Section::new(self.k + other.k, r0, r1)
    }

    /// The coefficient `W` with `self = W·dx^k`, as a function-field element.
    pub fn dx_coefficient(&self, curve: &Curve) -> Result<FunctionElement, RiemannError> {
        let base = FunctionElement::from_parts(curve, &self.r0, &self.r1)?;
        Ok(base * FunctionElement::y(curve).pow(-self.k))
    }

    /// The weight-`k` section `W·dx^k`.
    pub fn from_dx_coefficient(w: &FunctionElement, k: i32) -> Section {
        let curve_y = FunctionElement::y_for(w.f.clone());
        (w.clone() * curve_y.pow(k)).to_section(k)
    }

    /// The weight-0 section with value `w`.
    pub fn function(w: &FunctionElement) -> Section {
        w.to_section(0)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} + ({})*y]*(dx/y)^{}", self.r0, self.r1, self.k)
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Section> for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        assert_eq!(self.k, rhs.k, "adding sections of different weight");
        Section::new(self.k, &self.r0 + &rhs.r0, &self.r1 + &rhs.r1)
    }
}

impl Sub<&Section> for &Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        assert_eq!(self.k, rhs.k, "subtracting sections of different weight");
        Section::new(self.k, &self.r0 - &rhs.r0, &self.r1 - &rhs.r1)
    }
}

impl Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        Section::new(self.k, -&self.r0, -&self.r1)
    }
}

/// Derivation `d/dx` of the function field: `D(x) = 1`, `D(y) = f′·y/(2f)`.
pub fn derive_ff(g: &Section, curve: &Curve) -> Result<Section, RiemannError> {
    if g.k != 0 {
        return Err(RiemannError::WrongWeight {
            expected: 0,
            got: g.k,
        });
    }
    let f: RationalFunction = curve.f().clone().into();
    let fp: RationalFunction = curve.f().derivative().into();
    let half_log = &fp / &f.scale(&Rational::from(2));
    let r0 = g.r0.derivative();
    let r1 = &g.r1.derivative() + &(&g.r1 * &half_log);
    Ok(Section::new(0, r0, r1))
}

/// Function-field element `(a + b·y) / f^m` with `a, b` polynomials.
///
/// Every function that appears in the projective-structure computations has
/// denominators dividing a power of `f`, so this form avoids polynomial gcds.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctionElement {
    f: Arc<Polynomial>,
    a: Polynomial,
    b: Polynomial,
    m: u32,
}

impl FunctionElement {
    pub fn new(curve: &Curve, a: Polynomial, b: Polynomial, m: u32) -> Self {
        FunctionElement::with_f(curve.f_arc().clone(), a, b, m)
    }

    fn with_f(f: Arc<Polynomial>, a: Polynomial, b: Polynomial, m: u32) -> Self {
        let mut e = FunctionElement { f, a, b, m };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.a.is_zero() && self.b.is_zero() {
            self.m = 0;
            return;
        }
        while self.m > 0 {
            let Some(a) = self.a.exact_div(&self.f) else {
                break;
            };
            let Some(b) = self.b.exact_div(&self.f) else {
                break;
            };
            self.a = a;
            self.b = b;
            self.m -= 1;
        }
    }

    pub fn zero(curve: &Curve) -> Self {
        FunctionElement::new(curve, Polynomial::zero(), Polynomial::zero(), 0)
    }

    pub fn one(curve: &Curve) -> Self {
        FunctionElement::new(curve, Polynomial::one(), Polynomial::zero(), 0)
    }

    pub fn x(curve: &Curve) -> Self {
        FunctionElement::new(curve, Polynomial::x(), Polynomial::zero(), 0)
    }

    pub fn y(curve: &Curve) -> Self {
        FunctionElement::y_for(curve.f_arc().clone())
    }

    fn y_for(f: Arc<Polynomial>) -> Self {
        FunctionElement::with_f(f, Polynomial::zero(), Polynomial::one(), 0)
    }

    pub fn from_poly(curve: &Curve, a: Polynomial, b: Polynomial) -> Self {
        FunctionElement::new(curve, a, b, 0)
    }

    /// `r₀ + r₁·y`, provided both denominators divide a power of `f`.
    pub fn from_parts(
        curve: &Curve,
        r0: &RationalFunction,
        r1: &RationalFunction,
    ) -> Result<Self, RiemannError> {
        let f = curve.f_arc();
        let (a, ma) = over_f_power(f, r0)?;
        let (b, mb) = over_f_power(f, r1)?;
        let m = ma.max(mb);
        let a = &a * &f.pow(m - ma);
        let b = &b * &f.pow(m - mb);
        Ok(FunctionElement::with_f(f.clone(), a, b, m))
    }

    pub fn parts(&self) -> (&Polynomial, &Polynomial, u32) {
        (&self.a, &self.b, self.m)
    }

    pub fn is_polynomial(&self) -> bool {
        self.m == 0
    }

    fn to_section(&self, k: i32) -> Section {
        let den = self.f.pow(self.m);
        Section::new(
            k,
            RationalFunction::new(self.a.clone(), den.clone()),
            RationalFunction::new(self.b.clone(), den),
        )
    }

    fn raise(&self, m: u32) -> (Polynomial, Polynomial) {
        let c = self.f.pow(m - self.m);
        (&self.a * &c, &self.b * &c)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e >= 0 {
            return (0..e).fold(
                FunctionElement::with_f(self.f.clone(), Polynomial::one(), Polynomial::zero(), 0),
                |acc, _| acc * self.clone(),
            );
        }
        self.inverse().pow(-e)
    }

    /// Inverse of `y` powers and of elements whose norm is a power of `f`
    /// times a constant; general inverses leave this representation.
    pub fn inverse(&self) -> Self {
        // 1/(a + b y) = (a − b y)/(a² − b² f)
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.f);
        assert!(!norm.is_zero(), "inverse of zero");
        let mut k = 0u32;
        let mut n = norm.clone();
        while let Some(q) = n.exact_div(&self.f) {
            if q.is_zero() {
                break;
            }
            n = q;
            k += 1;
        }
        assert!(n.is_constant(), "inverse leaves the f-power representation");
        let c = n.leading().recip();
        // (a + b y)/f^m inverse = f^m (a − b y) / (c⁻¹ f^k)
        let fm = self.f.pow(self.m);
        FunctionElement::with_f(
            self.f.clone(),
            (&self.a * &fm).scale(&c),
            (&(-&self.b) * &fm).scale(&c),
            k,
        )
    }
}

fn over_f_power(f: &Polynomial, r: &RationalFunction) -> Result<(Polynomial, u32), RiemannError> {
    if r.is_polynomial() {
        return Ok((r.num().clone(), 0));
    }
    let mut fm = Polynomial::one();
    for m in 1..=16u32 {
        fm = &fm * f;
        if let Some(c) = fm.exact_div(r.den()) {
            return Ok((r.num() * &c, m));
        }
    }
    Err(RiemannError::NotInFunctionRing(r.to_string()))
}

impl fmt::Debug for FunctionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({}) + ({})*y]/f^{}", self.a, self.b, self.m)
    }
}

impl Add for FunctionElement {
    type Output = FunctionElement;
    fn add(self, rhs: FunctionElement) -> FunctionElement {
        let m = self.m.max(rhs.m);
        let (a1, b1) = self.raise(m);
        let (a2, b2) = rhs.raise(m);
        FunctionElement::with_f(self.f, &a1 + &a2, &b1 + &b2, m)
    }
}

impl Sub for FunctionElement {
    type Output = FunctionElement;
    fn sub(self, rhs: FunctionElement) -> FunctionElement {
        self + (-rhs)
    }
}

impl Neg for FunctionElement {
    type Output = FunctionElement;
    fn neg(self) -> FunctionElement {
        FunctionElement {
            f: self.f,
            a: -&self.a,
            b: -&self.b,
            m: self.m,
        }
    }
}

impl Mul for FunctionElement {
    type Output = FunctionElement;
    fn mul(self, rhs: FunctionElement) -> FunctionElement {
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &self.f);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        FunctionElement::with_f(self.f, a, b, self.m + rhs.m)
    }
}

impl Derive for FunctionElement {
    fn derive(&self) -> Self {
        // D(a/f^m) = (a′f − m f′a)/f^{m+1}
        // D(b y/f^m) = (b′f + (1/2 − m) f′b)/f^{m+1} · y
        let f = &*self.f;
        let fp = f.derivative();
        let m = Rational::from(self.m as i64);
        let a = &(&self.a.derivative() * f) - &(&fp * &self.a).scale(&m);
        let half_minus_m = &Rational::new(1, 2) - &m;
        let b = &(&self.b.derivative() * f) + &(&fp * &self.b).scale(&half_minus_m);
        FunctionElement::with_f(self.f.clone(), a, b, self.m + 1)
    }
}

impl Scalar for FunctionElement {
    fn scale(&self, c: &Rational) -> Self {
        FunctionElement::with_f(self.f.clone(), self.a.scale(c), self.b.scale(c), self.m)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn one_like(&self) -> Self {
        FunctionElement::with_f(self.f.clone(), Polynomial::one(), Polynomial::zero(), 0)
    }
}

impl Differential for FunctionElement {
    fn lift(&self, r: &RationalFunction) -> Self {
        let (a, m) = over_f_power(&self.f, r)
            .expect("coefficient is not regular away from the branch points");
        FunctionElement::with_f(self.f.clone(), a, Polynomial::zero(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn derivative_of_y() {
        let c = Curve::default_curve();
        let y = Section::from_polys(0, Polynomial::zero(), Polynomial::one());
        let d = derive_ff(&y, &c).unwrap();
        let expected_r1 = RationalFunction::new(c.f().derivative(), c.f().scale(&q(2, 1)));
        assert_eq!(d.r1, expected_r1);
        assert!(d.r0.is_zero());
        let x3 = Section::x_power(0, 3);
        assert_eq!(
            derive_ff(&x3, &c).unwrap(),
            Section::x_power(0, 2).scale(&q(3, 1))
        );
        assert!(matches!(
            derive_ff(&Section::x_power(1, 0), &c),
            Err(RiemannError::WrongWeight { .. })
        ));
    }

    #[test]
    fn fast_derivation_agrees_with_general() {
        let c = Curve::default_curve();
        let g = Section::from_polys(
            0,
            Polynomial::from_ints(&[1, -2, 0, 3]),
            Polynomial::from_ints(&[4, 1]),
        );
        let fast = g.dx_coefficient(&c).unwrap().derive();
        let slow = derive_ff(&g, &c).unwrap();
        assert_eq!(Section::function(&fast), slow);
    }

    #[test]
    fn weight_conversion_roundtrip() {
        let c = Curve::default_curve();
        let s = Section::from_polys(
            -1,
            Polynomial::from_ints(&[0, 1]),
            Polynomial::from_ints(&[2]),
        );
        let w = s.dx_coefficient(&c).unwrap();
        assert_eq!(Section::from_dx_coefficient(&w, -1), s);
        // (dx/y)^2 has dx^2-coefficient 1/f
        let q2 = Section::x_power(2, 0).dx_coefficient(&c).unwrap();
        assert_eq!(q2.parts(), (&Polynomial::one(), &Polynomial::zero(), 1));
    }
}
