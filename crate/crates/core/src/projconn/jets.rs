//! Jets of vector fields on the projective line and the isomorphism between
//! `sl₂` and the flat vector fields `(β + 2αz − γz²)∂_z`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exact::{Polynomial, Rational, Scalar};

/// Normalization of the trace form: `κ·tr(X_f X_g) = f g″ − f′g′ + f″g`.
pub const KAPPA: i64 = -2;

/// `(h, h′, h″)` of a vector-field coefficient at the point `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet2<T> {
    pub z: T,
    pub h: [T; 3],
}

/// `(h, h′, h″, h‴)` of a vector-field coefficient at the point `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet3<T> {
    pub z: T,
    pub h: [T; 4],
}

impl<T: Clone> Jet3<T> {
    /// The order-zero part: the value of the field at `z`.
    pub fn p0(&self) -> T {
        self.h[0].clone()
    }

    /// Forgets the third derivative.
    pub fn truncate(&self) -> Jet2<T> {
        Jet2 {
            z: self.z.clone(),
            h: [self.h[0].clone(), self.h[1].clone(), self.h[2].clone()],
        }
    }
}

impl Jet3<Rational> {
    pub fn of_polynomial(p: &Polynomial, z: &Rational) -> Self {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        Jet3 {
            z: z.clone(),
            h: [p.eval(z), d1.eval(z), d2.eval(z), d3.eval(z)],
        }
    }
}

impl Jet2<Rational> {
    pub fn of_polynomial(p: &Polynomial, z: &Rational) -> Self {
        Jet3::of_polynomial(p, z).truncate()
    }
}

/// Traceless matrix `[[α, β], [γ, −α]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Element<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> Sl2Element<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Self {
        Sl2Element { alpha, beta, gamma }
    }

    /// Rows of the 2×2 matrix.
    pub fn matrix(&self) -> [[T; 2]; 2] {
        [
            [self.alpha.clone(), self.beta.clone()],
            [self.gamma.clone(), -self.alpha.clone()],
        ]
    }

    /// `tr(XY)`.
    pub fn trace_product(&self, other: &Self) -> T {
        (self.alpha.clone() * other.alpha.clone()).scale(&Rational::from(2))
            + self.beta.clone() * other.gamma.clone()
            + self.gamma.clone() * other.beta.clone()
    }

    /// `XY − YX`.
    pub fn commutator(&self, other: &Self) -> Self {
        let two = Rational::from(2);
        let (a1, b1, c1) = (&self.alpha, &self.beta, &self.gamma);
        let (a2, b2, c2) = (&other.alpha, &other.beta, &other.gamma);
        Sl2Element {
            alpha: b1.clone() * c2.clone() - c1.clone() * b2.clone(),
            beta: (a1.clone() * b2.clone() - b1.clone() * a2.clone()).scale(&two),
            gamma: (c1.clone() * a2.clone() - a1.clone() * c2.clone()).scale(&two),
        }
    }

    /// The 2-jet at `z` of the field `(β + 2αz − γz²)∂_z`.
    pub fn jet2_at(&self, z: &T) -> Jet2<T> {
        let two = Rational::from(2);
        let h = self.beta.clone() + (self.alpha.clone() * z.clone()).scale(&two)
            - self.gamma.clone() * z.clone() * z.clone();
        let h1 = (self.alpha.clone() - self.gamma.clone() * z.clone()).scale(&two);
        let h2 = self.gamma.clone().scale(&Rational::from(-2));
        Jet2 {
            z: z.clone(),
            h: [h, h1, h2],
        }
    }

    /// The 3-jet at `z`; the third derivative of a flat field is zero.
    pub fn jet3_at(&self, z: &T) -> Jet3<T> {
        let j = self.jet2_at(z);
        let zero = z.clone() - z.clone();
        let [h0, h1, h2] = j.h;
        Jet3 {
            z: j.z,
            h: [h0, h1, h2, zero],
        }
    }
}

impl Sl2Element<Rational> {
    /// The polynomial coefficient `β + 2αz − γz²`.
    pub fn vector_field(&self) -> Polynomial {
        Polynomial::new(vec![
            self.beta.clone(),
            &self.alpha * &Rational::from(2),
            -&self.gamma,
        ])
    }
}

/// The flat field with the given 2-jet.
pub fn eta2_inverse<T: Scalar>(j: &Jet2<T>) -> Sl2Element<T> {
    let half = Rational::new(1, 2);
    let z = &j.z;
    let [h0, h1, h2] = &j.h;
    let gamma = h2.scale(&-&half);
    let alpha = (h1.clone() - h2.clone() * z.clone()).scale(&half);
    let beta =
        h0.clone() - h1.clone() * z.clone() + (h2.clone() * z.clone() * z.clone()).scale(&half);
    Sl2Element { alpha, beta, gamma }
}

/// `κ·tr(η₂⁻¹(u)·η₂⁻¹(v))`.
pub fn trace_form<T: Scalar>(u: &Jet2<T>, v: &Jet2<T>) -> T {
    raw_trace(u, v).scale(&Rational::from(KAPPA))
}

pub(crate) fn raw_trace<T: Scalar>(u: &Jet2<T>, v: &Jet2<T>) -> T {
    eta2_inverse(u).trace_product(&eta2_inverse(v))
}

/// Dual numbers `a + bε` with `ε² = 0`, used to differentiate jet-level
/// expressions along the base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.re.clone() * rhs.eps + self.eps * rhs.re.clone();
        Dual::new(self.re * rhs.re, eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn scale(&self, c: &Rational) -> Self {
        Dual::new(self.re.scale(c), self.eps.scale(c))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn one_like(&self) -> Self {
        let one = self.re.one_like();
        Dual::new(one.clone(), one.clone() - one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn eta2_inverse_reads_off_convention() {
        let z0 = q(0, 1);
        let d = eta2_inverse(&Jet2 {
            z: z0.clone(),
            h: [q(1, 1), q(0, 1), q(0, 1)],
        });
        assert_eq!(d, Sl2Element::new(q(0, 1), q(1, 1), q(0, 1)));
        let z2 = eta2_inverse(&Jet2 {
            z: z0,
            h: [q(0, 1), q(0, 1), q(2, 1)],
        });
        assert_eq!(z2, Sl2Element::new(q(0, 1), q(0, 1), q(-1, 1)));
    }

    #[test]
    fn trace_form_examples() {
        let z0 = q(0, 1);
        let d = Jet2 {
            z: z0.clone(),
            h: [q(1, 1), q(0, 1), q(0, 1)],
        };
        let z2 = Jet2 {
            z: z0,
            h: [q(0, 1), q(0, 1), q(2, 1)],
        };
        assert_eq!(trace_form(&d, &d), q(0, 1));
        // κ·tr([[0,1],[0,0]]·[[0,0],[-1,0]]) = -κ
        assert_eq!(trace_form(&d, &z2), q(-KAPPA, 1));
    }

    #[test]
    fn dual_numbers_differentiate() {
        // (z^3)' at z = 2 is 12
        let z = Dual::new(q(2, 1), q(1, 1));
        let c = z.clone() * z.clone() * z;
        assert_eq!(c, Dual::new(q(8, 1), q(12, 1)));
    }
}
