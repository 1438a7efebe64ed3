#![allow(dead_code)]

use projsymp::exact::{Polynomial, Rational, RationalFunction};
use projsymp::riemann::{Curve, Section};
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn polynomial<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=d).map(|_| small_rational(rng)).collect())
}

/// A Möbius map `(az + b)/(cz + d)` with `ad − bc ≠ 0`.
pub fn mobius<R: Rng>(rng: &mut R) -> RationalFunction {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| small_rational(rng));
        if !(&(&a * &d) - &(&b * &c)).is_zero() {
            return RationalFunction::new(Polynomial::new(vec![b, a]), Polynomial::new(vec![d, c]));
        }
    }
}

/// `(p₀ + p₁y)(dx/y)^k` with polynomial coefficients.
pub fn polynomial_section<R: Rng>(rng: &mut R, k: i32, max_degree: usize) -> Section {
    Section::from_polys(k, polynomial(rng, max_degree), polynomial(rng, max_degree))
}

pub fn default_curve() -> Curve {
    Curve::default_curve()
}
