//! The Schwarzian derivative and the third-order operator of a projective
//! connection on the line.

use projsymp::exact::{Polynomial, Rational, RationalFunction};
use projsymp::projconn::{apply_delta, schwarzian};

fn main() {
    let z = RationalFunction::from(Polynomial::monomial(Rational::one(), 1));
    let mobius = RationalFunction::new(
        Polynomial::new(vec![Rational::one(), Rational::from(2)]),
        Polynomial::new(vec![Rational::from(3), Rational::one()]),
    );
    println!("S[(2z + 1)/(z + 3)] = {}", schwarzian(&mobius).unwrap());
    let cube = RationalFunction::from(Polynomial::monomial(Rational::one(), 3));
    println!("S[z^3] = {}", schwarzian(&cube).unwrap());

    let q = RationalFunction::zero();
    for i in 0..6 {
        let h = RationalFunction::from(Polynomial::monomial(Rational::one(), i));
        println!("Delta(z^{i}) = {}", apply_delta(&q, &h));
    }

    let q = RationalFunction::from(Polynomial::constant(Rational::new(1, 2)));
    let h = &z * &z;
    println!("with q = 1/2: Delta(z^2) = {}", apply_delta(&q, &h));
}
