//! The two bilinear expressions in a pair of vector fields agree exactly once
//! the constant is calibrated, on the line and on the curve.

use projsymp::exact::{Polynomial, Rational, RationalFunction};
use projsymp::projconn::{
    build_connection, calibrate_kappa, h1_pair, h2_pair, ProjectiveConnection,
};
use projsymp::riemann::{Curve, FunctionElement};

fn main() {
    println!("calibrated constant: {}", calibrate_kappa());

    let flat = ProjectiveConnection::flat();
    let f: RationalFunction = Polynomial::new(vec![
        Rational::one(),
        Rational::zero(),
        Rational::from(3),
        Rational::new(-1, 2),
    ])
    .into();
    let g: RationalFunction = Polynomial::new(vec![
        Rational::zero(),
        Rational::from(2),
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
    ])
    .into();
    let (h1, h2) = (h1_pair(&flat, &f, &g), h2_pair(&flat, &f, &g));
    println!("flat: H1 = {h1}");
    println!("      H2 = {h2}");
    println!("      equal: {}", h1 == h2);

    let curve = Curve::default_curve();
    let conn = build_connection(&curve).unwrap();
    println!("curve connection q = {}", conn.q());
    let x = |c: &[i64]| Polynomial::new(c.iter().map(|&v| Rational::from(v)).collect());
    let f = FunctionElement::from_poly(&curve, x(&[1, 2]), x(&[0, 1]));
    let g = FunctionElement::from_poly(&curve, x(&[0, 0, 1]), x(&[3]));
    println!(
        "curve: H1 == H2: {}",
        h1_pair(&conn, &f, &g) == h2_pair(&conn, &f, &g)
    );
}
