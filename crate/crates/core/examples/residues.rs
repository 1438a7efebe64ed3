//! Residues of a meromorphic differential on y^2 = x(x-1)...(x-5), checked
//! against the residue theorem, and the dimensions of spaces of sections.

use std::collections::BTreeMap;

use projsymp::exact::{Polynomial, Rational, RationalFunction};
use projsymp::riemann::{section_space, Curve, PointSpec, Section};

fn main() {
    let curve = Curve::default_curve();
    println!("curve: y^2 = {}  (genus {})", curve.f(), curve.genus());

    // ((x^5 + 2) + 3y) / (x^2 (x - 1)) dx/y
    let den =
        &Polynomial::monomial(Rational::one(), 2) * &Polynomial::linear_root(&Rational::one());
    let form = Section::new(
        1,
        RationalFunction::new(
            Polynomial::new(vec![
                Rational::from(2),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::one(),
            ]),
            den.clone(),
        ),
        RationalFunction::new(Polynomial::constant(Rational::from(3)), den),
    );
    println!("form: {form}");

    let points = [
        PointSpec::Branch(Rational::zero()),
        PointSpec::Branch(Rational::one()),
        PointSpec::InfPlus,
        PointSpec::InfMinus,
    ];
    let mut total = Rational::zero();
    for p in &points {
        let r = curve.residue_at(&form, p).unwrap();
        println!("  Res at {:<9} = {r}", p.to_string());
        total = &total + &r;
    }
    println!("sum of residues = {total}");

    for k in 0..=3 {
        let dim = section_space(&curve, k, &BTreeMap::new()).unwrap().dim();
        println!("holomorphic sections of K^{k}: {dim}");
    }
    let mut bounds = BTreeMap::new();
    bounds.insert(PointSpec::InfPlus, 3);
    println!(
        "functions with a pole of order <= 3 at inf+: {}",
        section_space(&curve, 0, &bounds).unwrap().dim()
    );
}
