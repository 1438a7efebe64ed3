//! Exact polynomials, Laurent series and a rational null space.

use projsymp::exact::{LaurentSeries, Polynomial, Rational, RationalMatrix};

fn main() {
    let p = Polynomial::new(vec![Rational::from(-1), Rational::zero(), Rational::one()]);
    let q = Polynomial::linear_root(&Rational::one());
    println!("p = {p}");
    println!("p / (x - 1) = {}", p.div_rem(&q).0);
    println!("p'(1/3) = {}", p.derivative().eval(&Rational::new(1, 3)));

    // 1/(1 - t) to six terms, composed with t = s + s^2.
    let geometric = LaurentSeries::new(0, vec![Rational::one(); 6], 6);
    let sub = LaurentSeries::new(1, vec![Rational::one(), Rational::one()], 6);
    println!("1/(1 - t) = {geometric}");
    println!("1/(1 - s - s^2) = {}", geometric.compose(&sub).unwrap());

    let m = RationalMatrix::from_int_rows(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, -1, 2]]);
    println!("rank = {}", m.rank());
    for v in m.kernel_basis() {
        let shown: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        println!("kernel vector [{}]", shown.join(", "));
    }
}
