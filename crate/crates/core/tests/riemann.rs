mod common;

use std::collections::BTreeMap;

use common::{nonzero_rational, polynomial, polynomial_section};
use projsymp::exact::{LaurentSeries, Polynomial, Rational, RationalFunction};
use projsymp::riemann::{derive_ff, section_space, Curve, LocalFrame, PointSpec, Section};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(p₀ + p₁y)/Π(x − eᵢ)^{nᵢ} · dx/y` with poles at branch points and at infinity.
fn meromorphic_form<R: Rng>(rng: &mut R, curve: &Curve) -> (Section, Vec<PointSpec>) {
    let roots = curve.branch_points().unwrap();
    let mut den = Polynomial::one();
    let mut poles = vec![PointSpec::InfPlus, PointSpec::InfMinus];
    for e in roots.iter() {
        let n = rng.gen_range(0..3u32);
        if n > 0 {
            den = &den * &Polynomial::linear_root(e).pow(n);
            poles.push(PointSpec::Branch(e.clone()));
        }
    }
    let r0 = RationalFunction::new(polynomial(rng, 9), den.clone());
    let r1 = RationalFunction::new(polynomial(rng, 5), den);
    (Section::new(1, r0, r1), poles)
}

#[test]
fn residue_theorem() {
    let curve = Curve::default_curve();
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut nonzero = 0;
    for _ in 0..50 {
        let (form, poles) = meromorphic_form(&mut rng, &curve);
        let residues: Vec<Rational> = poles
            .iter()
            .map(|p| curve.residue_at(&form, p).unwrap())
            .collect();
        nonzero += residues.iter().filter(|r| !r.is_zero()).count();
        let total = residues.iter().fold(Rational::zero(), |acc, r| &acc + r);
        assert!(total.is_zero(), "{form:?}: {residues:?}");
    }
    assert!(nonzero > 0);
}

#[test]
fn branch_residue_is_parameter_independent() {
    let curve = Curve::default_curve();
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for e in curve.branch_points().unwrap() {
        let fp = curve.f().derivative().eval(&e);
        let standard = LocalFrame::new(&curve, &PointSpec::Branch(e.clone())).unwrap();
        let rescaled = LocalFrame::branch(&curve, &e, &(&fp / &Rational::from(4))).unwrap();
        for _ in 0..5 {
            let den = Polynomial::linear_root(&e).pow(rng.gen_range(1..4));
            let form = Section::new(
                1,
                RationalFunction::new(polynomial(&mut rng, 6), den.clone()),
                RationalFunction::new(polynomial(&mut rng, 3), den),
            );
            let r = standard.residue(&form).unwrap();
            assert_eq!(rescaled.residue(&form).unwrap(), r);

            // t = s + a·s² + b·s³ changes the expansion but not the residue.
            let (a, b) = (nonzero_rational(&mut rng), nonzero_rational(&mut rng));
            let series = standard.expand(&form, 4).unwrap();
            let sub = LaurentSeries::new(1, vec![Rational::one(), a, b], 12);
            let pulled = series.compose(&sub).unwrap() * sub.derivative();
            assert_eq!(pulled.residue().unwrap(), r);
        }
    }
}

#[test]
fn derivation_kills_constants() {
    let curve = Curve::default_curve();
    let c = Section::from_polys(
        0,
        Polynomial::constant(Rational::new(7, 3)),
        Polynomial::zero(),
    );
    assert!(derive_ff(&c, &curve).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn polynomial_forms_have_opposite_residues_at_infinity(seed in any::<u64>()) {
        let curve = Curve::default_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = polynomial_section(&mut rng, 1, 8);
        let plus = curve.residue_at(&form, &PointSpec::InfPlus).unwrap();
        let minus = curve.residue_at(&form, &PointSpec::InfMinus).unwrap();
        prop_assert_eq!(&plus + &minus, Rational::zero());
    }

    #[test]
    fn derivation_is_leibniz(seed in any::<u64>()) {
        let curve = Curve::default_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = polynomial_section(&mut rng, 0, 4);
        let h = polynomial_section(&mut rng, 0, 4);
        let lhs = derive_ff(&g.mul(&h, &curve), &curve).unwrap();
        let rhs = &g.mul(&derive_ff(&h, &curve).unwrap(), &curve) + &h.mul(&derive_ff(&g, &curve).unwrap(), &curve);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn riemann_roch_steps_are_zero_or_one(
        k in -1i32..=2,
        inf_plus in 0i64..4,
        inf_minus in 0i64..4,
        branch in 0i64..3,
        which in 0usize..3,
    ) {
        let curve = Curve::default_curve();
        let e = PointSpec::Branch(Rational::from(2));
        let mut bounds = BTreeMap::new();
        bounds.insert(PointSpec::InfPlus, inf_plus);
        bounds.insert(PointSpec::InfMinus, inf_minus);
        bounds.insert(e.clone(), branch);
        let before = section_space(&curve, k, &bounds).unwrap().dim();
        let key = [PointSpec::InfPlus, PointSpec::InfMinus, e][which].clone();
        *bounds.get_mut(&key).unwrap() += 1;
        let after = section_space(&curve, k, &bounds).unwrap().dim();
        prop_assert!(after == before || after == before + 1, "{before} -> {after}");
    }
}
