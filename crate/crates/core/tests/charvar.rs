use nalgebra::{Complex, Matrix2};
use projsymp::charvar::{
    ad, goldman_suite, random_representation, sample_representation, CharVarError, CohomologyDims,
    Convention, Presentation,
};
use proptest::prelude::*;

#[test]
fn dimensions_across_seeds() {
    for genus in [2, 3] {
        for seed in 0..20 {
            let s = goldman_suite(genus, seed, 1e-8, None).unwrap();
            assert_eq!(
                (s.z1, s.b1, s.h1),
                (6 * genus - 3, 3, 6 * genus - 6),
                "genus {genus} seed {seed}"
            );
            assert_eq!(s.convention, Convention::Fox);
            assert!(s.passed(1e-8), "{s:#?}");
        }
    }
}

#[test]
fn dimensions_survive_conjugation() {
    let rep = sample_representation(2, 19).unwrap();
    let c = Matrix2::new(
        Complex::new(0.4, 1.1),
        Complex::new(-0.7, 0.2),
        Complex::new(1.3, 0.0),
        Complex::new(0.5, -0.6),
    );
    let a = CohomologyDims::of(&rep).unwrap();
    let b = CohomologyDims::of(&rep.conjugate(&c)).unwrap();
    assert_eq!((a.z1, a.b1, a.h1), (b.z1, b.b1, b.h1));
}

#[test]
fn genus_one_is_rejected() {
    assert!(matches!(
        random_representation(1, 0),
        Err(CharVarError::Genus(1))
    ));
    assert!(Presentation::surface(1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampled_representations_satisfy_relator(seed in any::<u64>(), genus in 2usize..4) {
        let rep = sample_representation(genus, seed).unwrap();
        prop_assert!(rep.relator_defect() < 1e-10);
        prop_assert!(rep.irreducibility_certificate().is_ok());
    }

    #[test]
    fn ad_preserves_trace_form(seed in any::<u64>()) {
        let rep = sample_representation(2, seed).unwrap();
        let g = ad(&rep.generators()[0]);
        // The trace form in (e, f, h) coordinates is e·f' + f·e' + 2h·h'.
        let k = nalgebra::Matrix3::new(
            Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(2.0, 0.0),
        );
        let defect = (g.transpose() * k * g - k).norm();
        prop_assert!(defect < 1e-9 * g.norm().powi(2));
    }
}
