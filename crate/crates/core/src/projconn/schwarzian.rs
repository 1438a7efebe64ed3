use super::ProjConnError;
use crate::exact::{LaurentSeries, Rational, RationalFunction};

/// `S(σ) = σ‴/σ′ − (3/2)(σ″/σ′)²`.
pub fn schwarzian(sigma: &RationalFunction) -> Result<RationalFunction, ProjConnError> {
    let d1 = sigma.derivative();
    if d1.is_zero() {
        return Err(ProjConnError::DegenerateMap(sigma.to_string()));
    }
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let r = &d2 / &d1;
    Ok(&(&d3 / &d1) - &(&r * &r).scale(&Rational::new(3, 2)))
}

/// The Schwarzian of a series in the local parameter.
pub fn schwarzian_series(sigma: &LaurentSeries) -> Result<LaurentSeries, ProjConnError> {
    let d1 = sigma.derivative();
    if d1.is_zero() {
        return Err(ProjConnError::DegenerateMap(sigma.to_string()));
    }
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let inv = d1.inverse()?;
    let r = &d2 * &inv;
    Ok(&(&d3 * &inv) - &(&r * &r).scale(&Rational::new(3, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Polynomial};

    #[test]
    fn mobius_has_zero_schwarzian() {
        let s = RationalFunction::new(
            Polynomial::from_ints(&[1, 2]),
            Polynomial::from_ints(&[-3, 1]),
        );
        assert!(schwarzian(&s).unwrap().is_zero());
    }

    #[test]
    fn square_map() {
        let s: RationalFunction = Polynomial::from_ints(&[0, 0, 1]).into();
        let expected = RationalFunction::new(
            Polynomial::constant(q(-3, 2)),
            Polynomial::from_ints(&[0, 0, 1]),
        );
        assert_eq!(schwarzian(&s).unwrap(), expected);
    }

    #[test]
    fn constant_is_degenerate() {
        let c = RationalFunction::constant(q(5, 1));
        assert!(matches!(
            schwarzian(&c),
            Err(ProjConnError::DegenerateMap(_))
        ));
    }

    #[test]
    fn series_agrees_with_rational() {
        // σ = t + t² at t = 0
        let sigma = LaurentSeries::exact(&Polynomial::from_ints(&[0, 1, 1]), 0).truncate(20);
        let s = schwarzian_series(&sigma).unwrap();
        let exact = schwarzian(&Polynomial::from_ints(&[0, 1, 1]).into()).unwrap();
        // -6/(1+2t)^2
        assert_eq!(
            exact,
            RationalFunction::new(
                Polynomial::constant(q(-6, 1)),
                Polynomial::from_ints(&[1, 4, 4])
            )
        );
        assert_eq!(s.coeff(0).unwrap(), q(-6, 1));
        assert_eq!(s.coeff(1).unwrap(), q(24, 1));
    }
}
