//! The two maps `TX ⊗ TX → K`: `H₁(f, g) = f·Δg + g·Δf` and `H₂ = d∘(trace form
//! on 2-jets)`. They agree identically.

use super::jets::raw_trace;
use super::{trace_form, Dual, Jet2, Jet3, ProjConnError, ProjectiveConnection, KAPPA};
use crate::exact::{Differential, Polynomial, Rational, RationalFunction, Scalar};
use crate::riemann::Section;

fn same_base<T: PartialEq>(v: &Jet3<T>, w: &Jet3<T>) -> Result<(), ProjConnError> {
    if v.z != w.z {
        return Err(ProjConnError::BasePointMismatch);
    }
    Ok(())
}

fn delta_jet<T: Scalar>(h: &[T; 4], q: &[T; 2]) -> T {
    h[3].clone()
        + (q[0].clone() * h[1].clone()).scale(&Rational::from(2))
        + q[1].clone() * h[0].clone()
}

/// `f·Δg + g·Δf` at the common base point, given `(q, q′)` there.
pub fn h1_pair_jet<T: Scalar>(v: &Jet3<T>, w: &Jet3<T>, q: &[T; 2]) -> Result<T, ProjConnError> {
    same_base(v, w)?;
    Ok(v.p0() * delta_jet(&w.h, q) + w.p0() * delta_jet(&v.h, q))
}

/// The 2-jet `(h, h′, h″ + qh)` read in a projective chart osculating to the
/// connection at the base point, with each entry carried to first order in the
/// base point.
fn moving_jet<T: Scalar>(v: &Jet3<T>, q: &[T; 2]) -> Jet2<Dual<T>> {
    let h = &v.h;
    let z = Dual::new(v.z.clone(), v.z.one_like());
    let top = Dual::new(
        h[2].clone() + q[0].clone() * h[0].clone(),
        h[3].clone() + q[1].clone() * h[0].clone() + q[0].clone() * h[1].clone(),
    );
    Jet2 {
        z,
        h: [
            Dual::new(h[0].clone(), h[1].clone()),
            Dual::new(h[1].clone(), h[2].clone()),
            top,
        ],
    }
}

/// `d/dz` of the trace form along the jets, evaluated at the base point.
pub fn h2_pair_jet<T: Scalar>(v: &Jet3<T>, w: &Jet3<T>, q: &[T; 2]) -> Result<T, ProjConnError> {
    same_base(v, w)?;
    let t = raw_trace(&moving_jet(v, q), &moving_jet(w, q));
    Ok(t.eps.scale(&Rational::from(KAPPA)))
}

/// `f·Δg + g·Δf` for `dx`-coefficients `f`, `g`.
pub fn h1_pair<T: Differential>(conn: &ProjectiveConnection, f: &T, g: &T) -> T {
    f.clone() * conn.delta(g) + g.clone() * conn.delta(f)
}

/// `d(κ·tr(η₂⁻¹ j²f · η₂⁻¹ j²g))` with the base point running over the chart.
pub fn h2_pair<T: Differential>(conn: &ProjectiveConnection, f: &T, g: &T) -> T {
    let z = f.lift(&Polynomial::x().into());
    let q = f.lift(conn.q());
    let jet = |h: &T| {
        let h1 = h.derive();
        let h2 = h1.derive() + q.clone() * h.clone();
        Jet2 {
            z: z.clone(),
            h: [h.clone(), h1, h2],
        }
    };
    trace_form(&jet(f), &jet(g)).derive()
}

/// `H₁` of two vector fields on the curve, as a one-form.
pub fn h1_section(
    conn: &ProjectiveConnection,
    a: &Section,
    b: &Section,
) -> Result<Section, ProjConnError> {
    pair_section(conn, a, b, h1_pair)
}

/// `H₂` of two vector fields on the curve, as a one-form.
pub fn h2_section(
    conn: &ProjectiveConnection,
    a: &Section,
    b: &Section,
) -> Result<Section, ProjConnError> {
    pair_section(conn, a, b, h2_pair)
}

fn pair_section<F>(
    conn: &ProjectiveConnection,
    a: &Section,
    b: &Section,
    pair: F,
) -> Result<Section, ProjConnError>
where
    F: Fn(
        &ProjectiveConnection,
        &crate::riemann::FunctionElement,
        &crate::riemann::FunctionElement,
    ) -> crate::riemann::FunctionElement,
{
    let curve = conn
        .curve()
        .ok_or_else(|| ProjConnError::Internal("not on a curve".into()))?;
    for s in [a, b] {
        if s.k != -1 {
            return Err(crate::riemann::RiemannError::WrongWeight {
                expected: -1,
                got: s.k,
            }
            .into());
        }
    }
    let f = a.dx_coefficient(curve)?;
    let g = b.dx_coefficient(curve)?;
    Ok(Section::from_dx_coefficient(&pair(conn, &f, &g), 1))
}

/// The scalar making `H₂ = H₁` on `f = g = z³` with `q = 0`.
pub fn calibrate_kappa() -> Rational {
    let z3: RationalFunction = Polynomial::from_ints(&[0, 0, 0, 1]).into();
    let flat = ProjectiveConnection::flat();
    let h1 = h1_pair(&flat, &z3, &z3);
    let z: RationalFunction = Polynomial::x().into();
    let jet = |h: &RationalFunction| {
        let h1 = h.derivative();
        let h2 = h1.derivative();
        Jet2 {
            z: z.clone(),
            h: [h.clone(), h1, h2],
        }
    };
    let raw = raw_trace(&jet(&z3), &jet(&z3)).derivative();
    let ratio = &h1 / &raw;
    ratio
        .as_polynomial()
        .filter(|p| p.is_constant())
        .map(|p| p.coeff(0))
        .expect("H1 and raw H2 are proportional")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::projconn::build_connection;
    use crate::riemann::{Curve, FunctionElement};

    fn poly(c: &[i64]) -> RationalFunction {
        Polynomial::from_ints(c).into()
    }

    #[test]
    fn kappa_is_minus_two() {
        assert_eq!(calibrate_kappa(), Rational::from(KAPPA));
    }

    #[test]
    fn h1_examples() {
        let flat = ProjectiveConnection::flat();
        let z3 = poly(&[0, 0, 0, 1]);
        let z4 = poly(&[0, 0, 0, 0, 1]);
        assert_eq!(h1_pair(&flat, &z3, &z3), poly(&[0, 0, 0, 12]));
        assert_eq!(h1_pair(&flat, &z3, &z4), poly(&[0, 0, 0, 0, 30]));
        assert!(h1_pair(&flat, &poly(&[1, 2]), &poly(&[0, 0, 3])).is_zero());
        assert_eq!(h2_pair(&flat, &z3, &z4), poly(&[0, 0, 0, 0, 30]));
    }

    #[test]
    fn jet_level_agrees_with_symbolic() {
        let qf = RationalFunction::new(
            Polynomial::from_ints(&[1, 0, 2]),
            Polynomial::from_ints(&[3, 0, 1]),
        );
        let conn = ProjectiveConnection::on_line(qf.clone());
        let f = Polynomial::from_ints(&[2, -1, 0, 4, 1]);
        let g = Polynomial::from_ints(&[0, 3, 5, 0, 0, -2]);
        let z0 = q(2, 3);
        let (v, w) = (Jet3::of_polynomial(&f, &z0), Jet3::of_polynomial(&g, &z0));
        let qj = [qf.eval(&z0).unwrap(), qf.derivative().eval(&z0).unwrap()];
        let symbolic = h1_pair::<RationalFunction>(&conn, &f.clone().into(), &g.clone().into())
            .eval(&z0)
            .unwrap();
        assert_eq!(h1_pair_jet(&v, &w, &qj).unwrap(), symbolic);
        assert_eq!(h2_pair_jet(&v, &w, &qj).unwrap(), symbolic);
        let elsewhere = Jet3::of_polynomial(&g, &q(1, 1));
        assert_eq!(
            h1_pair_jet(&v, &elsewhere, &qj),
            Err(ProjConnError::BasePointMismatch)
        );
    }

    #[test]
    fn curve_fields_satisfy_the_identity() {
        let c = Curve::default_curve();
        let conn = build_connection(&c).unwrap();
        let f = FunctionElement::from_poly(
            &c,
            Polynomial::from_ints(&[1, 2, 0, -1]),
            Polynomial::from_ints(&[0, 1]),
        );
        let g = FunctionElement::from_poly(
            &c,
            Polynomial::from_ints(&[0, 0, 5]),
            Polynomial::from_ints(&[3]),
        );
        assert_eq!(h1_pair(&conn, &f, &g), h2_pair(&conn, &f, &g));
    }
}
