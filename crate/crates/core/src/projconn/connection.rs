//! Projective connections and the third-order operator `Δ`.

use serde::{Deserialize, Serialize};

use super::{schwarzian, schwarzian_series, ProjConnError};
use crate::exact::{
    Differential, LaurentSeries, Polynomial, Rational, RationalFunction, RationalMatrix,
};
use crate::riemann::{Curve, FunctionElement, LocalFrame, PointSpec, Section};

/// Where a projective connection lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Host<'a> {
    ProjectiveLine,
    Curve(&'a Curve),
}

/// A projective connection given by its coefficient `q` in the `x`-chart (on a
/// curve) or the affine `z`-chart (on the projective line). Under a change of
/// coordinate `x = σ(t)` the coefficient becomes `(q∘σ)·σ′² + S(σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveConnection {
    q: RationalFunction,
    curve: Option<Curve>,
    family_params: Vec<Rational>,
}

impl ProjectiveConnection {
    /// The standard structure on the projective line, `q = 0`.
    pub fn flat() -> Self {
        ProjectiveConnection {
            q: RationalFunction::zero(),
            curve: None,
            family_params: Vec::new(),
        }
    }

    /// An arbitrary coefficient on the projective line.
    pub fn on_line(q: RationalFunction) -> Self {
        ProjectiveConnection {
            q,
            curve: None,
            family_params: Vec::new(),
        }
    }

    pub fn q(&self) -> &RationalFunction {
        &self.q
    }

    pub fn host(&self) -> Host<'_> {
        match &self.curve {
            Some(c) => Host::Curve(c),
            None => Host::ProjectiveLine,
        }
    }

    pub fn curve(&self) -> Option<&Curve> {
        self.curve.as_ref()
    }

    /// The residues `cᵢ` of `q` at the branch points.
    pub fn family_params(&self) -> &[Rational] {
        &self.family_params
    }

    /// The coefficient in the chart `x = σ(t)` of the projective line.
    pub fn transformed(&self, sigma: &RationalFunction) -> Result<RationalFunction, ProjConnError> {
        let d = sigma.derivative();
        Ok(&(&self.q.compose(sigma) * &(&d * &d)) + &schwarzian(sigma)?)
    }

    /// The coefficient in the local parameter of `frame`, to `O(t^order)`.
    pub fn local_coefficient(
        &self,
        frame: &LocalFrame,
        order: i64,
    ) -> Result<LaurentSeries, ProjConnError> {
        let mut rel = order + 12;
        for _ in 0..8 {
            let sigma = frame.x().truncate(frame.x().valuation() + rel + 4);
            let d = frame.dx();
            let s = &(&frame.rational(&self.q, rel)? * &(&d * &d)) + &schwarzian_series(&sigma)?;
            if s.precision() >= order {
                return Ok(s.truncate(order));
            }
            rel += order - s.precision() + 4;
        }
        Err(ProjConnError::Internal(format!(
            "cannot expand q at {}",
            frame.point()
        )))
    }

    /// Checks that the transformed coefficient is holomorphic at every branch
    /// point and at both points at infinity.
    pub fn check_holomorphic(&self) -> Result<(), ProjConnError> {
        let curve = self
            .curve()
            .ok_or_else(|| ProjConnError::Internal("not on a curve".into()))?;
        let mut points = vec![PointSpec::InfPlus, PointSpec::InfMinus];
        points.extend(curve.rational_roots().into_iter().map(PointSpec::Branch));
        for p in points {
            let frame = LocalFrame::new(curve, &p)?;
            let s = self.local_coefficient(&frame, 2)?;
            if s.valuation() < 0 {
                return Err(ProjConnError::NotHolomorphic(p.to_string()));
            }
        }
        Ok(())
    }

    /// `Δ(H∂) = (H‴ + 2qH′ + q′H)·dx²` on the `dx`-coefficient of a vector field.
    pub fn delta<T: Differential>(&self, h: &T) -> T {
        apply_delta(&h.lift(&self.q), h)
    }

    /// `Δ` of a weight −1 section, as a weight 2 section.
    pub fn apply_delta(&self, theta: &Section) -> Result<Section, ProjConnError> {
        let curve = self
            .curve()
            .ok_or_else(|| ProjConnError::Internal("not on a curve".into()))?;
        if theta.k != -1 {
            return Err(crate::riemann::RiemannError::WrongWeight {
                expected: -1,
                got: theta.k,
            }
            .into());
        }
        let h = theta.dx_coefficient(curve)?;
        Ok(Section::from_dx_coefficient(&self.delta(&h), 2))
    }

    /// `q` as a function-field element of `curve`.
    pub fn q_element(&self) -> Result<FunctionElement, ProjConnError> {
        let curve = self
            .curve()
            .ok_or_else(|| ProjConnError::Internal("not on a curve".into()))?;
        Ok(FunctionElement::one(curve).lift(&self.q))
    }
}

/// `h‴ + 2qh′ + q′h`.
pub fn apply_delta<T: Differential>(q: &T, h: &T) -> T {
    let h1 = h.derive();
    let h3 = h1.derive().derive();
    h3 + (q.clone() * h1).scale(&Rational::from(2)) + q.derive() * h.clone()
}

/// The connection `Σᵢ 3/(8(x−eᵢ)²) + cᵢ/(x−eᵢ)` with `q = O(x⁻⁴)` at infinity.
///
/// The residues solve `Σcᵢ = 0`, `Σcᵢeᵢ = −9/4`, `Σ(cᵢeᵢ² + ¾eᵢ) = 0`; the free
/// directions of this system are the three parameters in `free`, taken in the
/// order of the non-pivot columns of its reduced echelon form.
pub fn build_connection_in_family(
    curve: &Curve,
    free: &[Rational],
) -> Result<ProjectiveConnection, ProjConnError> {
    if !curve.f().is_squarefree() {
        return Err(ProjConnError::NotSquarefree(curve.f().to_string()));
    }
    let roots = curve
        .branch_points()
        .ok_or_else(|| ProjConnError::IrrationalBranchPoints(curve.f().to_string()))?;
    let three_quarters = Rational::new(3, 4);
    let system = RationalMatrix::from_rows(vec![
        roots.iter().map(|_| Rational::one()).collect(),
        roots.clone(),
        roots.iter().map(|e| e * e).collect(),
    ]);
    let rhs = vec![
        Rational::zero(),
        Rational::new(-9, 4),
        -&(roots.iter().cloned().sum::<Rational>() * three_quarters),
    ];
    let mut c = system
        .solve(&rhs)
        .ok_or_else(|| ProjConnError::Internal("residue system is inconsistent".into()))?;
    let kernel = system.kernel_basis();
    if free.len() != kernel.len() && !free.is_empty() {
        return Err(ProjConnError::Internal(format!(
            "expected {} family parameters, got {}",
            kernel.len(),
            free.len()
        )));
    }
    for (t, v) in free.iter().zip(&kernel) {
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci += &(t * vi);
        }
    }
    let mut q = RationalFunction::zero();
    for (e, ci) in roots.iter().zip(&c) {
        let lin: RationalFunction = Polynomial::linear_root(e).into();
        let double = RationalFunction::new(
            Polynomial::constant(Rational::new(3, 8)),
            Polynomial::linear_root(e).pow(2),
        );
        q = &(&q + &double) + &lin.recip().scale(ci);
    }
    let conn = ProjectiveConnection {
        q,
        curve: Some(curve.clone()),
        family_params: c,
    };
    Ok(conn)
}

/// [`build_connection_in_family`] with all free parameters zero.
pub fn build_connection(curve: &Curve) -> Result<ProjectiveConnection, ProjConnError> {
    build_connection_in_family(curve, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn default_connection_is_holomorphic() {
        let c = Curve::default_curve();
        let conn = build_connection(&c).unwrap();
        conn.check_holomorphic().unwrap();
        let p = conn.family_params();
        assert_eq!(p.iter().cloned().sum::<Rational>(), q(0, 1));
        // q = O(x^-4)
        let s = conn
            .local_coefficient(&LocalFrame::new(&c, &PointSpec::InfPlus).unwrap(), 1)
            .unwrap();
        assert!(s.valuation() >= 0);
    }

    #[test]
    fn branch_coefficient_has_no_double_pole() {
        let c = Curve::default_curve();
        let conn = build_connection(&c).unwrap();
        for (i, e) in c.branch_points().unwrap().iter().enumerate() {
            let frame = LocalFrame::new(&c, &PointSpec::Branch(e.clone())).unwrap();
            let s = conn.local_coefficient(&frame, 2).unwrap();
            let lambda = c.f().derivative().eval(e);
            // q̃ = 4λcᵢ + O(t²)
            assert_eq!(
                s.coeff(0).unwrap(),
                &(&lambda * &conn.family_params()[i]) * &q(4, 1)
            );
            assert_eq!(s.coeff(1).unwrap(), q(0, 1));
        }
    }

    #[test]
    fn delta_examples_on_the_line() {
        let flat = ProjectiveConnection::flat();
        let z3: RationalFunction = Polynomial::from_ints(&[0, 0, 0, 1]).into();
        assert_eq!(flat.delta(&z3), RationalFunction::constant(q(6, 1)));
        let z2: RationalFunction = Polynomial::from_ints(&[0, 0, 1]).into();
        assert!(flat.delta(&z2).is_zero());
    }

    #[test]
    fn family_members_are_holomorphic() {
        let c = Curve::default_curve();
        let conn = build_connection_in_family(&c, &[q(1, 3), q(-2, 1), q(5, 7)]).unwrap();
        conn.check_holomorphic().unwrap();
        assert!(build_connection_in_family(&c, &[q(1, 1)]).is_err());
    }

    #[test]
    fn serializes_with_curve_and_params() {
        let c = Curve::default_curve();
        let conn = build_connection(&c).unwrap();
        let v = serde_json::to_value(&conn).unwrap();
        assert!(v.get("q").unwrap().get("num").is_some());
        assert_eq!(v["family_params"].as_array().unwrap().len(), 6);
        let back: ProjectiveConnection = serde_json::from_value(v).unwrap();
        assert_eq!(back, conn);
    }
}
