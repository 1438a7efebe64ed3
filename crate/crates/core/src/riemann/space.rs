//! Bases of weight-`k` sections with bounded poles.

use std::collections::BTreeMap;

use super::{Curve, LocalFrame, PointSpec, RiemannError, Section};
use crate::exact::{Polynomial, Rational, RationalFunction, RationalMatrix};

/// Allowed pole order at each point. Unlisted points must be holomorphic.
pub type PoleBounds = BTreeMap<PointSpec, i64>;

/// An exact basis of a pole-bounded section space, with the ansatz it was cut
/// out of so that membership and coordinates can be read back.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    k: i32,
    denominator: Polynomial,
    window: usize,
    constraints: RationalMatrix,
    free: Vec<usize>,
    basis: Vec<Section>,
}

impl SectionSpace {
    pub fn weight(&self) -> i32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Section] {
        &self.basis
    }

    /// Number of ansatz monomials; `x^i/D` come first, then `x^i y/D`.
    pub fn ansatz_len(&self) -> usize {
        2 * (self.window + 1)
    }

    /// Coefficients of `sec` in the ansatz, if it is of the ansatz shape.
    pub fn ansatz_coordinates(&self, sec: &Section) -> Option<Vec<Rational>> {
        if sec.k != self.k {
            return None;
        }
        let d: RationalFunction = self.denominator.clone().into();
        let p0 = (&sec.r0 * &d).as_polynomial()?.clone();
        let p1 = (&sec.r1 * &d).as_polynomial()?.clone();
        let n = self.window + 1;
        if p0.coeffs().len() > n || p1.coeffs().len() > n {
            return None;
        }
        Some(
            (0..n)
                .map(|i| p0.coeff(i))
                .chain((0..n).map(|i| p1.coeff(i)))
                .collect(),
        )
    }

    /// Coordinates of `sec` in [`SectionSpace::basis`], or `None` if it is not a member.
    pub fn coordinates(&self, sec: &Section) -> Option<Vec<Rational>> {
        let v = self.ansatz_coordinates(sec)?;
        if !self.constraints.mul_vec(&v).iter().all(Rational::is_zero) {
            return None;
        }
        Some(self.free.iter().map(|&j| v[j].clone()).collect())
    }

    pub fn contains(&self, sec: &Section) -> bool {
        self.coordinates(sec).is_some()
    }

    pub fn combination(&self, coeffs: &[Rational]) -> Section {
        Section::combination(self.k, coeffs, &self.basis)
    }
}

fn monomial(k: i32, i: usize, with_y: bool, den: &Polynomial) -> Section {
    let m: RationalFunction = Polynomial::monomial(Rational::one(), i).into();
    let m = &m / &RationalFunction::from(den.clone());
    if with_y {
        Section::new(k, RationalFunction::zero(), m)
    } else {
        Section::new(k, m, RationalFunction::zero())
    }
}

/// Basis of the weight-`k` sections whose pole order at each point is at most
/// its bound, holomorphic elsewhere.
///
/// Sections are sought in the form `(p₀(x) + p₁(x)·y)/D(x) · (dx/y)^k` where `D`
/// clears the allowed finite poles and `deg pᵢ ≤ B∞ + deg D + |k| + 6`, with
/// `B∞` the larger of the bounds at the two points at infinity. Pole conditions
/// are imposed by expanding at every listed point, its conjugate, and both
/// points at infinity.
pub fn section_space(
    curve: &Curve,
    k: i32,
    bounds: &PoleBounds,
) -> Result<SectionSpace, RiemannError> {
    for p in bounds.keys() {
        curve.validate_point(p)?;
    }
    let bound = |p: &PointSpec| bounds.get(p).copied().unwrap_or(0);

    // Finite poles: x - e has a double zero at a branch point.
    let mut factors: BTreeMap<Rational, usize> = BTreeMap::new();
    for (p, &b) in bounds {
        if b <= 0 {
            continue;
        }
        let (x, e) = match p {
            PointSpec::Branch(e) => (e, ((b + 1) / 2) as usize),
            PointSpec::Affine { x, .. } => (x, b as usize),
            _ => continue,
        };
        let slot = factors.entry(x.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    let denominator = factors.iter().fold(Polynomial::one(), |acc, (x, &e)| {
        &acc * &Polynomial::linear_root(x).pow(e as u32)
    });
    let deg_d = denominator.degree().unwrap_or(0);
    let b_inf = bound(&PointSpec::InfPlus)
        .max(bound(&PointSpec::InfMinus))
        .max(0) as usize;
    let window = b_inf + deg_d + k.unsigned_abs() as usize + 6;

    let ansatz: Vec<Section> = [false, true]
        .iter()
        .flat_map(|&with_y| (0..=window).map(move |i| (i, with_y)))
        .map(|(i, with_y)| monomial(k, i, with_y, &denominator))
        .collect();

    let mut points: Vec<PointSpec> = vec![PointSpec::InfPlus, PointSpec::InfMinus];
    for p in bounds.keys() {
        for q in [p.clone(), p.conjugate()] {
            if !points.contains(&q) {
                points.push(q);
            }
        }
    }

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in &points {
        let order = -bound(p);
        let frame = LocalFrame::new(curve, p)?;
        let rel =
            window as i64 + 3 * deg_d as i64 + 3 * k.unsigned_abs() as i64 + 16 + order.max(0);
        let prepared = frame.prepare(k, rel)?;
        let mut series = Vec::with_capacity(ansatz.len());
        for sec in &ansatz {
            let s = prepared.section(sec)?;
            let s = if s.precision() >= order {
                s
            } else {
                frame.expand(sec, order)?
            };
            series.push(s);
        }
        let low = series
            .iter()
            .map(|s| s.valuation())
            .min()
            .unwrap_or(order)
            .min(order);
        for e in low..order {
            let row: Vec<Rational> = series
                .iter()
                .map(|s| s.coeff(e))
                .collect::<Result<_, _>>()?;
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }

    let constraints = if rows.is_empty() {
        RationalMatrix::zeros(0, ansatz.len())
    } else {
        RationalMatrix::from_rows(rows)
    };
    let pivots = constraints.rref().pivots;
    let free: Vec<usize> = (0..ansatz.len()).filter(|c| !pivots.contains(c)).collect();
    let basis = constraints
        .kernel_basis()
        .iter()
        .map(|v| Section::combination(k, v, &ansatz))
        .collect();
    Ok(SectionSpace {
        k,
        denominator,
        window,
        constraints,
        free,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn dim(curve: &Curve, k: i32, bounds: &[(PointSpec, i64)]) -> usize {
        section_space(curve, k, &bounds.iter().cloned().collect())
            .unwrap()
            .dim()
    }

    #[test]
    fn holomorphic_dimensions() {
        let c = Curve::default_curve();
        let s1 = section_space(&c, 1, &PoleBounds::new()).unwrap();
        assert_eq!(s1.dim(), 2);
        assert!(s1.contains(&Section::x_power(1, 0)));
        assert!(s1.contains(&Section::x_power(1, 1)));
        assert!(!s1.contains(&Section::x_power(1, 2)));
        assert_eq!(dim(&c, 2, &[]), 3);
        assert_eq!(dim(&c, -1, &[]), 0);
        assert_eq!(dim(&c, 0, &[]), 1);
    }

    #[test]
    fn poles_at_infinity() {
        let c = Curve::default_curve();
        // Riemann–Roch for a degree-n divisor supported at infinity, n large: n + 1 - g.
        assert_eq!(
            dim(&c, 0, &[(PointSpec::InfPlus, 6), (PointSpec::InfMinus, 6)]),
            11
        );
        // One-forms with a pole only at one point: the residue must vanish, so no simple pole.
        assert_eq!(dim(&c, 1, &[(PointSpec::InfPlus, 1)]), 2);
        assert_eq!(
            dim(&c, 1, &[(PointSpec::InfPlus, 1), (PointSpec::InfMinus, 1)]),
            3
        );
    }

    #[test]
    fn finite_poles() {
        let c = Curve::default_curve();
        // 1/(x - e) has a double pole at the Weierstrass point e.
        assert_eq!(dim(&c, 0, &[(PointSpec::Branch(q(2, 1)), 2)]), 2);
        assert_eq!(dim(&c, 0, &[(PointSpec::Branch(q(2, 1)), 4)]), 3);
        let c =
            Curve::from_roots(&[q(-2, 1), q(-1, 1), q(1, 1), q(3, 1), q(4, 1), q(6, 1)]).unwrap();
        let p = PointSpec::Affine {
            x: q(0, 1),
            y: q(12, 1),
        };
        assert_eq!(dim(&c, 0, &[(p.clone(), 1)]), 1);
        assert_eq!(dim(&c, 1, &[(p.clone(), 1), (p.conjugate(), 1)]), 3);
    }
}
