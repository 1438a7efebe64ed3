//! Local parameters at points of the curve and Laurent expansions of sections.

use std::sync::Arc;

use super::{Curve, FunctionElement, PointSpec, RiemannError, Section};
use crate::exact::{LaurentSeries, Polynomial, Rational, RationalFunction, EXACT};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Chart {
    /// `x = 1/s`, `y = sign·s⁻³·√(s⁶ f(1/s))`.
    Infinity { sign: i32 },
    /// `x = e + λt²`, `y = c·t·(1 + O(t²))` with `c² = λ f′(e)`.
    Branch {
        e: Rational,
        lambda: Rational,
        c: Rational,
    },
    /// `x = x₀ + u`, `y = y₀·(1 + O(u))`.
    Affine { x0: Rational, y0: Rational },
}

/// A local parameter at a point, together with the expansions of `x` and `y`.
#[derive(Clone, Debug)]
pub struct LocalFrame {
    point: PointSpec,
    chart: Chart,
    f: Arc<Polynomial>,
}

impl LocalFrame {
    /// The standard parameter at `p`. At a branch point `e` this is `t` with
    /// `x = e + f′(e)·t²`, the smallest choice that keeps `y` rational.
    pub fn new(curve: &Curve, p: &PointSpec) -> Result<Self, RiemannError> {
        curve.validate_point(p)?;
        let chart = match p {
            PointSpec::InfPlus => Chart::Infinity { sign: 1 },
            PointSpec::InfMinus => Chart::Infinity { sign: -1 },
            PointSpec::Branch(e) => {
                let lambda = curve.f().derivative().eval(e);
                return LocalFrame::branch(curve, e, &lambda);
            }
            PointSpec::Affine { x, y } => Chart::Affine {
                x0: x.clone(),
                y0: y.clone(),
            },
        };
        Ok(LocalFrame {
            point: p.clone(),
            chart,
            f: curve.f_arc().clone(),
        })
    }

    /// The parameter `t` with `x = e + λt²` at the branch point `e`.
    pub fn branch(curve: &Curve, e: &Rational, lambda: &Rational) -> Result<Self, RiemannError> {
        let p = PointSpec::Branch(e.clone());
        curve.validate_point(&p)?;
        let c = (lambda * &curve.f().derivative().eval(e))
            .sqrt_exact()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| RiemannError::BadScale(lambda.to_string()))?;
        Ok(LocalFrame {
            point: p,
            chart: Chart::Branch {
                e: e.clone(),
                lambda: lambda.clone(),
                c,
            },
            f: curve.f_arc().clone(),
        })
    }

    pub fn point(&self) -> &PointSpec {
        &self.point
    }

    pub fn parameter(&self) -> &'static str {
        match self.chart {
            Chart::Infinity { .. } => "s",
            Chart::Branch { .. } => "t",
            Chart::Affine { .. } => "u",
        }
    }

    /// `p(x)` in the local parameter, exactly.
    pub fn poly(&self, p: &Polynomial) -> LaurentSeries {
        match &self.chart {
            Chart::Infinity { .. } => match p.degree() {
                None => LaurentSeries::zero(EXACT),
                Some(d) => LaurentSeries::exact(&p.reversed(d), -(d as i64)),
            },
            Chart::Branch { e, lambda, .. } => {
                let shifted = p.taylor_shift(e);
                let mut coeffs = vec![Rational::zero(); 2 * shifted.coeffs().len()];
                let mut lp = Rational::one();
                for (j, c) in shifted.coeffs().iter().enumerate() {
                    coeffs[2 * j] = c * &lp;
                    lp = &lp * lambda;
                }
                LaurentSeries::exact(&Polynomial::new(coeffs), 0)
            }
            Chart::Affine { x0, .. } => LaurentSeries::exact(&p.taylor_shift(x0), 0),
        }
    }

    /// `x` in the local parameter.
    pub fn x(&self) -> LaurentSeries {
        self.poly(&Polynomial::x())
    }

    /// `dx/d(parameter)`.
    pub fn dx(&self) -> LaurentSeries {
        self.x().derivative()
    }

    /// `y` to relative precision `rel`.
    pub fn y(&self, rel: i64) -> Result<LaurentSeries, RiemannError> {
        let f = &*self.f;
        Ok(match &self.chart {
            Chart::Infinity { sign } => {
                let root = LaurentSeries::from_polynomial(&f.reversed(6), rel).sqrt()?;
                root.shift(-3).scale(&Rational::from(*sign as i64))
            }
            Chart::Branch { .. } => {
                // f(e + λt²) = t²·g(t) with g(0) = λ f′(e).
                let g = self.poly(f).shift(-2).truncate(rel);
                g.sqrt()?.shift(1)
            }
            Chart::Affine { x0, y0 } => {
                let ratio = LaurentSeries::from_polynomial(&f.taylor_shift(x0), rel)
                    .scale(&(y0 * y0).recip());
                ratio.sqrt()?.scale(y0)
            }
        })
    }

    /// `r(x)` with the denominator inverted to relative precision `rel`.
    pub fn rational(&self, r: &RationalFunction, rel: i64) -> Result<LaurentSeries, RiemannError> {
        let num = self.poly(r.num());
        if r.is_polynomial() {
            return Ok(num);
        }
        let den = self.poly(r.den());
        let den = den.truncate(den.valuation() + rel);
        Ok(&num * &den.inverse()?)
    }

    /// Expansion data for sections of weight `k` at working relative precision `rel`.
    pub(crate) fn prepare(&self, k: i32, rel: i64) -> Result<Prepared<'_>, RiemannError> {
        let y = self.y(rel)?;
        let dx_over_y = self.dx().div(&y)?;
        let wk = dx_over_y.pow(k)?;
        Ok(Prepared {
            frame: self,
            rel,
            y,
            wk,
        })
    }

    /// Coefficient series of `sec` in `d(parameter)^k`, known at least to `O(t^order)`.
    pub fn expand(&self, sec: &Section, order: i64) -> Result<LaurentSeries, RiemannError> {
        if sec.is_zero() {
            return Ok(LaurentSeries::zero(order));
        }
        let mut rel = (order + 3 * sec.k.unsigned_abs() as i64 + 8).max(8);
        for _ in 0..12 {
            let s = self.prepare(sec.k, rel)?.section(sec)?;
            if s.precision() >= order {
                return Ok(s.truncate(order));
            }
            rel += order - s.precision() + 4;
        }
        Err(RiemannError::InsufficientPrecision {
            point: self.point.to_string(),
            parameter: self.parameter(),
            order,
        })
    }

    /// Residue of a one-form.
    pub fn residue(&self, sec: &Section) -> Result<Rational, RiemannError> {
        if sec.k != 1 {
            return Err(RiemannError::WrongWeight {
                expected: 1,
                got: sec.k,
            });
        }
        Ok(self.expand(sec, 0)?.residue()?)
    }

    /// A function-field element `W` as a series, known at least to `O(t^order)`.
    pub fn expand_function(
        &self,
        w: &FunctionElement,
        order: i64,
    ) -> Result<LaurentSeries, RiemannError> {
        self.expand(&Section::function(w), order)
    }
}

/// Cached expansions of `y` and `(dx/y)^k` in one frame.
pub(crate) struct Prepared<'a> {
    frame: &'a LocalFrame,
    rel: i64,
    y: LaurentSeries,
    wk: LaurentSeries,
}

impl Prepared<'_> {
    pub(crate) fn section(&self, sec: &Section) -> Result<LaurentSeries, RiemannError> {
        let r0 = self.frame.rational(&sec.r0, self.rel)?;
        let r1 = self.frame.rational(&sec.r1, self.rel)?;
        let body = &r0 + &(&r1 * &self.y);
        Ok(&body * &self.wk)
    }
}

impl Curve {
    /// Laurent expansion of `sec` at `p` in the standard local parameter.
    pub fn expand_at(
        &self,
        sec: &Section,
        p: &PointSpec,
        order: i64,
    ) -> Result<LaurentSeries, RiemannError> {
        LocalFrame::new(self, p)?.expand(sec, order)
    }

    /// Residue of the one-form `sec` at `p`.
    pub fn residue_at(&self, sec: &Section, p: &PointSpec) -> Result<Rational, RiemannError> {
        if sec.k != 1 {
            return Err(RiemannError::WrongWeight {
                expected: 1,
                got: sec.k,
            });
        }
        LocalFrame::new(self, p)?.residue(sec)
    }

    /// Order of vanishing of `sec` at `p`, or `None` if it vanishes to the
    /// probed order `limit`.
    pub fn order_at(
        &self,
        sec: &Section,
        p: &PointSpec,
        limit: i64,
    ) -> Result<Option<i64>, RiemannError> {
        let s = self.expand_at(sec, p, limit)?;
        Ok((!s.is_zero()).then(|| s.valuation()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn y_squares_to_f() {
        let c =
            Curve::from_roots(&[q(-2, 1), q(-1, 1), q(1, 1), q(3, 1), q(4, 1), q(6, 1)]).unwrap();
        let points = [
            PointSpec::InfPlus,
            PointSpec::InfMinus,
            PointSpec::Branch(q(3, 1)),
            PointSpec::Affine {
                x: q(0, 1),
                y: q(12, 1),
            },
            PointSpec::Affine {
                x: q(0, 1),
                y: q(-12, 1),
            },
        ];
        for p in points {
            let fr = LocalFrame::new(&c, &p).unwrap();
            let y = fr.y(20).unwrap();
            let f = fr.poly(c.f());
            assert!((&y * &y).agrees_with(&f), "{p}");
            assert!((&y * &y).precision() >= f.valuation() + 20 - 1);
        }
    }

    #[test]
    fn dx_over_y_at_infinity() {
        let c = Curve::default_curve();
        let s = c
            .expand_at(&Section::x_power(1, 0), &PointSpec::InfPlus, 6)
            .unwrap();
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.leading(), Some(&q(-1, 1)));
    }

    #[test]
    fn zero_section_expands_to_zero() {
        let c = Curve::default_curve();
        let s = c
            .expand_at(&Section::zero(2), &PointSpec::Branch(q(0, 1)), 5)
            .unwrap();
        assert!(s.is_zero());
        assert_eq!(s.precision(), 5);
    }

    #[test]
    fn inadmissible_branch_scale() {
        let c = Curve::default_curve();
        // f'(0) = -120; λ = 1 would need √(-120)
        assert!(matches!(
            LocalFrame::branch(&c, &q(0, 1), &q(1, 1)),
            Err(RiemannError::BadScale(_))
        ));
        assert!(LocalFrame::branch(&c, &q(0, 1), &q(-30, 1)).is_ok());
    }

    #[test]
    fn residue_needs_weight_one() {
        let c = Curve::default_curve();
        assert!(matches!(
            c.residue_at(&Section::x_power(2, 0), &PointSpec::InfPlus),
            Err(RiemannError::WrongWeight {
                expected: 1,
                got: 2
            })
        ));
    }
}
