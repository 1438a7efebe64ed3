//! Finite-dimensional model of the two-chart Čech complex for the cover
//! `U_a = X∖{b}`, `U_b = X∖{a}`, `U = U_a ∩ U_b`.

use std::sync::Arc;

use rand::Rng;

use super::quotient::{rank_of, Quotient};
use super::{CechCocycle, CechError, Coboundary, Geometry};
use crate::exact::{Polynomial, Rational, RationalMatrix};
use crate::riemann::{section_space, PoleBounds, Section, SectionSpace};

/// The spaces of the model at truncation `N`:
/// vector fields on `U` with poles of order at most `N` at `a` and `b`, on `U_a`
/// and `U_b` with the same bound at the removed point, and quadratic
/// differentials on `U_a`, `U_b` with poles of order at most `N + 6`.
#[derive(Clone, Debug)]
pub struct CechModel {
    geometry: Arc<Geometry>,
    n: i64,
    theta_u: SectionSpace,
    theta_a: SectionSpace,
    theta_b: SectionSpace,
    omega_a: SectionSpace,
    omega_b: SectionSpace,
    global_quadratic: SectionSpace,
    cocycles: Vec<Vec<Rational>>,
    coboundaries: Vec<Vec<Rational>>,
    h1: Quotient,
    tangent_h1: Quotient,
}

fn bounds(pairs: &[(&crate::riemann::PointSpec, i64)]) -> PoleBounds {
    pairs.iter().map(|(p, b)| ((*p).clone(), *b)).collect()
}

/// Coefficient vector of a weight-2 section with polynomial coefficients,
/// padded to `len` entries per coefficient.
fn poly_vector(sec: &Section, len: usize) -> Result<Vec<Rational>, CechError> {
    let p0 = sec
        .r0
        .as_polynomial()
        .ok_or_else(|| CechError::NotPolynomial(sec.to_string()))?;
    let p1 = sec
        .r1
        .as_polynomial()
        .ok_or_else(|| CechError::NotPolynomial(sec.to_string()))?;
    if p0.coeffs().len() > len || p1.coeffs().len() > len {
        return Err(CechError::Internal(format!(
            "{sec} exceeds the coefficient window"
        )));
    }
    Ok((0..len)
        .map(|i| p0.coeff(i))
        .chain((0..len).map(|i| p1.coeff(i)))
        .collect())
}

fn poly_len(secs: &[&Section]) -> usize {
    let len = |p: &Polynomial| p.coeffs().len();
    secs.iter()
        .flat_map(|s| [s.r0.num(), s.r1.num()])
        .map(len)
        .max()
        .unwrap_or(0)
}

impl CechModel {
    pub fn new(geometry: Arc<Geometry>, n: i64) -> Result<Self, CechError> {
        if n < 4 {
            return Err(CechError::TruncationTooSmall(n));
        }
        let curve = geometry.curve();
        let (a, b) = (geometry.a(), geometry.b());
        let theta_u = section_space(curve, -1, &bounds(&[(a, n), (b, n)]))?;
        let theta_a = section_space(curve, -1, &bounds(&[(b, n)]))?;
        let theta_b = section_space(curve, -1, &bounds(&[(a, n)]))?;
        let omega_a = section_space(curve, 2, &bounds(&[(b, n + 6)]))?;
        let omega_b = section_space(curve, 2, &bounds(&[(a, n + 6)]))?;
        let global_quadratic = section_space(curve, 2, &PoleBounds::new())?;

        // Cocycle condition ω_a − ω_b − Δθ = 0 on polynomial coefficients.
        let conn = geometry.connection();
        let deltas: Vec<Section> = theta_u
            .basis()
            .iter()
            .map(|t| conn.apply_delta(t))
            .collect::<Result<_, _>>()?;
        let all: Vec<&Section> = deltas
            .iter()
            .chain(omega_a.basis())
            .chain(omega_b.basis())
            .collect();
        let len = poly_len(&all);
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        for d in &deltas {
            columns.push(poly_vector(&(-d), len)?);
        }
        for w in omega_a.basis() {
            columns.push(poly_vector(w, len)?);
        }
        for w in omega_b.basis() {
            columns.push(poly_vector(&(-w), len)?);
        }
        let system = RationalMatrix::from_columns(&columns, 2 * len);
        let cocycles = system.kernel_basis();

        let mut model = CechModel {
            geometry,
            n,
            theta_u,
            theta_a,
            theta_b,
            omega_a,
            omega_b,
            global_quadratic,
            cocycles,
            coboundaries: Vec::new(),
            h1: Quotient::new(0, &[], &[]),
            tangent_h1: Quotient::new(0, &[], &[]),
        };
        let generators: Vec<Coboundary> = model.coboundary_generators();
        model.coboundaries = generators
            .iter()
            .map(|cb| model.vector(&model.coboundary_cocycle(cb)?))
            .collect::<Result<_, _>>()?;
        model.h1 = Quotient::new(model.ambient_dim(), &model.cocycles, &model.coboundaries);

        let theta_dim = model.theta_u.dim();
        let local: Vec<Vec<Rational>> = model
            .theta_a
            .basis()
            .iter()
            .chain(model.theta_b.basis())
            .map(|t| {
                model
                    .theta_u
                    .coordinates(t)
                    .ok_or_else(|| CechError::Internal("local field outside U".into()))
            })
            .collect::<Result<_, _>>()?;
        let identity: Vec<Vec<Rational>> = RationalMatrix::identity(theta_dim).to_rows();
        model.tangent_h1 = Quotient::new(theta_dim, &identity, &local);
        Ok(model)
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn truncation(&self) -> i64 {
        self.n
    }

    fn ambient_dim(&self) -> usize {
        self.theta_u.dim() + self.omega_a.dim() + self.omega_b.dim()
    }

    pub fn theta_space(&self) -> &SectionSpace {
        &self.theta_u
    }

    pub fn local_theta_spaces(&self) -> (&SectionSpace, &SectionSpace) {
        (&self.theta_a, &self.theta_b)
    }

    pub fn omega_spaces(&self) -> (&SectionSpace, &SectionSpace) {
        (&self.omega_a, &self.omega_b)
    }

    /// Basis of the holomorphic quadratic differentials.
    pub fn global_quadratic(&self) -> &SectionSpace {
        &self.global_quadratic
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycles.len()
    }

    pub fn coboundary_rank(&self) -> usize {
        self.h1.sub_rank()
    }

    pub fn h1_dim(&self) -> usize {
        self.h1.dim()
    }

    /// Dimension of `H⁰(U,T)/(H⁰(U_a,T) + H⁰(U_b,T))`.
    pub fn tangent_h1_dim(&self) -> usize {
        self.tangent_h1.dim()
    }

    pub fn coboundary_generators(&self) -> Vec<Coboundary> {
        let zero = Section::zero(-1);
        self.theta_a
            .basis()
            .iter()
            .map(|t| Coboundary {
                theta_a: t.clone(),
                theta_b: zero.clone(),
            })
            .chain(self.theta_b.basis().iter().map(|t| Coboundary {
                theta_a: zero.clone(),
                theta_b: t.clone(),
            }))
            .collect()
    }

    fn cocycle_from_vector(&self, v: &[Rational]) -> CechCocycle {
        let (nt, na) = (self.theta_u.dim(), self.omega_a.dim());
        CechCocycle {
            theta: self.theta_u.combination(&v[..nt]),
            omega_a: self.omega_a.combination(&v[nt..nt + na]),
            omega_b: self.omega_b.combination(&v[nt + na..]),
            geometry: self.geometry.clone(),
        }
    }

    /// Coordinates of a cocycle in the model's ambient space.
    pub fn vector(&self, c: &CechCocycle) -> Result<Vec<Rational>, CechError> {
        self.check_geometry(c)?;
        let outside =
            |what: &str| CechError::OutsideTruncation(format!("{what} at N = {}", self.n));
        let mut v = self
            .theta_u
            .coordinates(&c.theta)
            .ok_or_else(|| outside("theta"))?;
        v.extend(
            self.omega_a
                .coordinates(&c.omega_a)
                .ok_or_else(|| outside("omega_a"))?,
        );
        v.extend(
            self.omega_b
                .coordinates(&c.omega_b)
                .ok_or_else(|| outside("omega_b"))?,
        );
        Ok(v)
    }

    pub(crate) fn check_geometry(&self, c: &CechCocycle) -> Result<(), CechError> {
        if *c.geometry != *self.geometry {
            return Err(CechError::GeometryMismatch);
        }
        Ok(())
    }

    /// `(θ_a − θ_b, Δθ_a, Δθ_b)`.
    pub fn coboundary_cocycle(&self, cb: &Coboundary) -> Result<CechCocycle, CechError> {
        let conn = self.geometry.connection();
        Ok(CechCocycle {
            theta: &cb.theta_a - &cb.theta_b,
            omega_a: conn.apply_delta(&cb.theta_a)?,
            omega_b: conn.apply_delta(&cb.theta_b)?,
            geometry: self.geometry.clone(),
        })
    }

    /// Basis of the cocycles of the model.
    pub fn cocycle_basis(&self) -> Vec<CechCocycle> {
        self.cocycles
            .iter()
            .map(|v| self.cocycle_from_vector(v))
            .collect()
    }

    /// Representatives of a basis of `ℍ¹`.
    pub fn h1_representatives(&self) -> Vec<CechCocycle> {
        self.h1
            .representatives()
            .iter()
            .map(|v| self.cocycle_from_vector(v))
            .collect()
    }

    /// Coordinates of the class of `c` in the basis of [`CechModel::h1_representatives`].
    pub fn class_of(&self, c: &CechCocycle) -> Result<Vec<Rational>, CechError> {
        let v = self.vector(c)?;
        self.h1
            .coordinates(&v)
            .ok_or_else(|| CechError::NotACocycle(format!("{c:?}")))
    }

    /// `(0, ω, ω)` for a holomorphic quadratic differential `ω`.
    pub fn alpha1(&self, omega: &Section) -> Result<CechCocycle, CechError> {
        if !self.global_quadratic.contains(omega) {
            return Err(CechError::NotGlobal(omega.to_string()));
        }
        Ok(CechCocycle {
            theta: Section::zero(-1),
            omega_a: omega.clone(),
            omega_b: omega.clone(),
            geometry: self.geometry.clone(),
        })
    }

    /// The class of `θ` in `H⁰(U,T)/(H⁰(U_a,T) + H⁰(U_b,T))`.
    pub fn alpha2(&self, c: &CechCocycle) -> Result<Vec<Rational>, CechError> {
        self.check_geometry(c)?;
        let v = self
            .theta_u
            .coordinates(&c.theta)
            .ok_or_else(|| CechError::OutsideTruncation(format!("theta at N = {}", self.n)))?;
        self.tangent_h1
            .coordinates(&v)
            .ok_or_else(|| CechError::Internal("tangent quotient".into()))
    }

    /// Checks `ω_a − ω_b = Δθ` exactly and the pole supports by expansion.
    pub fn is_cocycle(&self, c: &CechCocycle) -> Result<bool, CechError> {
        self.check_geometry(c)?;
        let delta = self.geometry.connection().apply_delta(&c.theta)?;
        if &c.omega_a - &c.omega_b != delta {
            return Ok(false);
        }
        let curve = self.geometry.curve();
        let holo = |s: &Section, p| -> Result<bool, CechError> {
            Ok(s.is_zero() || curve.expand_at(s, p, 0)?.is_zero())
        };
        Ok(c.theta.is_polynomial()
            && c.omega_a.is_polynomial()
            && c.omega_b.is_polynomial()
            && holo(&c.omega_a, self.geometry.a())?
            && holo(&c.omega_b, self.geometry.b())?)
    }

    fn random_combination<R: Rng>(space: &SectionSpace, rng: &mut R) -> Section {
        let coeffs: Vec<Rational> = (0..space.dim())
            .map(|_| Rational::from(rng.gen_range(-3i64..=3)))
            .collect();
        space.combination(&coeffs)
    }

    pub fn random_coboundary<R: Rng>(&self, rng: &mut R) -> Coboundary {
        Coboundary {
            theta_a: Self::random_combination(&self.theta_a, rng),
            theta_b: Self::random_combination(&self.theta_b, rng),
        }
    }

    pub fn random_cocycle<R: Rng>(&self, rng: &mut R) -> CechCocycle {
        let mut v = vec![Rational::zero(); self.ambient_dim()];
        for z in &self.cocycles {
            let c = Rational::from(rng.gen_range(-3i64..=3));
            if c.is_zero() {
                continue;
            }
            for (vi, zi) in v.iter_mut().zip(z) {
                *vi += &(&c * zi);
            }
        }
        self.cocycle_from_vector(&v)
    }

    /// Rank of a list of coordinate vectors.
    pub fn rank(vectors: &[Vec<Rational>]) -> usize {
        vectors
            .first()
            .map_or(0, |v| rank_of(v.len(), vectors.iter()))
    }
}
