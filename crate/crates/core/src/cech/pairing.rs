//! The residue pairing on cocycles and its descent to `ℍ¹`.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{CechCocycle, CechError, CechModel, Geometry};
use crate::exact::{Rational, RationalMatrix};
use crate::projconn::{h1_section, h2_section};
use crate::riemann::Section;

/// `Res_a(θ¹·ω²_b − θ²·ω¹_a)`.
///
/// With this sign the pairing vanishes on coboundaries in either slot and is
/// antisymmetric already on cocycles.
pub fn pairing(c1: &CechCocycle, c2: &CechCocycle) -> Result<Rational, CechError> {
    if *c1.geometry != *c2.geometry {
        return Err(CechError::GeometryMismatch);
    }
    let g = &c1.geometry;
    let curve = g.curve();
    let form = &c1.theta.mul(&c2.omega_b, curve) - &c2.theta.mul(&c1.omega_a, curve);
    if form.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(curve.residue_at(&form, g.a())?)
}

/// The pairing computed for the swapped cover, `Res_b(θ²·ω¹_b − θ¹·ω²_a)`.
pub fn pairing_swapped(c1: &CechCocycle, c2: &CechCocycle) -> Result<Rational, CechError> {
    pairing(&c1.swap_roles(), &c2.swap_roles())
}

/// Agreement of the truncations `N` and `N + 2`.
#[derive(Clone, Debug, Serialize)]
pub struct Stabilization {
    pub n: i64,
    pub n_plus_2: i64,
    pub dim_n: usize,
    pub dim_n_plus_2: usize,
    /// Rows: classes of the `N` representatives in the `N + 2` basis.
    pub change_of_basis: RationalMatrix,
    /// `M_N = P·M_{N+2}·Pᵀ`.
    pub congruent: bool,
    pub equal: bool,
}

/// Representatives of a basis of `ℍ¹` at a stabilized truncation.
#[derive(Clone, Debug)]
pub struct H1Basis {
    pub model: CechModel,
    pub representatives: Vec<CechCocycle>,
    pub matrix: RationalMatrix,
    pub stabilization: Stabilization,
}

impl H1Basis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn truncation(&self) -> i64 {
        self.model.truncation()
    }
}

fn pairing_matrix(reps: &[CechCocycle]) -> Result<RationalMatrix, CechError> {
    let n = reps.len();
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = pairing(&reps[i], &reps[j])?;
        }
    }
    Ok(m)
}

/// Builds the model at `N` and `N + 2`, checks that the dimension and the
/// pairing matrix (up to the change of basis) agree, and returns the `N` basis.
pub fn compute_h1_basis(geometry: Arc<Geometry>, n: i64) -> Result<H1Basis, CechError> {
    let small = CechModel::new(geometry.clone(), n)?;
    let large = CechModel::new(geometry, n + 2)?;
    let unstable = || CechError::UnstableTruncation {
        n,
        dim_n: small.h1_dim(),
        dim_n2: large.h1_dim(),
    };
    if small.h1_dim() != large.h1_dim() {
        return Err(unstable());
    }
    let reps = small.h1_representatives();
    let rows: Vec<Vec<Rational>> = reps
        .iter()
        .map(|r| large.class_of(r))
        .collect::<Result<_, _>>()?;
    let p = if rows.is_empty() {
        RationalMatrix::zeros(0, 0)
    } else {
        RationalMatrix::from_rows(rows)
    };
    if p.rank() != small.h1_dim() {
        return Err(unstable());
    }
    let m_small = pairing_matrix(&reps)?;
    let m_large = pairing_matrix(&large.h1_representatives())?;
    let congruent = m_small == &(&p * &m_large) * &p.transpose();
    let stabilization = Stabilization {
        n,
        n_plus_2: n + 2,
        dim_n: small.h1_dim(),
        dim_n_plus_2: large.h1_dim(),
        change_of_basis: p,
        congruent,
        equal: congruent,
    };
    Ok(H1Basis {
        model: small,
        representatives: reps,
        matrix: m_small,
        stabilization,
    })
}

/// The matrix of the pairing on the basis, after re-evaluating every entry on
/// representatives shifted by random coboundaries.
pub fn descended_form<R: Rng>(basis: &H1Basis, rng: &mut R) -> Result<RationalMatrix, CechError> {
    let model = &basis.model;
    let shifted: Vec<CechCocycle> = basis
        .representatives
        .iter()
        .map(|r| r.add(&model.coboundary_cocycle(&model.random_coboundary(rng))?))
        .collect::<Result<_, _>>()?;
    let n = basis.dim();
    for i in 0..n {
        for j in 0..n {
            let v = pairing(&shifted[i], &basis.representatives[j])?;
            let w = pairing(&basis.representatives[i], &shifted[j])?;
            if v != basis.matrix[(i, j)] || w != basis.matrix[(i, j)] {
                return Err(CechError::TheoremViolation(format!(
                    "entry ({i}, {j}) is {} on the basis but {v} / {w} after a coboundary shift",
                    basis.matrix[(i, j)]
                )));
            }
        }
    }
    Ok(basis.matrix.clone())
}

/// Outcome of pairing random coboundaries against random cocycles.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Theorem1Outcome {
    pub trials: usize,
    pub first_slot_nonzero: usize,
    pub second_slot_nonzero: usize,
    pub witnesses: Vec<String>,
}

impl Theorem1Outcome {
    pub fn passed(&self) -> bool {
        self.trials > 0 && self.first_slot_nonzero == 0 && self.second_slot_nonzero == 0
    }
}

/// `pairing(coboundary, cocycle)` and `pairing(cocycle, coboundary)` on random pairs.
pub fn theorem1_trials<R: Rng>(
    model: &CechModel,
    trials: usize,
    rng: &mut R,
) -> Result<Theorem1Outcome, CechError> {
    let mut out = Theorem1Outcome::default();
    for t in 0..trials {
        let cb = model.random_coboundary(rng);
        let beta = model.coboundary_cocycle(&cb)?;
        let c = model.random_cocycle(rng);
        let first = pairing(&beta, &c)?;
        let second = pairing(&c, &beta)?;
        out.trials += 1;
        if !first.is_zero() {
            out.first_slot_nonzero += 1;
        }
        if !second.is_zero() {
            out.second_slot_nonzero += 1;
        }
        if (!first.is_zero() || !second.is_zero()) && out.witnesses.len() < 3 {
            out.witnesses.push(format!(
                "trial {t}: {first}, {second}; coboundary {cb:?}; cocycle {c:?}"
            ));
        }
    }
    Ok(out)
}

/// The residue identities used to show that coboundaries pair to zero.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ProofMechanics {
    pub trials: usize,
    /// `Res_a(θ_a·ω_a) = 0`.
    pub holomorphic_at_a: usize,
    /// `Res_a(θ_b·ω_b) = 0`.
    pub single_pole: usize,
    /// `H₁(θ_a, θ) = H₂(θ_a, θ)` and its residue at `a` is zero.
    pub exact_term: usize,
}

impl ProofMechanics {
    pub fn passed(&self) -> bool {
        self.trials > 0
            && self.holomorphic_at_a == self.trials
            && self.single_pole == self.trials
            && self.exact_term == self.trials
    }
}

pub fn proof_mechanics<R: Rng>(
    model: &CechModel,
    trials: usize,
    rng: &mut R,
) -> Result<ProofMechanics, CechError> {
    let g = model.geometry();
    let curve = g.curve();
    let conn = g.connection();
    let res_a = |s: &Section| -> Result<Rational, CechError> {
        if s.is_zero() {
            return Ok(Rational::zero());
        }
        Ok(curve.residue_at(s, g.a())?)
    };
    let mut out = ProofMechanics::default();
    for _ in 0..trials {
        let cb = model.random_coboundary(rng);
        let c = model.random_cocycle(rng);
        out.trials += 1;
        if res_a(&cb.theta_a.mul(&c.omega_a, curve))?.is_zero() {
            out.holomorphic_at_a += 1;
        }
        if res_a(&cb.theta_b.mul(&c.omega_b, curve))?.is_zero() {
            out.single_pole += 1;
        }
        let h1 = h1_section(conn, &cb.theta_a, &c.theta)?;
        let h2 = h2_section(conn, &cb.theta_a, &c.theta)?;
        if h1 == h2 && res_a(&h1)?.is_zero() {
            out.exact_term += 1;
        }
    }
    Ok(out)
}
