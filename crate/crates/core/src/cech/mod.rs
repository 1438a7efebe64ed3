//! Čech model of the first hypercohomology of `Δ : TX → K²` for the two-point
//! cover `{X∖{b}, X∖{a}}`, the maps `α₁`, `α₂`, and the residue pairing.

mod model;
mod pairing;
mod quotient;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::projconn::{ProjConnError, ProjectiveConnection};
use crate::riemann::{Curve, PointSpec, RiemannError, Section};

pub use model::CechModel;
pub use pairing::{
    compute_h1_basis, descended_form, pairing, pairing_swapped, proof_mechanics, theorem1_trials,
    H1Basis, ProofMechanics, Stabilization, Theorem1Outcome,
};
pub use quotient::Quotient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error(transparent)]
    ProjConn(#[from] ProjConnError),
    #[error(transparent)]
    Riemann(#[from] RiemannError),
    #[error("truncation N = {0} is below 4")]
    TruncationTooSmall(i64),
    #[error("marked points must be the two distinct points at infinity, got {0} and {1}")]
    UnsupportedPoints(String, String),
    #[error("connection does not live on a curve")]
    NoCurve,
    #[error("cocycles belong to different geometries")]
    GeometryMismatch,
    #[error("{0} has poles and is not a global quadratic differential")]
    NotGlobal(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("{0} is not polynomial")]
    NotPolynomial(String),
    #[error("outside the truncated model: {0}")]
    OutsideTruncation(String),
    #[error("dimension {dim_n} at N = {n} but {dim_n2} at N = {}; raise the truncation", n + 2)]
    UnstableTruncation { n: i64, dim_n: usize, dim_n2: usize },
    #[error("pairing is not well defined on classes: {0}")]
    TheoremViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<crate::exact::ExactError> for CechError {
    fn from(e: crate::exact::ExactError) -> Self {
        CechError::Riemann(e.into())
    }
}

/// Curve, projective connection and the two marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    connection: ProjectiveConnection,
    a: PointSpec,
    b: PointSpec,
}

impl Geometry {
    /// Only the two points at infinity are supported as marked points: sections
    /// with poles there are polynomial in `x` and `y`.
    pub fn new(
        connection: ProjectiveConnection,
        a: PointSpec,
        b: PointSpec,
    ) -> Result<Arc<Self>, CechError> {
        if connection.curve().is_none() {
            return Err(CechError::NoCurve);
        }
        if !(a.is_infinite() && b.is_infinite() && a != b) {
            return Err(CechError::UnsupportedPoints(a.to_string(), b.to_string()));
        }
        Ok(Arc::new(Geometry { connection, a, b }))
    }

    /// `a = ∞₊`, `b = ∞₋`.
    pub fn standard(connection: ProjectiveConnection) -> Result<Arc<Self>, CechError> {
        Geometry::new(connection, PointSpec::InfPlus, PointSpec::InfMinus)
    }

    pub fn curve(&self) -> &Curve {
        self.connection.curve().expect("checked at construction")
    }

    pub fn connection(&self) -> &ProjectiveConnection {
        &self.connection
    }

    pub fn a(&self) -> &PointSpec {
        &self.a
    }

    pub fn b(&self) -> &PointSpec {
        &self.b
    }

    /// The same data with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> Arc<Self> {
        Arc::new(Geometry {
            connection: self.connection.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        })
    }
}

/// `(θ, ω_a, ω_b)` with `θ` on `U`, `ω_a` on `U_a`, `ω_b` on `U_b` and
/// `ω_a − ω_b = Δθ`.
#[derive(Clone, Serialize)]
pub struct CechCocycle {
    pub theta: Section,
    pub omega_a: Section,
    pub omega_b: Section,
    #[serde(skip)]
    pub(crate) geometry: Arc<Geometry>,
}

impl CechCocycle {
    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    /// The same cocycle for the swapped cover: `(−θ, ω_b, ω_a)`.
    pub fn swap_roles(&self) -> CechCocycle {
        CechCocycle {
            theta: -&self.theta,
            omega_a: self.omega_b.clone(),
            omega_b: self.omega_a.clone(),
            geometry: self.geometry.swapped(),
        }
    }

    pub fn add(&self, other: &CechCocycle) -> Result<CechCocycle, CechError> {
        if *self.geometry != *other.geometry {
            return Err(CechError::GeometryMismatch);
        }
        Ok(CechCocycle {
            theta: &self.theta + &other.theta,
            omega_a: &self.omega_a + &other.omega_a,
            omega_b: &self.omega_b + &other.omega_b,
            geometry: self.geometry.clone(),
        })
    }

    pub fn scale(&self, c: &crate::exact::Rational) -> CechCocycle {
        CechCocycle {
            theta: self.theta.scale(c),
            omega_a: self.omega_a.scale(c),
            omega_b: self.omega_b.scale(c),
            geometry: self.geometry.clone(),
        }
    }
}

impl fmt::Debug for CechCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CechCocycle")
            .field("theta", &self.theta)
            .field("omega_a", &self.omega_a)
            .field("omega_b", &self.omega_b)
            .finish()
    }
}

/// `(θ_a, θ_b)`, vector fields on `U_a` and `U_b`.
#[derive(Clone, Debug, Serialize)]
pub struct Coboundary {
    pub theta_a: Section,
    pub theta_b: Section,
}
