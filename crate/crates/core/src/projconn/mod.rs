//! Projective connections, the operator `Δ`, jets on the projective line, the
//! trace form on 2-jets and the maps `H₁`, `H₂`.

mod connection;
mod jets;
mod pairs;
mod schwarzian;

use thiserror::Error;

use crate::exact::ExactError;
use crate::riemann::RiemannError;

pub use connection::{
    apply_delta, build_connection, build_connection_in_family, Host, ProjectiveConnection,
};
pub use jets::{eta2_inverse, trace_form, Dual, Jet2, Jet3, Sl2Element, KAPPA};
pub use pairs::{
    calibrate_kappa, h1_pair, h1_pair_jet, h1_section, h2_pair, h2_pair_jet, h2_section,
};
pub use schwarzian::{schwarzian, schwarzian_series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjConnError {
    #[error(transparent)]
    Riemann(#[from] RiemannError),
    #[error("constant map {0} has no Schwarzian")]
    DegenerateMap(String),
    #[error("f = {0} is not squarefree")]
    NotSquarefree(String),
    #[error("f = {0} does not split over the rationals")]
    IrrationalBranchPoints(String),
    #[error("connection is not holomorphic at {0}")]
    NotHolomorphic(String),
    #[error("jets are based at different points")]
    BasePointMismatch,
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<ExactError> for ProjConnError {
    fn from(e: ExactError) -> Self {
        ProjConnError::Riemann(e.into())
    }
}
