//! Representations of surface groups in `SL(2, ℂ)`, their Ad-twisted group
//! cohomology via Fox calculus, and the Goldman pairing. Double precision.

mod cohomology;
mod goldman;
mod group;
mod rep;

use nalgebra::Complex;
use thiserror::Error;

pub use cohomology::{
    ad, coboundary_space, cocycle_space, fox_derivative, h1_complement, relator_derivative,
    sl2_coordinates, sl2_matrix, CohomologyDims, TangentCocycle, KERNEL_BAND,
};
pub use goldman::{
    convention_gate, goldman_matrix, goldman_pairing, goldman_suite, Convention, GateResult,
    GoldmanMatrix, GoldmanSuite,
};
pub use group::{Letter, Presentation};
pub use rep::{
    inverse, random_representation, sample_representation, IrreducibilityCertificate,
    Representation, M2,
};

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharVarError {
    #[error("genus must be at least 2, got {0}")]
    Genus(usize),
    #[error("letter {0} is not a generator of the presentation")]
    BadWord(i64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degenerate sample for seed {0}; resample")]
    ResampleNeeded(u64),
    #[error("ambiguous numerical rank: relative singular value {0:e}")]
    IllConditioned(f64),
    #[error("relator condition fails, relative defect {0:e}")]
    NotACocycle(f64),
    #[error("representation is reducible, margin {0:e}")]
    Reducible(f64),
    #[error("no chain-level convention passes the coboundary gate, best defect {0:e}")]
    NoConvention(f64),
}
