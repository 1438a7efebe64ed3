//! The genus-2 curve `y² = f(x)`: points, local parameters, weighted sections,
//! residues and pole-bounded section spaces.

mod curve;
mod frame;
mod section;
mod space;

use thiserror::Error;

use crate::exact::ExactError;

pub use curve::{rational_roots, Curve, PointSpec};
pub use frame::LocalFrame;
pub use section::{derive_ff, FunctionElement, Section};
pub use space::{section_space, PoleBounds, SectionSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiemannError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("f = {0} is not squarefree")]
    NotSquarefree(String),
    #[error("f = {0} is not a monic sextic")]
    NotMonicSextic(String),
    #[error("{0} is not a point of the curve")]
    BadPoint(String),
    #[error("expected a section of weight {expected}, got weight {got}")]
    WrongWeight { expected: i32, got: i32 },
    #[error("{0} has poles away from the branch points")]
    NotInFunctionRing(String),
    #[error("{0} is not an admissible branch scale: lambda/f'(e) must be a rational square")]
    BadScale(String),
    #[error("cannot expand to O({parameter}^{order}) at {point}")]
    InsufficientPrecision {
        point: String,
        parameter: &'static str,
        order: i64,
    },
}
