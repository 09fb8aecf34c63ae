//! The investment side of the model: the price as a stochastic exponential,
//! its log-price Levy law, cumulants, and interarrival-time laws.

mod cumulant;
mod interarrival;
mod jump;
mod triplet;

pub use cumulant::{cumulant_h, CumulantFn, CumulantStage};
pub use interarrival::{
    validate_delay_dominance, DominanceReport, DominanceViolation, InterarrivalLaw,
};
pub use jump::{h_trunc, JumpLaw};
pub use triplet::{BandSide, JumpComponent, JumpSpace, LevyTriplet, LogPriceLaw, SmallJumpBand};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LevyError {
    #[error("invalid jump law: {0}")]
    InvalidJumpLaw(String),
    #[error("jump mass at or below x = -1 (atom at x = {x})")]
    JumpMassBelowBarrier { x: f64 },
    #[error("x-space parameters are only convertible for atom-based jump laws")]
    XSpaceUnsupported,
    #[error("invalid triplet: {0}")]
    InvalidTriplet(String),
    #[error("q = {q} outside the effective domain ({lo}, {hi})")]
    OutsideDomain { q: f64, lo: f64, hi: f64 },
    #[error("invalid interarrival law: {0}")]
    InvalidInterarrival(String),
    #[error("mgf argument s = {s} at or beyond the domain boundary {bound}")]
    MgfOutsideDomain { s: f64, bound: f64 },
    #[error("residual law degenerate: elapsed time r = {r} exhausts the support (upper end {support_hi})")]
    DegenerateResidual { r: f64, support_hi: f64 },
    #[error("cumulant composition failed at the {stage:?} stage: {source}")]
    CumulantComposition {
        stage: CumulantStage,
        #[source]
        source: Box<LevyError>,
    },
}
