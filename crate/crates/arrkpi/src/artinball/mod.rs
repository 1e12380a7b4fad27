//! Garside normal forms and metric-ball experiments for the braid-like
//! groups attached to small reflection groups.
//!
//! The module builds complete multiplication tables for the supported
//! finite reflection groups ([`coxtable`]), computes left-greedy normal
//! forms in the corresponding braid-like groups ([`garside`]), enumerates
//! balls in the resulting word metric together with the simplicial
//! structure their cosets span ([`ball`]), and exhaustively audits order
//! and cycle properties of those balls ([`checks`]).

pub mod ball;
pub mod checks;
pub mod coxtable;
pub mod garside;

use thiserror::Error;

use crate::coxmodel::CoxError;

pub use ball::{cayley_ball, deligne_ball, CayleyBall, DeligneBall, DeligneVertex};
pub use checks::{
    check_4cycles, check_6cycles, check_bowtie_upflag_ball, check_chain_of_fake,
    check_mixed_real_edges, check_partial_order_ball, run_ball_suite, DEFAULT_MARGIN,
    SIX_CYCLE_MARGIN,
};
pub use coxtable::{CoxTable, Diagram};
pub use garside::BraidElement;

/// Errors raised while building tables, evaluating words, or enumerating
/// balls.
#[derive(Debug, Error)]
pub enum ArtinError {
    /// The requested diagram is outside the supported list.
    #[error("unsupported diagram: {0}")]
    UnsupportedDiagram(String),
    /// A word contained a letter that names no generator.
    #[error("unknown generator letter {0}; expected ±1..±rank")]
    UnknownGenerator(i32),
    /// A ball radius must be positive.
    #[error("ball radius must be positive, got {0}")]
    BadRadius(i64),
    /// A rank outside the range supported by the construction.
    #[error("unsupported rank {0}")]
    BadRank(usize),
    /// The multiplication table failed an internal consistency check.
    #[error("table construction failed: {0}")]
    TableConstruction(String),
    /// An error bubbled up from the reflection-group model.
    #[error(transparent)]
    Cox(#[from] CoxError),
}
