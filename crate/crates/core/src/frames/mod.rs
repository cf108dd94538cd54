//! Gramian fibers, frame bounds, projection and transition matrices.

mod condition;
mod gramian;
mod projection;
mod transition;

pub use condition::{check_condition_a, tail_verdict, ConditionAReport, GeneratorDiagnostics, TailCheck};
pub use gramian::{frame_bounds, gramian_fiber, FrameReport};
pub(crate) use gramian::analyze;
pub(crate) use projection::symbol_coefficients;
pub use projection::{project, same_space_check, Projection, SameSpaceReport, SpaceVerdict};
pub use transition::{transition_regularity, RegularityReport, TransitionMatrix};

use serde::Serialize;

/// Three-valued outcome of a numerical hypothesis check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Worst of two verdicts: violated beats inconclusive beats consistent.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Consistent,
        }
    }
}
