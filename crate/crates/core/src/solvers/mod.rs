//! Finding cheapest safe and successful bribes.

mod bucklin;
mod classical;
mod enumeration;
mod veto;
mod xp;
mod zone;

pub use bucklin::solve_safe_bucklin_shift;
pub use classical::classical_bribery_equivalence;
pub use enumeration::{solve_safe_shift_enumeration, ENUM_GUARD};
pub use veto::solve_safe_veto_dollar;
pub use xp::solve_safe_anonymous_xp;
pub use zone::{solve_safe_plurality, solve_safe_zone_shift};

use thiserror::Error;

use crate::bribery::{BriberyError, BriberyInstance, Payload, ShiftVector};
use crate::election::{winner, Profile};
use crate::flow::FlowError;
use crate::safety::SafetyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Bribery(#[from] BriberyError),
    #[error(transparent)]
    Safety(#[from] SafetyError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("solver does not apply: {0}")]
    Inapplicable(String),
    #[error("resource guard: {count} candidate plans exceed the limit of {limit}")]
    Guard { count: u128, limit: u128 },
}

impl From<crate::election::ElectionError> for SolveError {
    fn from(e: crate::election::ElectionError) -> Self {
        SolveError::Bribery(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanKind {
    /// Bribed voter indices (ascending) and the resulting full profile.
    Dollar { bribed: Vec<usize>, q: Profile },
    Shift(ShiftVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BriberyPlan {
    pub kind: PlanKind,
    pub cost: u64,
}

impl BriberyPlan {
    /// The Is-Safe instance this plan produces.
    pub fn replay(&self, inst: &BriberyInstance) -> BriberyInstance {
        let payload = match &self.kind {
            PlanKind::Dollar { q, .. } => Payload::IsSafeDollar(q.clone()),
            PlanKind::Shift(s) => Payload::IsSafeShift(s.clone()),
        };
        BriberyInstance { payload, ..inst.clone() }
    }

    pub(crate) fn empty(inst: &BriberyInstance) -> Self {
        let kind = match &inst.payload {
            Payload::SafeShift(_) => PlanKind::Shift(ShiftVector::zeros(inst.election.n())),
            _ => PlanKind::Dollar { bribed: Vec::new(), q: inst.election.profile.clone() },
        };
        BriberyPlan { kind, cost: 0 }
    }
}

/// `Some(empty plan)` when c already wins P.
pub(crate) fn degenerate(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    let w = winner(&inst.election.profile, &inst.rule, &inst.election.tiebreak)?;
    Ok((w == inst.preferred()).then(|| BriberyPlan::empty(inst)))
}

pub(crate) fn budget(inst: &BriberyInstance) -> Result<u64, SolveError> {
    match &inst.payload {
        Payload::SafeDollar(d) => Ok(d.budget),
        Payload::SafeShift(s) => Ok(s.budget),
        _ => Err(BriberyError::WrongVariant { expected: "Safe" }.into()),
    }
}
