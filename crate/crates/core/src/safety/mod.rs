//! Deciding whether a given bribery is safe under partial compliance.

mod bucklin;
mod oracle;
mod plurality;
mod veto;
mod xp;
mod zone;

pub use bucklin::{is_safe_bucklin_shift_greedy, is_safe_bucklin_shift_traced, CheckPath};
pub(crate) use bucklin::greedy_shape;
pub use oracle::{is_safe_oracle, OracleOptions, DOLLAR_GUARD, SHIFT_GUARD};
pub use plurality::is_safe_plurality_flow;
pub use veto::is_safe_veto_flow;
pub use xp::{is_safe_anonymous_xp, XP_DEFAULT_BOUND};
pub use zone::{is_safe_zone_flow, shift_issafe_as_dollar};
pub(crate) use zone::zone_size;

use thiserror::Error;

use crate::bribery::{BriberyError, BriberyInstance, GoodBadPartition, Pattern};
use crate::election::{winner, Candidate, VotingRule};
use crate::flow::FlowError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SafetyError {
    #[error(transparent)]
    Bribery(#[from] BriberyError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("method does not apply to rule {0}")]
    WrongRule(VotingRule),
    #[error("resource guard: {count} outcomes exceed the limit of {limit}")]
    Guard { count: u128, limit: u128 },
    #[error("resource guard: {m} candidates exceed the bound of {bound}")]
    TooManyCandidates { m: usize, bound: usize },
}

impl From<crate::election::ElectionError> for SafetyError {
    fn from(e: crate::election::ElectionError) -> Self {
        SafetyError::Bribery(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SafetyVerdict {
    Safe,
    /// Full compliance elects this candidate instead of c.
    NotSuccessful(Candidate),
    Unsafe { witness: Pattern, winner: Candidate },
}

impl SafetyVerdict {
    pub fn is_safe(&self) -> bool {
        matches!(self, SafetyVerdict::Safe)
    }

    pub fn token(&self) -> &'static str {
        match self {
            SafetyVerdict::Safe => "SAFE",
            SafetyVerdict::NotSuccessful(_) => "NOT-SUCCESSFUL",
            SafetyVerdict::Unsafe { .. } => "UNSAFE",
        }
    }
}

/// Success check shared by every checker: returns the partition, or the failing verdict.
pub(crate) fn precheck(inst: &BriberyInstance) -> Result<Result<GoodBadPartition, SafetyVerdict>, SafetyError> {
    let q = inst.full_compliance()?;
    let wq = winner(&q, &inst.rule, &inst.election.tiebreak)?;
    if wq != inst.preferred() {
        return Ok(Err(SafetyVerdict::NotSuccessful(wq)));
    }
    Ok(Ok(inst.partition()?))
}

pub(crate) fn expect_rule(inst: &BriberyInstance, ok: bool) -> Result<(), SafetyError> {
    if ok {
        Ok(())
    } else {
        Err(SafetyError::WrongRule(inst.rule))
    }
}
