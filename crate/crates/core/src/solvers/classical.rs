use crate::bribery::{BriberPreference, BriberyInstance};
use crate::election::{winner, LinearOrder};

use super::SolveError;

/// Rewrites the briber's order to c first and the current winner last, so no candidate is bad and
/// a Safe solver decides plain bribery.
pub fn classical_bribery_equivalence(inst: &BriberyInstance) -> Result<BriberyInstance, SolveError> {
    let c = inst.preferred();
    let w = winner(&inst.election.profile, &inst.rule, &inst.election.tiebreak)?;
    let mut order = vec![c];
    order.extend(inst.briber.order.as_slice().iter().copied().filter(|&a| a != c && a != w));
    if w != c {
        order.push(w);
    }
    let order = LinearOrder::new(order, inst.election.m())?;
    Ok(BriberyInstance { briber: BriberPreference { order }, ..inst.clone() })
}
