use crate::bribery::BriberyInstance;
use crate::election::VotingRule;

use super::{expect_rule, is_safe_zone_flow, SafetyError, SafetyVerdict};

/// One network per bad candidate b: voters pick their original or bribed top, voters that can
/// top b are forced to b, and every other candidate is capped just below b's total.
pub fn is_safe_plurality_flow(inst: &BriberyInstance) -> Result<SafetyVerdict, SafetyError> {
    expect_rule(inst, inst.rule == VotingRule::Plurality)?;
    is_safe_zone_flow(inst)
}
