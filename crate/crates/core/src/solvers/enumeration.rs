use crate::bribery::{shift_cost, BriberyError, BriberyInstance, Payload, ShiftVector};
use crate::par;
use crate::safety::{is_safe_oracle, OracleOptions, SafetyVerdict};

use super::{budget, degenerate, BriberyPlan, PlanKind, SolveError};

/// Largest number of shift vectors the enumeration solver will list.
pub const ENUM_GUARD: u128 = 1_000_000;

/// Tries every shift vector with at most `max_total` shifts, cheapest first (ties by vector).
pub fn solve_safe_shift_enumeration(inst: &BriberyInstance, max_total: usize) -> Result<Option<BriberyPlan>, SolveError> {
    let Payload::SafeShift(model) = &inst.payload else {
        return Err(BriberyError::WrongVariant { expected: "safe-shift" }.into());
    };
    inst.validate(false)?;
    let limit = budget(inst)?;
    let c = inst.preferred();
    let caps: Vec<usize> = inst.election.profile.votes.iter().map(|v| v.position(c)).collect();
    let count = count_vectors(&caps, max_total);
    if count > ENUM_GUARD {
        return Err(SolveError::Guard { count, limit: ENUM_GUARD });
    }
    if let Some(plan) = degenerate(inst)? {
        return Ok(Some(plan));
    }
    let mut all = Vec::new();
    let mut cur = vec![0; caps.len()];
    collect(&caps, 0, max_total, &mut cur, &mut all);
    let mut priced: Vec<(u64, ShiftVector)> = Vec::with_capacity(all.len());
    for s in all {
        let s = ShiftVector(s);
        let cost = shift_cost(model, &s)?;
        if cost <= limit {
            priced.push((cost, s));
        }
    }
    priced.sort();
    let hit = par::find_map_first(&priced, |(cost, s)| {
        let plan = BriberyPlan { kind: PlanKind::Shift(s.clone()), cost: *cost };
        match is_safe_oracle(&plan.replay(inst), OracleOptions { force: true }) {
            Ok(SafetyVerdict::Safe) => Some(Ok(plan)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    Ok(hit.transpose()?)
}

/// Enumeration over every shift vector, for instances outside a specialised solver's reach.
pub(crate) fn solve_all_vectors(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    let c = inst.preferred();
    let total = inst.election.profile.votes.iter().map(|v| v.position(c)).sum();
    solve_safe_shift_enumeration(inst, total)
}

fn count_vectors(caps: &[usize], max_total: usize) -> u128 {
    // ways[t] = vectors over the voters so far with exactly t shifts
    let mut ways = vec![0u128; max_total + 1];
    ways[0] = 1;
    for &cap in caps {
        let mut next = vec![0u128; max_total + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for d in 0..=cap.min(max_total - t) {
                next[t + d] = next[t + d].saturating_add(w);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &w| a.saturating_add(w))
}

fn collect(caps: &[usize], j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if j == caps.len() {
        out.push(cur.clone());
        return;
    }
    for d in 0..=caps[j].min(left) {
        cur[j] = d;
        collect(caps, j + 1, left - d, cur, out);
    }
    cur[j] = 0;
}
