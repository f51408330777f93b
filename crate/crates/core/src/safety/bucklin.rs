use crate::bribery::{BriberyError, BriberyInstance, GoodBadPartition, Pattern, Payload, ShiftVector};
use crate::election::{bucklin_rounds, Candidate, LinearOrder, VotingRule};

use super::{expect_rule, is_safe_oracle, precheck, OracleOptions, SafetyError, SafetyVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckPath {
    Greedy,
    /// The tie-break order lacked the shape the greedy argument needs.
    OracleFallback,
}

pub fn is_safe_bucklin_shift_greedy(inst: &BriberyInstance) -> Result<SafetyVerdict, SafetyError> {
    is_safe_bucklin_shift_traced(inst, OracleOptions::default()).map(|(v, _)| v)
}

/// Whether `tb` ranks c above w and every bad candidate below every good one.
pub(crate) fn greedy_shape(tb: &LinearOrder, c: Candidate, part: &GoodBadPartition) -> bool {
    let r = tb.ranks();
    if c != part.winner && r[c.idx()] > r[part.winner.idx()] {
        return false;
    }
    let last_good = part.goods().iter().map(|g| r[g.idx()]).max().unwrap_or(0);
    part.bad().iter().all(|b| r[b.idx()] > last_good)
}

/// Greedy safety check for simplified Bucklin shift bribery.
///
/// Every candidate but c only loses ground under a shift, so with goods ahead of bads in the
/// tie-break a bad candidate can only win at P's winning round ℓ, and only if c enters the top ℓ
/// in enough votes to push every good majority holder out while staying short of a majority.
/// The greedy picks, per good candidate, the first votes where that candidate sits at position ℓ
/// and c can reach it.
pub fn is_safe_bucklin_shift_traced(
    inst: &BriberyInstance,
    oracle: OracleOptions,
) -> Result<(SafetyVerdict, CheckPath), SafetyError> {
    expect_rule(inst, inst.rule == VotingRule::SimplifiedBucklin)?;
    let s = match &inst.payload {
        Payload::IsSafeShift(s) => s,
        _ => return Err(BriberyError::WrongVariant { expected: "is-safe-shift" }.into()),
    };
    let part = match precheck(inst)? {
        Ok(p) => p,
        Err(v) => return Ok((v, CheckPath::Greedy)),
    };
    let c = inst.preferred();
    if !greedy_shape(&inst.election.tiebreak, c, &part) {
        return Ok((is_safe_oracle(inst, oracle)?, CheckPath::OracleFallback));
    }
    let p = &inst.election.profile;
    let m = inst.election.m();
    let n = p.len();
    let h = n / 2;
    let ell = bucklin_rounds(p)[part.winner.idx()].expect("non-empty profile");
    let mut cnt = vec![0usize; m];
    for v in &p.votes {
        for a in &v.as_slice()[..ell] {
            cnt[a.idx()] += 1;
        }
    }
    if !part.bad().iter().any(|b| cnt[b.idx()] > h) {
        return Ok((SafetyVerdict::Safe, CheckPath::Greedy));
    }
    let mut need: Vec<usize> = (0..m)
        .map(|g| if part.good[g] && g != c.idx() { cnt[g].saturating_sub(h) } else { 0 })
        .collect();
    let total: usize = need.iter().sum();
    if cnt[c.idx()] + total > h {
        return Ok((SafetyVerdict::Safe, CheckPath::Greedy));
    }
    let mut shift = vec![0; n];
    for (i, v) in p.votes.iter().enumerate() {
        let pos = v.position(c);
        if pos < ell || s.0[i] < pos + 1 - ell {
            continue;
        }
        let a = v.at(ell - 1);
        if need[a.idx()] > 0 {
            need[a.idx()] -= 1;
            shift[i] = pos + 1 - ell;
        }
    }
    if need.iter().any(|&k| k > 0) {
        return Ok((SafetyVerdict::Safe, CheckPath::Greedy));
    }
    let witness = ShiftVector(shift);
    let r = crate::bribery::apply_shift(p, c, &witness)?;
    let x = crate::election::winner(&r, &inst.rule, &inst.election.tiebreak)?;
    debug_assert!(part.is_bad(x), "greedy witness must elect a bad candidate");
    Ok((SafetyVerdict::Unsafe { witness: Pattern::Shift(witness), winner: x }, CheckPath::Greedy))
}
