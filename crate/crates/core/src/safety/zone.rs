//! Zone rules (plurality, k-approval, veto, k-veto): each voter's approved zone differs between P
//! and Q by at most one candidate, so every bribed voter carries one unit that lands on either
//! its original or its bribed candidate.

use crate::bribery::{BriberyInstance, Pattern, Payload, ShiftVector};
use crate::election::{Candidate, Profile, VotingRule};
use crate::flow::{max_flow, FlowNetwork};
use crate::par;

use super::{precheck, SafetyError, SafetyVerdict};

/// Size of the approved (score 1) zone, when the rule is a zone rule.
pub(crate) fn zone_size(rule: &VotingRule, m: usize) -> Option<usize> {
    match *rule {
        VotingRule::Plurality => Some(1),
        VotingRule::KApproval(k) => Some(k),
        VotingRule::Veto => Some(m - 1),
        VotingRule::KVeto(k) => Some(m - k),
        _ => None,
    }
}

/// Shift instance to the equivalent $ instance: c lands just inside the zone iff its shift reaches it.
pub fn shift_issafe_as_dollar(inst: &BriberyInstance) -> Result<BriberyInstance, SafetyError> {
    let m = inst.election.m();
    let z = zone_size(&inst.rule, m).ok_or(SafetyError::WrongRule(inst.rule))?;
    let s = match &inst.payload {
        Payload::IsSafeShift(s) => s,
        _ => return Err(crate::bribery::BriberyError::WrongVariant { expected: "is-safe-shift" }.into()),
    };
    let c = inst.preferred();
    let p = &inst.election.profile;
    let votes = p
        .votes
        .iter()
        .zip(&s.0)
        .map(|(v, &k)| {
            let pos = v.position(c);
            if pos >= z && k >= pos + 1 - z {
                v.with_raised(c, z - 1)
            } else {
                v.clone()
            }
        })
        .collect();
    let q = Profile { num_candidates: m, ids: p.ids.clone(), votes };
    Ok(BriberyInstance { payload: Payload::IsSafeDollar(q), ..inst.clone() })
}

/// One bribed voter's movable unit: on `from` if it reverts, on `to` if it complies.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Transfer {
    pub voter: usize,
    pub from: Candidate,
    pub to: Candidate,
}

/// Splits a $ instance into fixed zone scores plus single-unit transfers.
pub(crate) fn decompose(inst: &BriberyInstance, z: usize) -> Result<(Vec<i64>, Vec<Transfer>), SafetyError> {
    let m = inst.election.m();
    let p = &inst.election.profile;
    let q = match &inst.payload {
        Payload::IsSafeDollar(q) => q,
        _ => return Err(crate::bribery::BriberyError::WrongVariant { expected: "is-safe-dollar" }.into()),
    };
    let mut fixed = vec![0i64; m];
    let mut moves = Vec::new();
    let mut in_q = vec![false; m];
    for i in 0..p.len() {
        let zp = &p.votes[i].as_slice()[..z];
        let zq = &q.votes[i].as_slice()[..z];
        in_q.fill(false);
        for a in zq {
            in_q[a.idx()] = true;
        }
        let gone: Vec<Candidate> = zp.iter().copied().filter(|a| !in_q[a.idx()]).collect();
        for a in zp.iter().filter(|a| in_q[a.idx()]) {
            fixed[a.idx()] += 1;
        }
        match gone.len() {
            0 => {}
            1 => {
                let to = *zq.iter().find(|a| !zp.contains(a)).expect("zones of equal size");
                moves.push(Transfer { voter: i, from: gone[0], to });
            }
            _ => return Err(SafetyError::WrongRule(inst.rule)),
        }
    }
    Ok((fixed, moves))
}

/// Can the transfers be routed so that `b` wins? Returns the complying voters if so.
pub(crate) fn transfer_witness(
    fixed: &[i64],
    moves: &[Transfer],
    tb_rank: &[usize],
    b: Candidate,
) -> Result<Option<Vec<usize>>, SafetyError> {
    let m = fixed.len();
    let forced: Vec<bool> = moves.iter().map(|t| t.from == b || t.to == b).collect();
    let nb = fixed[b.idx()] + forced.iter().filter(|&&f| f).count() as i64;
    let mut g = FlowNetwork::new();
    let y: Vec<usize> = (0..m).map(|_| g.add_node()).collect();
    for a in 0..m {
        let cap = if a == b.idx() {
            nb - fixed[a]
        } else {
            nb - fixed[a] - (tb_rank[a] < tb_rank[b.idx()]) as i64
        };
        if cap < 0 {
            return Ok(None);
        }
        g.add_arc(y[a], g.sink, 0, Some(cap), 0);
    }
    let mut arcs = Vec::with_capacity(moves.len());
    for (t, &f) in moves.iter().zip(&forced) {
        let x = g.add_node();
        g.add_arc(g.source, x, 0, Some(1), 0);
        if f {
            arcs.push((g.add_arc(x, y[b.idx()], 0, Some(1), 0), None));
        } else {
            let back = g.add_arc(x, y[t.from.idx()], 0, Some(1), 0);
            let fwd = g.add_arc(x, y[t.to.idx()], 0, Some(1), 0);
            arcs.push((back, Some(fwd)));
        }
    }
    let flow = max_flow(&g)?;
    if flow.value < moves.len() as i64 {
        return Ok(None);
    }
    let comply = moves
        .iter()
        .zip(&arcs)
        .filter(|(t, (_, fwd))| match fwd {
            Some(e) => flow.flows[*e] == 1,
            None => t.to == b,
        })
        .map(|(t, _)| t.voter)
        .collect();
    Ok(Some(comply))
}

/// Transfer-network checker for any zone rule and either Is-Safe payload.
pub fn is_safe_zone_flow(inst: &BriberyInstance) -> Result<SafetyVerdict, SafetyError> {
    let m = inst.election.m();
    let z = zone_size(&inst.rule, m).ok_or(SafetyError::WrongRule(inst.rule))?;
    let shift = match &inst.payload {
        Payload::IsSafeShift(s) => Some(s.clone()),
        _ => None,
    };
    let mapped;
    let d = if shift.is_some() {
        mapped = shift_issafe_as_dollar(inst)?;
        &mapped
    } else {
        inst
    };
    let part = match precheck(d)? {
        Ok(p) => p,
        Err(v) => return Ok(v),
    };
    let (fixed, moves) = decompose(d, z)?;
    let tb_rank = inst.election.tiebreak.ranks();
    let bads = part.bad();
    let hit = par::map(&bads, |&b| transfer_witness(&fixed, &moves, &tb_rank, b));
    for (b, r) in bads.into_iter().zip(hit) {
        if let Some(comply) = r? {
            let witness = match &shift {
                Some(s) => {
                    let mut v = vec![0; s.0.len()];
                    for i in comply {
                        v[i] = s.0[i];
                    }
                    Pattern::Shift(ShiftVector(v))
                }
                None => Pattern::Comply(comply),
            };
            return Ok(SafetyVerdict::Unsafe { witness, winner: b });
        }
    }
    Ok(SafetyVerdict::Safe)
}
