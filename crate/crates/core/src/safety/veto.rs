use crate::bribery::{BriberyError, BriberyInstance, Pattern, Payload};
use crate::election::{Candidate, VotingRule};
use crate::flow::{feasible_flow, FlowNetwork};
use crate::par;

use super::{expect_rule, precheck, SafetyError, SafetyVerdict};

/// Demand networks: b keeps only the vetoes it cannot dodge, every rival must collect enough.
pub fn is_safe_veto_flow(inst: &BriberyInstance) -> Result<SafetyVerdict, SafetyError> {
    expect_rule(inst, inst.rule == VotingRule::Veto)?;
    let q = match &inst.payload {
        Payload::IsSafeDollar(q) => q,
        _ => return Err(BriberyError::WrongVariant { expected: "is-safe-dollar" }.into()),
    };
    let part = match precheck(inst)? {
        Ok(p) => p,
        Err(v) => return Ok(v),
    };
    let p = &inst.election.profile;
    let lasts: Vec<(Candidate, Candidate)> = (0..p.len()).map(|i| (p.votes[i].last(), q.votes[i].last())).collect();
    let tb_rank = inst.election.tiebreak.ranks();
    let bads = part.bad();
    let results = par::map(&bads, |&b| veto_network(&lasts, inst.election.m(), &tb_rank, b));
    for (b, r) in bads.into_iter().zip(results) {
        if let Some(comply) = r? {
            let comply = comply.into_iter().filter(|&i| p.votes[i] != q.votes[i]).collect();
            return Ok(SafetyVerdict::Unsafe { witness: Pattern::Comply(comply), winner: b });
        }
    }
    Ok(SafetyVerdict::Safe)
}

fn veto_network(
    lasts: &[(Candidate, Candidate)],
    m: usize,
    tb_rank: &[usize],
    b: Candidate,
) -> Result<Option<Vec<usize>>, SafetyError> {
    let n = lasts.len();
    let nb = lasts.iter().filter(|(x, y)| *x == b && *y == b).count() as i64;
    let mut g = FlowNetwork::new();
    let y: Vec<usize> = (0..m).map(|_| g.add_node()).collect();
    for a in 0..m {
        let demand = if a != b.idx() && tb_rank[a] < tb_rank[b.idx()] { nb + 1 } else { nb };
        g.add_arc(y[a], g.sink, demand, None, 0);
    }
    // per voter: the arc that means "vote as bribed"
    let mut comply_arc = Vec::with_capacity(n);
    for &(lp, lq) in lasts {
        let x = g.add_node();
        g.add_arc(g.source, x, 0, Some(1), 0);
        if lp == b && lq == b {
            g.add_arc(x, y[b.idx()], 0, Some(1), 0);
            comply_arc.push(None);
            continue;
        }
        if lp != b {
            g.add_arc(x, y[lp.idx()], 0, Some(1), 0);
        }
        if lq != b && lq != lp {
            comply_arc.push(Some(g.add_arc(x, y[lq.idx()], 0, Some(1), 0)));
        } else {
            comply_arc.push(None);
        }
    }
    let flow = match feasible_flow(&g)? {
        Some(f) if f.value == n as i64 => f,
        _ => return Ok(None),
    };
    Ok(Some((0..n).filter(|&i| comply_arc[i].is_some_and(|e| flow.flows[e] == 1)).collect()))
}
