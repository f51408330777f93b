use crate::bribery::{BriberyError, BriberyInstance, Payload};
use crate::election::{Candidate, LinearOrder, Profile, VotingRule};

use crate::par;
use crate::safety::is_safe_veto_flow;

use super::{budget, degenerate, BriberyPlan, PlanKind, SolveError};

/// Greedy veto $ solver.
///
/// For each final veto count x of c, buys the cheapest voters vetoing c and then the cheapest
/// voters from candidates with vetoes to spare, until every other candidate has at least x vetoes
/// (x + 1 when it beats c in the tie-break). Variants optionally strip one good candidate down to
/// the vetoes c needs it to keep, so that it beats the bad candidates in every outcome. Each
/// variant's profile is run through the exact veto checker and the cheapest safe one wins.
pub fn solve_safe_veto_dollar(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    if inst.rule != VotingRule::Veto {
        return Err(SolveError::Inapplicable(format!("veto solver given rule {}", inst.rule)));
    }
    let Payload::SafeDollar(model) = &inst.payload else {
        return Err(BriberyError::WrongVariant { expected: "safe-dollar" }.into());
    };
    inst.validate(false)?;
    let limit = budget(inst)?;
    if let Some(plan) = degenerate(inst)? {
        return Ok(Some(plan));
    }
    let m = inst.election.m();
    let p = &inst.election.profile;
    let c = inst.preferred().idx();
    let part = inst.partition()?;
    let r = inst.election.tiebreak.ranks();
    let mut vetoes = vec![0usize; m];
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, v) in p.votes.iter().enumerate() {
        vetoes[v.last().idx()] += 1;
        by_last[v.last().idx()].push(i);
    }
    for list in &mut by_last {
        list.sort_by_key(|&i| (model.prices[i], i));
    }
    let mut family = Vec::new();
    for x in 0..=vetoes[c] {
        // a guard is a good candidate stripped to the fewest vetoes c needs it to keep
        let guards = std::iter::once(None).chain((0..m).filter(|&g| g != c && part.good[g]).map(Some));
        for guard in guards {
            for bad_donors in [false, true] {
                for dump in (0..m).filter(|&a| a != c && Some(a) != guard) {
                    for guard_first in [false, true] {
                        family.push((x, guard, bad_donors, guard_first, Candidate(dump as u16)));
                    }
                }
            }
        }
    }
    let built = par::map(&family, |&(x, guard, bad_donors, guard_first, dump)| -> Result<Option<(u64, Vec<usize>, Profile)>, SolveError> {
        let need = |a: usize| x + (r[a] < r[c]) as usize;
        let short = |a: usize| need(a).saturating_sub(vetoes[a]);
        // a bad candidate must lose to c on its own vetoes
        if part.bad().iter().any(|b| short(b.idx()) > 0) {
            return Ok(None);
        }
        let from_c = &by_last[c][..vetoes[c] - x];
        let mut deficit: Vec<(usize, usize)> =
            (0..m).filter(|&a| a != c).map(|a| (a, short(a))).filter(|d| d.1 > 0).collect();
        let total: usize = deficit.iter().map(|d| d.1).sum();
        let extra = total.saturating_sub(from_c.len());
        let stripped: &[usize] = match guard {
            Some(g) if vetoes[g] > need(g) => &by_last[g][..vetoes[g] - need(g)],
            _ => &[],
        };
        let extra = extra.saturating_sub(stripped.len());
        let mut spare: Vec<usize> = (0..m)
            .filter(|&g| g != c && Some(g) != guard && (bad_donors || part.good[g]) && vetoes[g] > need(g))
            .flat_map(|g| by_last[g][..vetoes[g] - need(g)].iter().copied())
            .collect();
        if spare.len() < extra {
            return Ok(None);
        }
        spare.sort_by_key(|&i| (model.prices[i], i));
        // deficits are filled in purchase order
        let mut bought: Vec<usize> = if guard_first { stripped.to_vec() } else { from_c.to_vec() };
        bought.extend_from_slice(if guard_first { from_c } else { stripped });
        bought.extend_from_slice(&spare[..extra]);
        let cost: u64 = bought.iter().map(|&i| model.prices[i]).sum();
        if cost > limit {
            return Ok(None);
        }
        let mut votes = p.votes.clone();
        for &i in &bought {
            let t = match deficit.iter_mut().find(|d| d.1 > 0) {
                Some(d) => {
                    d.1 -= 1;
                    Candidate(d.0 as u16)
                }
                None => dump,
            };
            votes[i] = vetoing(&votes[i], t);
        }
        let q = Profile { num_candidates: m, ids: p.ids.clone(), votes };
        let probe = BriberyInstance { payload: Payload::IsSafeDollar(q.clone()), ..inst.clone() };
        if !is_safe_veto_flow(&probe)?.is_safe() {
            return Ok(None);
        }
        bought.sort();
        Ok(Some((cost, bought, q)))
    });
    let mut best: Option<(u64, Vec<usize>, Profile)> = None;
    for b in built {
        if let Some(cand) = b? {
            if best.as_ref().is_none_or(|(bc, bb, _)| (cand.0, &cand.1) < (*bc, bb)) {
                best = Some(cand);
            }
        }
    }
    let Some((cost, bribed, q)) = best else {
        return Ok(None);
    };
    Ok(Some(BriberyPlan { kind: PlanKind::Dollar { bribed, q }, cost }))
}

/// The vote with `t` moved to the last position.
fn vetoing(v: &LinearOrder, t: Candidate) -> LinearOrder {
    let mut order: Vec<Candidate> = v.as_slice().iter().copied().filter(|&a| a != t).collect();
    order.push(t);
    LinearOrder::new(order, v.len()).expect("permutation")
}
