//! Plurality and the other zone rules. Every useful bribe lifts c into a voter's approved zone and
//! pushes exactly one candidate out, so a plan is a set of unit transfers into c.

use crate::bribery::{BriberyError, BriberyInstance, Payload, ShiftVector};
use crate::election::{Candidate, Profile, VotingRule};
use crate::flow::{min_cost_flow, FlowNetwork};
use crate::par;
use crate::safety::zone_size;

use super::{budget, degenerate, BriberyPlan, PlanKind, SolveError};

/// A voter who can be bought into c's column.
#[derive(Debug, Clone, Copy)]
struct Mover {
    voter: usize,
    /// Candidate leaving the zone when c enters it.
    source: Candidate,
    price: u64,
    shift: usize,
}

pub fn solve_safe_plurality(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    if inst.rule != VotingRule::Plurality {
        return Err(SolveError::Inapplicable(format!("plurality solver given rule {}", inst.rule)));
    }
    solve_zone(inst)
}

/// Shift bribery under k-approval, veto and k-veto, through the same transfer network.
pub fn solve_safe_zone_shift(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    match (&inst.rule, &inst.payload) {
        (VotingRule::Plurality | VotingRule::KApproval(_) | VotingRule::Veto | VotingRule::KVeto(_), Payload::SafeShift(_)) => {
            solve_zone(inst)
        }
        (VotingRule::Plurality | VotingRule::KApproval(_) | VotingRule::Veto | VotingRule::KVeto(_), _) => {
            Err(BriberyError::WrongVariant { expected: "safe-shift" }.into())
        }
        _ => Err(SolveError::Inapplicable(format!("zone solver given rule {}", inst.rule))),
    }
}

fn solve_zone(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    inst.validate(false)?;
    let limit = budget(inst)?;
    if let Some(plan) = degenerate(inst)? {
        return Ok(Some(plan));
    }
    let m = inst.election.m();
    let z = zone_size(&inst.rule, m).expect("zone rule");
    let p = &inst.election.profile;
    let c = inst.preferred();
    let mut score = vec![0i64; m];
    let mut movers = Vec::new();
    for (i, v) in p.votes.iter().enumerate() {
        for a in &v.as_slice()[..z] {
            score[a.idx()] += 1;
        }
        let pos = v.position(c);
        if pos < z {
            continue;
        }
        let shift = pos + 1 - z;
        let price = match &inst.payload {
            Payload::SafeDollar(d) => d.prices[i],
            Payload::SafeShift(s) => s.tables[i][shift],
            _ => unreachable!("checked by budget"),
        };
        movers.push(Mover { voter: i, source: v.at(z - 1), price, shift });
    }
    let mut units = vec![0i64; m];
    for mv in &movers {
        units[mv.source.idx()] += 1;
    }
    let fixed: Vec<i64> = (0..m).map(|a| score[a] - units[a]).collect();

    let part = inst.partition()?;
    let r = inst.election.tiebreak.ranks();
    let ahead = |a: usize, b: usize| (r[a] < r[b]) as i64;
    let ci = c.idx();
    // surplus a must lose before b can overtake it
    let excess = |a: usize, b: usize| (score[a] - score[b] + ahead(a, b)).max(0);
    // b stays beaten by c in every outcome whatever the plan
    let neutralised = |b: usize| {
        let lifted: i64 = (0..m).filter(|&a| a != b && a != ci).map(|a| excess(a, b)).sum();
        score[ci] + lifted > score[b] - ahead(ci, b)
    };
    let open: Vec<usize> = part.bad().iter().map(|b| b.idx()).filter(|&b| !neutralised(b)).collect();
    // Some guard must keep beating the strongest open bad candidate in every outcome; it then
    // beats every weaker one too.
    let guards: Vec<Option<(usize, i64)>> = match open.iter().copied().min_by_key(|&b| (-score[b], r[b])) {
        None => vec![None],
        Some(top) => (0..m)
            .filter(|&x| x != top && x != ci)
            .filter_map(|x| {
                let allowed = excess(x, top) - 1;
                (allowed >= 0).then_some(Some((x, allowed)))
            })
            .collect(),
    };
    if guards.is_empty() {
        return Ok(None);
    }

    let configs: Vec<(usize, Option<(usize, i64)>)> =
        (0..=movers.len()).flat_map(|k| guards.iter().map(move |&g| (k, g))).collect();
    let runs = par::map(&configs, |&(k, guard)| {
        route(&movers, &fixed, &units, m, ci, k as i64, guard, &|a| ahead(a, ci))
    });
    let mut best: Option<(u64, Vec<usize>)> = None;
    for run in runs {
        if let Some((cost, chosen)) = run? {
            if cost <= limit && best.as_ref().is_none_or(|(bc, bv)| (cost, &chosen) < (*bc, bv)) {
                best = Some((cost, chosen));
            }
        }
    }
    let Some((cost, chosen)) = best else {
        return Ok(None);
    };
    let kind = match &inst.payload {
        Payload::SafeDollar(_) => {
            let mut votes = p.votes.clone();
            for &j in &chosen {
                let i = movers[j].voter;
                votes[i] = votes[i].with_raised(c, z - 1);
            }
            let bribed = chosen.iter().map(|&j| movers[j].voter).collect();
            PlanKind::Dollar { bribed, q: Profile { num_candidates: m, ids: p.ids.clone(), votes } }
        }
        _ => {
            let mut s = vec![0; p.len()];
            for &j in &chosen {
                s[movers[j].voter] = movers[j].shift;
            }
            PlanKind::Shift(ShiftVector(s))
        }
    };
    Ok(Some(BriberyPlan { kind, cost }))
}

/// Cheapest set of exactly `k` transfers that makes c win and, with a guard `(x, allowed)`, moves
/// at most `allowed` units away from x.
#[allow(clippy::too_many_arguments)]
fn route(
    movers: &[Mover],
    fixed: &[i64],
    units: &[i64],
    m: usize,
    c: usize,
    k: i64,
    guard: Option<(usize, i64)>,
    ahead_of_c: &(dyn Fn(usize) -> i64 + Sync),
) -> Result<Option<(u64, Vec<usize>)>, SolveError> {
    let lambda = fixed[c] + k;
    let mut g = FlowNetwork::new();
    let y: Vec<usize> = (0..m).map(|_| g.add_node()).collect();
    for a in 0..m {
        if a == c {
            g.add_arc(y[a], g.sink, k, Some(k), 0);
            continue;
        }
        let cap = lambda - ahead_of_c(a) - fixed[a];
        let lower = match guard {
            Some((x, allowed)) if x == a => (units[a] - allowed).max(0),
            _ => 0,
        };
        if cap < lower {
            return Ok(None);
        }
        g.add_arc(y[a], g.sink, lower, Some(cap), 0);
    }
    let mut buy = Vec::with_capacity(movers.len());
    for mv in movers {
        let v = g.add_node();
        g.add_arc(g.source, v, 0, Some(1), 0);
        buy.push(g.add_arc(v, y[c], 0, Some(1), mv.price as i64));
        g.add_arc(v, y[mv.source.idx()], 0, Some(1), 0);
    }
    let Some((flow, cost)) = min_cost_flow(&g, movers.len() as i64)? else {
        return Ok(None);
    };
    let chosen = buy.iter().enumerate().filter(|(_, &e)| flow.flows[e] == 1).map(|(j, _)| j).collect();
    Ok(Some((cost as u64, chosen)))
}
