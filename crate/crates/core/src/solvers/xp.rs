//! Constant-candidate solver. Voters casting the same vote are interchangeable except for price,
//! so a plan is, per class of identical votes, a multiset of outcomes; the cheapest voters of the
//! class take the priced ones.

use crate::bribery::{BriberyError, BriberyInstance, Payload, ShiftVector};
use crate::election::{winner, LinearOrder, Profile};
use crate::flow::{min_cost_flow, FlowNetwork};
use crate::par;
use crate::safety::{is_safe_anonymous_xp, SafetyError, SafetyVerdict};

use super::{budget, degenerate, BriberyPlan, PlanKind, SolveError};

/// Largest number of joint plans the solver will list.
pub const XP_PLAN_GUARD: u128 = 5_000_000;

/// One way to settle a class: per voter, the chosen option index.
#[derive(Debug, Clone)]
struct Settlement {
    cost: u64,
    choice: Vec<(usize, usize)>,
}

pub fn solve_safe_anonymous_xp(inst: &BriberyInstance, bound: usize) -> Result<Option<BriberyPlan>, SolveError> {
    let m = inst.election.m();
    if m > bound {
        return Err(SafetyError::TooManyCandidates { m, bound }.into());
    }
    inst.validate(false)?;
    let limit = budget(inst)?;
    if let Some(plan) = degenerate(inst)? {
        return Ok(Some(plan));
    }
    let p = &inst.election.profile;
    let c = inst.preferred();
    let mut classes: Vec<(LinearOrder, Vec<usize>)> = Vec::new();
    for (i, v) in p.votes.iter().enumerate() {
        match classes.iter_mut().find(|(o, _)| o == v) {
            Some((_, members)) => members.push(i),
            None => classes.push((v.clone(), vec![i])),
        }
    }
    let all_orders = permutations(m);
    // options[k] = the outcomes available to class k; option 0 is the original vote
    let options: Vec<Vec<LinearOrder>> = classes
        .iter()
        .map(|(v, _)| match &inst.payload {
            Payload::SafeShift(_) => (0..=v.position(c)).map(|d| v.shifted(c, d)).collect(),
            _ => {
                let mut o = vec![v.clone()];
                o.extend(all_orders.iter().filter(|x| *x != v).cloned());
                o
            }
        })
        .collect();
    let mut total: u128 = 1;
    let mut settlements = Vec::with_capacity(classes.len());
    for ((_, members), opts) in classes.iter().zip(&options) {
        let list = settle(inst, members, opts.len())?;
        total = total.saturating_mul(list.len() as u128);
        if total > XP_PLAN_GUARD {
            return Err(SolveError::Guard { count: total, limit: XP_PLAN_GUARD });
        }
        settlements.push(list);
    }

    let mut plans: Vec<(u64, Vec<usize>, Profile)> = Vec::new();
    let mut pick = vec![0usize; classes.len()];
    loop {
        let cost: u64 = pick.iter().zip(&settlements).map(|(&j, s)| s[j].cost).sum();
        if cost <= limit {
            let mut votes = p.votes.clone();
            let mut key = vec![0usize; p.len()];
            for (k, &j) in pick.iter().enumerate() {
                for &(i, o) in &settlements[k][j].choice {
                    votes[i] = options[k][o].clone();
                    key[i] = o;
                }
            }
            let q = Profile { num_candidates: m, ids: p.ids.clone(), votes };
            if winner(&q, &inst.rule, &inst.election.tiebreak)? == c {
                plans.push((cost, key, q));
            }
        }
        let mut k = classes.len();
        loop {
            if k == 0 {
                return finish(inst, bound, plans);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < settlements[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

fn finish(inst: &BriberyInstance, bound: usize, mut plans: Vec<(u64, Vec<usize>, Profile)>) -> Result<Option<BriberyPlan>, SolveError> {
    let p = &inst.election.profile;
    let c = inst.preferred();
    let as_plan = |cost: u64, q: &Profile| -> BriberyPlan {
        let kind = match &inst.payload {
            Payload::SafeShift(_) => PlanKind::Shift(ShiftVector(
                p.votes.iter().zip(&q.votes).map(|(a, b)| a.position(c) - b.position(c)).collect(),
            )),
            _ => PlanKind::Dollar {
                bribed: (0..p.len()).filter(|&i| p.votes[i] != q.votes[i]).collect(),
                q: q.clone(),
            },
        };
        BriberyPlan { kind, cost }
    };
    let keyed: Vec<(u64, Vec<usize>, Profile)> = {
        plans.sort_by_key(|a| (a.0, plan_key(inst, &a.2, &a.1)));
        plans
    };
    let hit = par::find_map_first(&keyed, |(cost, _, q)| {
        let plan = as_plan(*cost, q);
        match is_safe_anonymous_xp(&plan.replay(inst), bound) {
            Ok(SafetyVerdict::Safe) => Some(Ok(plan)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    Ok(hit.transpose()?)
}

/// Bribed set for $ plans, the shift vector for shift plans.
fn plan_key(inst: &BriberyInstance, q: &Profile, opts: &[usize]) -> Vec<usize> {
    let p = &inst.election.profile;
    match &inst.payload {
        Payload::SafeShift(_) => opts.to_vec(),
        _ => (0..p.len()).filter(|&i| p.votes[i] != q.votes[i]).collect(),
    }
}

/// Every multiset of `k` options over the class members, each with its cheapest assignment.
fn settle(inst: &BriberyInstance, members: &[usize], k: usize) -> Result<Vec<Settlement>, SolveError> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; k];
    multisets(members.len(), 0, &mut counts, &mut |x| out.push(x.to_vec()));
    out.into_iter().map(|x| assign(inst, members, &x)).collect()
}

fn multisets(left: usize, j: usize, x: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if j + 1 == x.len() {
        x[j] = left;
        f(x);
        x[j] = 0;
        return;
    }
    for v in (0..=left).rev() {
        x[j] = v;
        multisets(left - v, j + 1, x, f);
    }
    x[j] = 0;
}

/// Cheapest assignment of class members to option slots with the given counts.
fn assign(inst: &BriberyInstance, members: &[usize], counts: &[usize]) -> Result<Settlement, SolveError> {
    let price = |i: usize, o: usize| -> u64 {
        match &inst.payload {
            Payload::SafeShift(s) => s.tables[i][o],
            Payload::SafeDollar(d) => {
                if o == 0 {
                    0
                } else {
                    d.prices[i]
                }
            }
            _ => 0,
        }
    };
    if let Payload::SafeDollar(d) = &inst.payload {
        // every bribe costs the same whatever the new vote, so the cheapest voters take them
        let mut order = members.to_vec();
        order.sort_by_key(|&i| (d.prices[i], i));
        let mut slots: Vec<usize> = counts.iter().enumerate().skip(1).flat_map(|(o, &n)| std::iter::repeat_n(o, n)).collect();
        let stay = counts[0];
        let mut choice: Vec<(usize, usize)> = order[order.len() - stay..].iter().map(|&i| (i, 0)).collect();
        let bribed = &order[..order.len() - stay];
        let mut by_index = bribed.to_vec();
        by_index.sort();
        slots.truncate(by_index.len());
        choice.extend(by_index.iter().copied().zip(slots));
        let cost = bribed.iter().map(|&i| d.prices[i]).sum();
        choice.sort();
        return Ok(Settlement { cost, choice });
    }
    let mut g = FlowNetwork::new();
    let slot: Vec<usize> = counts.iter().map(|_| g.add_node()).collect();
    for (o, &n) in counts.iter().enumerate() {
        if n > 0 {
            g.add_arc(slot[o], g.sink, 0, Some(n as i64), 0);
        }
    }
    let mut arcs = Vec::new();
    for &i in members {
        let v = g.add_node();
        g.add_arc(g.source, v, 0, Some(1), 0);
        for (o, &n) in counts.iter().enumerate() {
            if n > 0 {
                arcs.push((i, o, g.add_arc(v, slot[o], 0, Some(1), price(i, o) as i64)));
            }
        }
    }
    let (flow, cost) = min_cost_flow(&g, members.len() as i64)?.ok_or(BriberyError::VoterMismatch)?;
    let choice = arcs.iter().filter(|(_, _, e)| flow.flows[*e] == 1).map(|&(i, o, _)| (i, o)).collect();
    Ok(Settlement { cost: cost as u64, choice })
}

fn permutations(m: usize) -> Vec<LinearOrder> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<LinearOrder>) {
        if cur.len() == used.len() {
            out.push(LinearOrder::from_indices(cur));
            return;
        }
        for a in 0..used.len() {
            if !used[a] {
                used[a] = true;
                cur.push(a);
                rec(cur, used, out);
                cur.pop();
                used[a] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}
