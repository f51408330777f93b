//! Simplified Bucklin shift bribery.
//!
//! Let ℓ be the round at which P is decided and h = ⌊n/2⌋. Under a shift only c gains, so with c
//! first in the tie-break c wins Q exactly when it holds a majority of top-ℓ positions, or a
//! majority of top-(ℓ+1) positions after every other round-ℓ majority has been broken. With goods
//! ahead of bads a bad candidate can win an outcome only at round ℓ, so safety reduces to whether
//! c can enter the top ℓ often enough to knock out every good majority holder while staying short
//! of a majority itself.

use crate::bribery::{BriberyError, BriberyInstance, Payload, ShiftVector};
use crate::election::{bucklin_rounds, VotingRule};
use crate::safety::greedy_shape;

use super::enumeration::solve_all_vectors;
use super::{budget, degenerate, BriberyPlan, PlanKind, SolveError};

#[derive(Debug, Clone, Copy)]
struct Opt {
    count: usize,
    push: usize,
    cost: u64,
    shift: usize,
}

pub fn solve_safe_bucklin_shift(inst: &BriberyInstance) -> Result<Option<BriberyPlan>, SolveError> {
    if inst.rule != VotingRule::SimplifiedBucklin {
        return Err(SolveError::Inapplicable(format!("bucklin solver given rule {}", inst.rule)));
    }
    let Payload::SafeShift(model) = &inst.payload else {
        return Err(BriberyError::WrongVariant { expected: "safe-shift" }.into());
    };
    inst.validate(true)?;
    let limit = budget(inst)?;
    if let Some(plan) = degenerate(inst)? {
        return Ok(Some(plan));
    }
    let c = inst.preferred();
    let part = inst.partition()?;
    let tb = &inst.election.tiebreak;
    if tb.at(0) != c || !greedy_shape(tb, c, &part) {
        return solve_all_vectors(inst);
    }
    let p = &inst.election.profile;
    let m = inst.election.m();
    let n = p.len();
    let h = n / 2;
    let ell = bucklin_rounds(p)[part.winner.idx()].expect("non-empty profile");
    let count_top = |k: usize| {
        let mut cnt = vec![0usize; m];
        for v in &p.votes {
            for a in &v.as_slice()[..k.min(m)] {
                cnt[a.idx()] += 1;
            }
        }
        cnt
    };
    let cnt = count_top(ell);
    let cnt_next = count_top(ell + 1);
    let pos: Vec<usize> = p.votes.iter().map(|v| v.position(c)).collect();
    let price = |i: usize, s: usize| model.tables[i][s];

    let need = |a: usize| cnt[a].saturating_sub(h);
    let good_need: usize = (0..m).filter(|&g| g != c.idx() && part.good[g]).map(need).sum();
    let bad_majority = part.bad().iter().any(|b| cnt[b.idx()] > h);
    let every_plan_safe = !bad_majority || cnt[c.idx()] + good_need > h;

    let mut found: Vec<(u64, Vec<usize>)> = Vec::new();
    let k1 = h + 1 - cnt[c.idx()];
    if every_plan_safe {
        found.extend(into_top(p, &pos, ell, k1, None, &price));
        found.extend(second_round(p, &pos, ell, h, &cnt, cnt_next[c.idx()], c.idx(), &price));
    } else {
        // only round-ℓ wins, leaving some good majority holder out of c's reach
        for g in (0..m).filter(|&g| g != c.idx() && part.good[g] && need(g) > 0) {
            found.extend(into_top(p, &pos, ell, k1, Some((g, need(g) - 1)), &price));
        }
    }
    let best = found.into_iter().filter(|(cost, _)| *cost <= limit).min();
    Ok(best.map(|(cost, s)| BriberyPlan { kind: PlanKind::Shift(ShiftVector(s)), cost }))
}

/// Cheapest way to bring c into the top ℓ of `k` votes, taking at most `cap.1` votes whose
/// position-ℓ candidate is `cap.0`.
fn into_top(
    p: &crate::Profile,
    pos: &[usize],
    ell: usize,
    k: usize,
    cap: Option<(usize, usize)>,
    price: &dyn Fn(usize, usize) -> u64,
) -> Option<(u64, Vec<usize>)> {
    let mut cand: Vec<(u64, usize)> = (0..p.len()).filter(|&i| pos[i] >= ell).map(|i| (price(i, pos[i] + 1 - ell), i)).collect();
    cand.sort();
    let mut s = vec![0; p.len()];
    let mut cost = 0;
    let mut taken = 0;
    let mut capped = 0;
    for (pr, i) in cand {
        if taken == k {
            break;
        }
        if let Some((g, most)) = cap {
            if p.votes[i].at(ell - 1).idx() == g {
                if capped == most {
                    continue;
                }
                capped += 1;
            }
        }
        s[i] = pos[i] + 1 - ell;
        cost += pr;
        taken += 1;
    }
    (taken == k).then_some((cost, s))
}

/// Cheapest plan giving c a top-(ℓ+1) majority while breaking every round-ℓ majority of another
/// candidate.
#[allow(clippy::too_many_arguments)]
fn second_round(
    p: &crate::Profile,
    pos: &[usize],
    ell: usize,
    h: usize,
    cnt: &[usize],
    cnt_next_c: usize,
    c: usize,
    price: &dyn Fn(usize, usize) -> u64,
) -> Option<(u64, Vec<usize>)> {
    let m = cnt.len();
    if ell >= m {
        return None;
    }
    let demand = (h + 1).saturating_sub(cnt_next_c);
    let must_push = |a: usize| if a == c { 0 } else { cnt[a].saturating_sub(h) };
    // one stage per candidate that must be pushed out, plus one for everybody else
    let mut stages: Vec<(usize, Vec<(usize, Vec<Opt>)>)> = (0..m).map(|a| (must_push(a), Vec::new())).collect();
    let mut rest = Vec::new();
    for i in 0..p.len() {
        if pos[i] < ell {
            continue;
        }
        let mut opts = vec![Opt { count: 0, push: 0, cost: 0, shift: 0 }];
        if pos[i] > ell {
            opts.push(Opt { count: 1, push: 0, cost: price(i, pos[i] - ell), shift: pos[i] - ell });
        }
        let a = p.votes[i].at(ell - 1).idx();
        let pushes = must_push(a) > 0;
        opts.push(Opt {
            count: (pos[i] > ell) as usize,
            push: pushes as usize,
            cost: price(i, pos[i] + 1 - ell),
            shift: pos[i] + 1 - ell,
        });
        if pushes {
            stages[a].1.push((i, opts));
        } else {
            rest.push((i, opts));
        }
    }
    stages.push((0, rest));
    let tables: Vec<StageTable> = stages.iter().map(|(need, voters)| StageTable::build(voters, demand, *need)).collect();
    // combine stages over the capped count
    let mut comb: Vec<Vec<Option<u64>>> = vec![vec![None; demand + 1]];
    comb[0][0] = Some(0);
    for t in &tables {
        let prev = comb.last().unwrap();
        let mut next = vec![None; demand + 1];
        for (k, pc) in prev.iter().enumerate() {
            let Some(pc) = pc else { continue };
            for (j, sc) in t.best.iter().enumerate() {
                let Some(sc) = sc else { continue };
                let kk = (k + j).min(demand);
                if next[kk].is_none_or(|v| pc + sc < v) {
                    next[kk] = Some(pc + sc);
                }
            }
        }
        comb.push(next);
    }
    let total = comb.last().unwrap()[demand]?;
    let mut s = vec![0; p.len()];
    let mut want = demand;
    let mut left = total;
    for (si, t) in tables.iter().enumerate().rev() {
        let prev = &comb[si];
        let (k, j) = (0..=demand)
            .flat_map(|k| (0..=demand).map(move |j| (k, j)))
            .find(|&(k, j)| {
                (k + j).min(demand) == want
                    && matches!((prev[k], t.best[j]), (Some(a), Some(b)) if a + b == left)
            })
            .expect("table consistency");
        t.trace(&stages[si].1, j, &mut s);
        left -= t.best[j].unwrap();
        want = k;
    }
    Some((total, s))
}

/// dp[j][k][q]: cheapest choice over the first j voters of a stage with capped count k and
/// capped pushes q.
struct StageTable {
    demand: usize,
    need: usize,
    dp: Vec<Vec<Vec<Option<u64>>>>,
    best: Vec<Option<u64>>,
}

impl StageTable {
    fn build(voters: &[(usize, Vec<Opt>)], demand: usize, need: usize) -> Self {
        let mut dp = vec![vec![vec![None; need + 1]; demand + 1]];
        dp[0][0][0] = Some(0u64);
        for (_, opts) in voters {
            let prev = dp.last().unwrap();
            let mut next = vec![vec![None; need + 1]; demand + 1];
            for k in 0..=demand {
                for q in 0..=need {
                    let Some(c0) = prev[k][q] else { continue };
                    for o in opts {
                        let (kk, qq) = ((k + o.count).min(demand), (q + o.push).min(need));
                        let v: u64 = c0 + o.cost;
                        if next[kk][qq].is_none_or(|x: u64| v < x) {
                            next[kk][qq] = Some(v);
                        }
                    }
                }
            }
            dp.push(next);
        }
        let best = dp.last().unwrap().iter().map(|row| row[need]).collect();
        StageTable { demand, need, dp, best }
    }

    fn trace(&self, voters: &[(usize, Vec<Opt>)], k_end: usize, s: &mut [usize]) {
        let (mut k, mut q) = (k_end, self.need);
        let mut cost = self.dp[voters.len()][k][q].expect("reachable");
        for j in (0..voters.len()).rev() {
            let (i, opts) = &voters[j];
            let prev = &self.dp[j];
            let (o, pk, pq) = opts
                .iter()
                .flat_map(|o| (0..=self.demand).flat_map(move |pk| (0..=self.need).map(move |pq| (o, pk, pq))))
                .find(|(o, pk, pq)| {
                    (pk + o.count).min(self.demand) == k
                        && (pq + o.push).min(self.need) == q
                        && prev[*pk][*pq].is_some_and(|v| v + o.cost == cost)
                })
                .expect("table consistency");
            s[*i] = o.shift;
            cost -= o.cost;
            k = pk;
            q = pq;
        }
    }
}
