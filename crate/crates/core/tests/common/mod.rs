//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use safe_bribery::bribery::{enumerate_noncompliance, realise, Pattern};
use safe_bribery::election::winner;
use safe_bribery::{BriberyInstance, SafetyVerdict};

/// Recomputes every outcome from scratch through `winner`.
pub fn naive_oracle(inst: &BriberyInstance) -> SafetyVerdict {
    let q = inst.full_compliance().unwrap();
    let tb = &inst.election.tiebreak;
    let wq = winner(&q, &inst.rule, tb).unwrap();
    if wq != inst.preferred() {
        return SafetyVerdict::NotSuccessful(wq);
    }
    let part = inst.partition().unwrap();
    for (pat, r) in enumerate_noncompliance(inst).unwrap() {
        let x = winner(&r, &inst.rule, tb).unwrap();
        if part.is_bad(x) {
            return SafetyVerdict::Unsafe { witness: pat, winner: x };
        }
    }
    SafetyVerdict::Safe
}

/// A witness is valid when replaying it elects a bad candidate.
pub fn witness_valid(inst: &BriberyInstance, v: &SafetyVerdict) -> bool {
    match v {
        SafetyVerdict::Unsafe { witness, winner: w } => {
            let r = realise(inst, witness).unwrap();
            let x = winner(&r, &inst.rule, &inst.election.tiebreak).unwrap();
            x == *w && inst.partition().unwrap().is_bad(x)
        }
        SafetyVerdict::NotSuccessful(w) => {
            let q = inst.full_compliance().unwrap();
            winner(&q, &inst.rule, &inst.election.tiebreak).unwrap() == *w && *w != inst.preferred()
        }
        SafetyVerdict::Safe => true,
    }
}

pub fn same_class(a: &SafetyVerdict, b: &SafetyVerdict) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

pub fn pattern_is_dollar(p: &Pattern) -> bool {
    matches!(p, Pattern::Comply(_))
}

/// Reorders the tie-break to c, then the other goods, then the bads (briber order within each);
/// `None` if the winner moves so that the shape breaks.
pub fn shaped_tiebreak(inst: &BriberyInstance) -> Option<BriberyInstance> {
    use safe_bribery::LinearOrder;
    let mut out = inst.clone();
    for _ in 0..3 {
        let part = out.partition().ok()?;
        let b = &out.briber.order;
        let mut v: Vec<usize> = b.as_slice().iter().filter(|a| !part.is_bad(**a)).map(|a| a.idx()).collect();
        v.extend(b.as_slice().iter().filter(|a| part.is_bad(**a)).map(|a| a.idx()));
        let tb = LinearOrder::from_indices(&v);
        if tb == out.election.tiebreak {
            return Some(out);
        }
        out.election.tiebreak = tb;
    }
    None
}

fn all_orders(m: usize) -> Vec<safe_bribery::LinearOrder> {
    fn rec(cur: &mut Vec<usize>, m: usize, out: &mut Vec<safe_bribery::LinearOrder>) {
        if cur.len() == m {
            out.push(safe_bribery::LinearOrder::from_indices(cur));
            return;
        }
        for a in 0..m {
            if !cur.contains(&a) {
                cur.push(a);
                rec(cur, m, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), m, &mut out);
    out
}

/// Cheapest safe and successful plan cost by trying every bribed profile (Safe $) or every shift
/// vector (Safe shift), deciding safety with `naive_oracle`.
pub fn exhaustive_min_cost(inst: &BriberyInstance) -> Option<u64> {
    use safe_bribery::bribery::{shift_cost, Payload};
    use safe_bribery::ShiftVector;
    let p = &inst.election.profile;
    let n = p.len();
    let c = inst.preferred();
    let (choices, budget): (Vec<Vec<(u64, Payload)>>, u64) = match &inst.payload {
        Payload::SafeDollar(d) => {
            let orders = all_orders(p.num_candidates);
            let per: Vec<Vec<(u64, Payload)>> = (0..n)
                .map(|i| {
                    let mut v = vec![(0, Payload::IsSafeShift(ShiftVector(vec![])))];
                    for o in orders.iter().filter(|o| **o != p.votes[i]) {
                        let mut q = p.clone();
                        q.votes[i] = o.clone();
                        v.push((d.prices[i], Payload::IsSafeDollar(q)));
                    }
                    v
                })
                .collect();
            (per, d.budget)
        }
        Payload::SafeShift(s) => {
            let per = (0..n)
                .map(|i| {
                    (0..=p.votes[i].position(c))
                        .map(|k| {
                            let mut v = vec![0; n];
                            v[i] = k;
                            (shift_cost(&safe_bribery::bribery::ShiftCostModel { tables: s.tables.clone(), budget: 0 }, &ShiftVector(v)).unwrap(), Payload::IsSafeShift(ShiftVector(vec![k])))
                        })
                        .collect()
                })
                .collect();
            (per, s.budget)
        }
        _ => panic!("Safe payload expected"),
    };
    let mut best: Option<u64> = None;
    let mut pick = vec![0usize; n];
    loop {
        let cost: u64 = pick.iter().enumerate().map(|(i, &j)| choices[i][j].0).sum();
        if cost <= budget && best.is_none_or(|b| cost < b) {
            let payload = match &inst.payload {
                Payload::SafeDollar(_) => {
                    let mut q = p.clone();
                    for (i, &j) in pick.iter().enumerate() {
                        if let Payload::IsSafeDollar(qq) = &choices[i][j].1 {
                            q.votes[i] = qq.votes[i].clone();
                        }
                    }
                    Payload::IsSafeDollar(q)
                }
                _ => Payload::IsSafeShift(ShiftVector(pick.clone())),
            };
            let probe = BriberyInstance { payload, ..inst.clone() };
            if naive_oracle(&probe).is_safe() {
                best = Some(cost);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// Plain bribery: does any plan within budget make c win under full compliance?
pub fn classical_feasible(inst: &BriberyInstance) -> bool {
    use safe_bribery::bribery::{apply_shift, Payload};
    use safe_bribery::ShiftVector;
    let p = &inst.election.profile;
    let n = p.len();
    let c = inst.preferred();
    let tb = &inst.election.tiebreak;
    match &inst.payload {
        Payload::SafeDollar(d) => {
            // each voter keeps its vote (choice 0) or is bribed to any order
            let orders = all_orders(p.num_candidates);
            let mut pick = vec![0usize; n];
            loop {
                let cost: u64 = (0..n).filter(|&i| pick[i] > 0).map(|i| d.prices[i]).sum();
                if cost <= d.budget {
                    let mut q = p.clone();
                    for i in (0..n).filter(|&i| pick[i] > 0) {
                        q.votes[i] = orders[pick[i] - 1].clone();
                    }
                    if winner(&q, &inst.rule, tb).unwrap() == c {
                        return true;
                    }
                }
                let mut k = n;
                loop {
                    if k == 0 {
                        return false;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] <= orders.len() {
                        break;
                    }
                    pick[k] = 0;
                }
            }
        }
        Payload::SafeShift(s) => {
            let caps: Vec<usize> = p.votes.iter().map(|v| v.position(c)).collect();
            let mut pick = vec![0usize; n];
            loop {
                let cost: u64 = pick.iter().zip(&s.tables).map(|(&k, t)| t[k]).sum();
                if cost <= s.budget && winner(&apply_shift(p, c, &ShiftVector(pick.clone())).unwrap(), &inst.rule, tb).unwrap() == c {
                    return true;
                }
                let mut k = n;
                loop {
                    if k == 0 {
                        return false;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] <= caps[k] {
                        break;
                    }
                    pick[k] = 0;
                }
            }
        }
        _ => panic!("Safe payload expected"),
    }
}

/// Exact cover by trying every t-subset of the sets.
pub fn has_cover(x: &safe_bribery::reductions::X3CInstance) -> bool {
    fn rec(x: &safe_bribery::reductions::X3CInstance, from: usize, left: usize, used: &mut Vec<bool>) -> bool {
        if left == 0 {
            return used.iter().all(|&u| u);
        }
        for i in from..x.sets.len() {
            if x.sets[i].iter().all(|&e| !used[e]) {
                x.sets[i].iter().for_each(|&e| used[e] = true);
                let ok = rec(x, i + 1, left - 1, used);
                x.sets[i].iter().for_each(|&e| used[e] = false);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(x, 0, x.t(), &mut vec![false; x.universe.len()])
}

/// Random 3-set instance over 3t elements; with `plant`, the first t sets are an exact cover.
pub fn random_x3c(seed: u64, t: usize, m: usize, plant: bool) -> safe_bribery::reductions::X3CInstance {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = 3 * t;
    let mut sets = Vec::new();
    if plant {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        sets.extend(perm.chunks(3).map(|c| c.to_vec()));
    }
    let all: Vec<usize> = (0..n).collect();
    while sets.len() < m {
        sets.push(all.choose_multiple(&mut rng, 3).copied().collect());
    }
    sets.shuffle(&mut rng);
    safe_bribery::reductions::X3CInstance::numbered(n, sets).unwrap()
}

/// Random 4-set instance with every element in exactly three sets, by shuffling three copies
/// of the 4k elements into blocks of four until no block repeats an element.
pub fn random_x3c34(seed: u64, k: usize) -> safe_bribery::reductions::X3CInstance {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = 4 * k;
    let mut slots: Vec<usize> = (0..n).flat_map(|e| [e, e, e]).collect();
    loop {
        slots.shuffle(&mut rng);
        let sets: Vec<Vec<usize>> = slots.chunks(4).map(|c| c.to_vec()).collect();
        let simple = sets.iter().all(|s| (0..4).all(|i| (i + 1..4).all(|j| s[i] != s[j])));
        if simple {
            return safe_bribery::reductions::X3CInstance::numbered(n, sets).unwrap();
        }
    }
}
