mod common;

use common::{exhaustive_min_cost, naive_oracle};
use safe_bribery::reductions::{random_instance, PayloadKind, RandomSpec};
use safe_bribery::solvers::*;
use safe_bribery::{BriberyInstance, VotingRule};

fn verify(inst: &BriberyInstance, plan: &Option<BriberyPlan>, label: &str) {
    let want = exhaustive_min_cost(inst);
    assert_eq!(plan.as_ref().map(|p| p.cost), want, "{label}: cost mismatch\n{inst:?}\n{plan:?}");
    if let Some(plan) = plan {
        let replay = plan.replay(inst);
        assert!(naive_oracle(&replay).is_safe(), "{label}: plan not safe and successful {plan:?}");
    }
}

fn sweep(rule: VotingRule, kind: PayloadKind, seeds: u64, m_max: usize, solve: impl Fn(&BriberyInstance) -> Option<BriberyPlan>) {
    for seed in 0..seeds {
        let m = 2 + (seed as usize % (m_max - 1));
        let n = 1 + (seed % 5) as usize;
        let rule = match rule {
            VotingRule::KApproval(_) | VotingRule::KVeto(_) if m <= 2 => VotingRule::Plurality,
            r => r,
        };
        let mut spec = RandomSpec::new(m, n, rule, kind, seed);
        spec.nontrivial = seed % 4 != 0;
        let mut inst = random_instance(&spec).unwrap();
        if rule == VotingRule::SimplifiedBucklin && seed % 3 != 0 {
            match common::shaped_tiebreak(&inst) {
                Some(i) => inst = i,
                None => continue,
            }
        }
        let plan = solve(&inst);
        verify(&inst, &plan, &format!("{rule} seed {seed}"));
    }
}

#[test]
fn plurality_solver_is_optimal() {
    sweep(VotingRule::Plurality, PayloadKind::SafeDollar, 300, 3, |i| solve_safe_plurality(i).unwrap());
    sweep(VotingRule::Plurality, PayloadKind::SafeShift, 300, 3, |i| solve_safe_plurality(i).unwrap());
}

#[test]
fn zone_solver_is_optimal() {
    sweep(VotingRule::KApproval(2), PayloadKind::SafeShift, 200, 4, |i| solve_safe_zone_shift(i).unwrap());
    sweep(VotingRule::KVeto(2), PayloadKind::SafeShift, 200, 4, |i| solve_safe_zone_shift(i).unwrap());
    sweep(VotingRule::Veto, PayloadKind::SafeShift, 200, 3, |i| solve_safe_zone_shift(i).unwrap());
}

#[test]
fn veto_solver_is_optimal() {
    sweep(VotingRule::Veto, PayloadKind::SafeDollar, 400, 3, |i| solve_safe_veto_dollar(i).unwrap());
}

#[test]
fn bucklin_solver_is_optimal() {
    sweep(VotingRule::SimplifiedBucklin, PayloadKind::SafeShift, 400, 4, |i| solve_safe_bucklin_shift(i).unwrap());
}

#[test]
fn xp_solver_is_optimal() {
    for rule in [VotingRule::Borda, VotingRule::Copeland(1, 2), VotingRule::Maximin, VotingRule::Plurality] {
        sweep(rule, PayloadKind::SafeDollar, 80, 3, |i| solve_safe_anonymous_xp(i, 4).unwrap());
        sweep(rule, PayloadKind::SafeShift, 80, 3, |i| solve_safe_anonymous_xp(i, 4).unwrap());
    }
}

#[test]
fn shift_enumeration_is_optimal() {
    for rule in [VotingRule::Borda, VotingRule::Copeland(0, 1), VotingRule::SimplifiedBucklin] {
        sweep(rule, PayloadKind::SafeShift, 100, 4, solve_all);
    }
}

fn solve_all(i: &BriberyInstance) -> Option<BriberyPlan> {
    let c = i.preferred();
    let total = i.election.profile.votes.iter().map(|v| v.position(c)).sum();
    solve_safe_shift_enumeration(i, total).unwrap()
}

#[test]
fn classical_equivalence_decides_plain_bribery() {
    for seed in 0..200u64 {
        let kind = if seed % 2 == 0 { PayloadKind::SafeDollar } else { PayloadKind::SafeShift };
        let n = 1 + (seed % 5) as usize;
        let spec = RandomSpec::new(3, n, VotingRule::Plurality, kind, seed);
        let inst = classical_bribery_equivalence(&random_instance(&spec).unwrap()).unwrap();
        let w = inst.election.winner(&inst.rule).unwrap();
        if w != inst.preferred() {
            assert_eq!(inst.briber.order.last(), w, "seed {seed}: winner not ranked last");
            assert!(inst.partition().unwrap().bad().is_empty());
        }
        let plan = solve_safe_plurality(&inst).unwrap();
        assert_eq!(plan.is_some(), common::classical_feasible(&inst), "seed {seed}");
    }
}

#[test]
fn plans_are_monotone_in_budget() {
    for seed in 0..150u64 {
        let mut spec = RandomSpec::new(3, 1 + (seed % 5) as usize, VotingRule::Veto, PayloadKind::SafeDollar, seed);
        spec.nontrivial = true;
        let mut inst = random_instance(&spec).unwrap();
        let mut last: Option<u64> = None;
        for b in 0..10 {
            if let safe_bribery::Payload::SafeDollar(d) = &mut inst.payload {
                d.budget = b;
            }
            let cost = solve_safe_veto_dollar(&inst).unwrap().map(|p| p.cost);
            if let Some(prev) = last {
                assert!(cost.is_some_and(|c| c <= prev), "seed {seed} budget {b}");
            }
            last = cost.or(last);
        }
    }
}

#[test]
fn degenerate_instances_cost_nothing() {
    for seed in 0..50u64 {
        let spec = RandomSpec::new(3, 4, VotingRule::Veto, PayloadKind::SafeDollar, seed);
        let mut inst = random_instance(&spec).unwrap();
        let w = inst.election.winner(&inst.rule).unwrap();
        let mut order: Vec<usize> = vec![w.idx()];
        order.extend((0..3).filter(|&a| a != w.idx()));
        inst.briber.order = safe_bribery::LinearOrder::from_indices(&order);
        let plan = solve_safe_veto_dollar(&inst).unwrap().unwrap();
        assert_eq!(plan.cost, 0);
    }
}
