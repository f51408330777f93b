//! End-to-end acceptance run: one PASS/FAIL line per criterion, with the tolerance it is held to.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{
    classical_feasible, exhaustive_min_cost, has_cover, naive_oracle, random_x3c, random_x3c34, same_class,
    shaped_tiebreak, witness_valid,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use safe_bribery::bribery::realise;
use safe_bribery::election::{rule_scores, score_keys, winner};
use safe_bribery::flow::{feasible_flow, max_flow, min_cost_flow, FlowNetwork};
use safe_bribery::io::{check_report, is_safe_report, parse_instance, serialize_instance, solve_report, Method};
use safe_bribery::reductions::{
    generate_hardness_instance, random_instance, solve_x3c, ConstructionKind, PayloadKind, RandomSpec, ReductionError,
};
use safe_bribery::safety::*;
use safe_bribery::solvers::*;
use safe_bribery::{BriberyInstance, Candidate, LinearOrder, Profile, SafetyVerdict, VotingRule};

type Outcome = Result<String, String>;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("{what} took {took:.2?}, limit {limit:?}"))
    }
}

// 1 ------------------------------------------------------------------------------------------

fn intro_example() -> Outcome {
    let start = Instant::now();
    let inst = parse_instance(&data("intro.elec")).map_err(|e| e.to_string())?;
    let p = inst.profile();
    let names = ["a", "b", "c"].map(|n| inst.election.candidate(n).unwrap());
    let tops = names.map(|a| p.votes.iter().filter(|v| v.top() == a).count());
    if tops != [10, 8, 4] || inst.briber.order.as_slice() != [names[2], names[0], names[1]] {
        return Err(format!("fixture is not the intro instance: tops {tops:?}"));
    }
    let flow = is_safe_plurality_flow(&inst).map_err(|e| e.to_string())?;
    let oracle = is_safe_oracle(&inst, OracleOptions::default()).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(1), "intro example")?;
    for (label, v) in [("flow", &flow), ("oracle", &oracle)] {
        let SafetyVerdict::Unsafe { witness, winner: w } = v else {
            return Err(format!("{label} says {}", v.token()));
        };
        let r = realise(&inst, witness).map_err(|e| e.to_string())?;
        let x = winner(&r, &inst.rule, &inst.election.tiebreak).unwrap();
        if x != names[1] || *w != names[1] {
            return Err(format!("{label} witness elects {} not b", inst.election.name(x)));
        }
    }
    Ok(format!("flow and oracle UNSAFE, witnesses elect b, {took:.2?}"))
}

// 2 ------------------------------------------------------------------------------------------

/// Random Is-Safe instances with m <= 4, n <= 6 and at most 8 bribed voters.
fn checker_instances(rule: VotingRule, kind: PayloadKind, count: usize, shaped: bool) -> Vec<BriberyInstance> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        seed += 1;
        let m = 2 + (seed % 3) as usize;
        let n = 1 + (seed % 6) as usize;
        let rule = match rule {
            VotingRule::KApproval(k) | VotingRule::KVeto(k) if k >= m => continue,
            r => r,
        };
        let mut spec = RandomSpec::new(m, n, rule, kind, seed * 7919 + kind as u64);
        spec.nontrivial = !seed.is_multiple_of(4);
        spec.max_active = 8;
        let mut inst = random_instance(&spec).unwrap();
        if shaped && seed.is_multiple_of(2) {
            match shaped_tiebreak(&inst) {
                Some(i) => inst = i,
                None => continue,
            }
        }
        out.push(inst);
    }
    out
}

fn checkers_vs_oracle() -> Outcome {
    let start = Instant::now();
    type Check = fn(&BriberyInstance) -> Result<SafetyVerdict, SafetyError>;
    let xp: Check = |i| is_safe_anonymous_xp(i, XP_DEFAULT_BOUND);
    let suites: Vec<(&str, VotingRule, PayloadKind, Check)> = vec![
        ("plurality-flow $", VotingRule::Plurality, PayloadKind::IsSafeDollar, is_safe_plurality_flow),
        ("plurality-flow shift", VotingRule::Plurality, PayloadKind::IsSafeShift, is_safe_plurality_flow),
        ("veto-flow $", VotingRule::Veto, PayloadKind::IsSafeDollar, is_safe_veto_flow),
        ("bucklin-greedy shift", VotingRule::SimplifiedBucklin, PayloadKind::IsSafeShift, is_safe_bucklin_shift_greedy),
        ("zone-flow approval:2", VotingRule::KApproval(2), PayloadKind::IsSafeShift, is_safe_zone_flow),
        ("zone-flow veto:2", VotingRule::KVeto(2), PayloadKind::IsSafeShift, is_safe_zone_flow),
        ("zone-flow veto", VotingRule::Veto, PayloadKind::IsSafeShift, is_safe_zone_flow),
        ("xp borda $", VotingRule::Borda, PayloadKind::IsSafeDollar, xp),
        ("xp copeland shift", VotingRule::Copeland(1, 2), PayloadKind::IsSafeShift, xp),
        ("xp maximin $", VotingRule::Maximin, PayloadKind::IsSafeDollar, xp),
        ("xp bucklin shift", VotingRule::SimplifiedBucklin, PayloadKind::IsSafeShift, xp),
    ];
    let mut total = 0;
    for (label, rule, kind, check) in suites {
        let shaped = rule == VotingRule::SimplifiedBucklin;
        for (i, inst) in checker_instances(rule, kind, 500, shaped).iter().enumerate() {
            let want = naive_oracle(inst);
            let lib = is_safe_oracle(inst, OracleOptions::default()).map_err(|e| e.to_string())?;
            let got = check(inst).map_err(|e| format!("{label} #{i}: {e}"))?;
            if !same_class(&want, &lib) || !same_class(&want, &got) || !witness_valid(inst, &got) {
                return Err(format!("{label} #{i}: naive {want:?}, oracle {lib:?}, checker {got:?}"));
            }
            total += 1;
        }
    }
    let took = within(start, Duration::from_secs(300), "checker suite")?;
    Ok(format!("{total} instances over 11 checker/rule pairs (500 each), 0 mismatches, {took:.2?}"))
}

// 3 ------------------------------------------------------------------------------------------

fn solver_instances(rule: VotingRule, kind: PayloadKind, count: usize, shaped: bool) -> Vec<BriberyInstance> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        seed += 1;
        let m = 2 + (seed % 2) as usize;
        let n = 1 + (seed % 5) as usize;
        let rule = match rule {
            VotingRule::KApproval(k) | VotingRule::KVeto(k) if k >= m => continue,
            r => r,
        };
        let mut spec = RandomSpec::new(m, n, rule, kind, seed * 104_729 + kind as u64);
        spec.nontrivial = !seed.is_multiple_of(4);
        spec.max_price = 3;
        let mut inst = random_instance(&spec).unwrap();
        if shaped && !seed.is_multiple_of(3) {
            match shaped_tiebreak(&inst) {
                Some(i) => inst = i,
                None => continue,
            }
        }
        out.push(inst);
    }
    out
}

fn solvers_vs_exhaustive() -> Outcome {
    let start = Instant::now();
    type Solve = fn(&BriberyInstance) -> Result<Option<BriberyPlan>, SolveError>;
    let xp: Solve = |i| solve_safe_anonymous_xp(i, XP_DEFAULT_BOUND);
    let en: Solve = |i| solve_safe_shift_enumeration(i, i.election.n() * (i.election.m() - 1));
    let suites: Vec<(&str, VotingRule, PayloadKind, Solve)> = vec![
        ("plurality $", VotingRule::Plurality, PayloadKind::SafeDollar, solve_safe_plurality),
        ("plurality shift", VotingRule::Plurality, PayloadKind::SafeShift, solve_safe_plurality),
        ("zone veto shift", VotingRule::Veto, PayloadKind::SafeShift, solve_safe_zone_shift),
        ("zone approval:2 shift", VotingRule::KApproval(2), PayloadKind::SafeShift, solve_safe_zone_shift),
        ("veto $", VotingRule::Veto, PayloadKind::SafeDollar, solve_safe_veto_dollar),
        ("bucklin shift", VotingRule::SimplifiedBucklin, PayloadKind::SafeShift, solve_safe_bucklin_shift),
        ("xp borda $", VotingRule::Borda, PayloadKind::SafeDollar, xp),
        ("xp maximin shift", VotingRule::Maximin, PayloadKind::SafeShift, xp),
        ("xp copeland $", VotingRule::Copeland(0, 1), PayloadKind::SafeDollar, xp),
        ("enum borda shift", VotingRule::Borda, PayloadKind::SafeShift, en),
    ];
    let mut total = 0;
    let mut feasible = 0;
    for (label, rule, kind, solve) in suites {
        let shaped = rule == VotingRule::SimplifiedBucklin;
        for (i, inst) in solver_instances(rule, kind, 200, shaped).iter().enumerate() {
            let plan = solve(inst).map_err(|e| format!("{label} #{i}: {e}"))?;
            let want = exhaustive_min_cost(inst);
            if plan.as_ref().map(|p| p.cost) != want {
                return Err(format!("{label} #{i}: solver {:?} vs exhaustive {want:?}", plan.map(|p| p.cost)));
            }
            if let Some(p) = &plan {
                if !naive_oracle(&p.replay(inst)).is_safe() {
                    return Err(format!("{label} #{i}: plan does not replay to safe and successful"));
                }
                feasible += 1;
            }
            total += 1;
        }
    }
    let took = within(start, Duration::from_secs(600), "solver suite")?;
    Ok(format!("{total} instances over 10 solver/rule pairs (200 each, {feasible} feasible), exact cost match, {took:.2?}"))
}

// 4 ------------------------------------------------------------------------------------------

fn classical_equivalence() -> Outcome {
    type Solve = fn(&BriberyInstance) -> Result<Option<BriberyPlan>, SolveError>;
    let xp: Solve = |i| solve_safe_anonymous_xp(i, XP_DEFAULT_BOUND);
    let suites: Vec<(&str, VotingRule, PayloadKind, Solve)> = vec![
        ("plurality $", VotingRule::Plurality, PayloadKind::SafeDollar, solve_safe_plurality),
        ("plurality shift", VotingRule::Plurality, PayloadKind::SafeShift, solve_safe_plurality),
        ("veto $", VotingRule::Veto, PayloadKind::SafeDollar, solve_safe_veto_dollar),
        ("borda $", VotingRule::Borda, PayloadKind::SafeDollar, xp),
        ("maximin shift", VotingRule::Maximin, PayloadKind::SafeShift, xp),
    ];
    let mut total = 0;
    let mut yes = 0;
    for (label, rule, kind, solve) in suites {
        for seed in 0..100u64 {
            let spec = RandomSpec::new(3, 1 + (seed % 5) as usize, rule, kind, 31 * seed + 5);
            let inst = classical_bribery_equivalence(&random_instance(&spec).unwrap()).map_err(|e| e.to_string())?;
            let got = solve(&inst).map_err(|e| format!("{label} seed {seed}: {e}"))?.is_some();
            let want = classical_feasible(&inst);
            if got != want {
                return Err(format!("{label} seed {seed}: safe solver {got}, plain bribery {want}"));
            }
            yes += want as usize;
            total += 1;
        }
    }
    Ok(format!("{total} instances ($ and shift, 5 rule/solver pairs, {yes} feasible), 100% agreement"))
}

// 5 ------------------------------------------------------------------------------------------

fn cand(inst: &BriberyInstance, name: &str) -> Candidate {
    inst.election.candidate(name).unwrap()
}

fn certification() -> Outcome {
    let kinds = [
        ConstructionKind::KApprovalDollar(3),
        ConstructionKind::KApprovalDollar(4),
        ConstructionKind::BordaShift,
        ConstructionKind::BucklinDollar,
        ConstructionKind::CondorcetDollar(VotingRule::Copeland(0, 1)),
        ConstructionKind::CondorcetDollar(VotingRule::Maximin),
        ConstructionKind::CopelandShift,
        ConstructionKind::MaximinShift,
    ];
    let mut corpus = Vec::new();
    for t in 1..=3 {
        for m in 1..=10 {
            for seed in 0..2u64 {
                for plant in [true, false] {
                    if !(plant && m < t) {
                        corpus.push(random_x3c(seed * 977 + 10 * t as u64 + m as u64, t, m, plant));
                    }
                }
            }
        }
    }
    let mut applied = 0;
    let mut certify = |kind: ConstructionKind, x: &safe_bribery::reductions::X3CInstance| -> Result<(), String> {
        let h = match generate_hardness_instance(kind, x) {
            Ok(h) => h,
            Err(ReductionError::Precondition(_)) => return Ok(()),
            Err(e) => return Err(format!("{kind}: {e}")),
        };
        let cover = solve_x3c(x).map_err(|e| e.to_string())?.is_some();
        if cover != has_cover(x) {
            return Err(format!("solve_x3c disagrees with brute force on {}", x.render()));
        }
        let v = is_safe_oracle(&h.instance, OracleOptions { force: true }).map_err(|e| e.to_string())?;
        if matches!(v, SafetyVerdict::NotSuccessful(_)) || cover == v.is_safe() {
            return Err(format!("{kind}: cover {cover} but verdict {} on {}", v.token(), x.render()));
        }
        applied += 1;
        Ok(())
    };
    for kind in kinds {
        for x in &corpus {
            certify(kind, x)?;
        }
    }
    for k in 1..=2 {
        for seed in 0..8 {
            certify(ConstructionKind::BordaDollar, &random_x3c34(seed, k))?;
        }
    }

    // score ledgers
    for (t, m) in [(1, 3), (2, 5), (3, 7)] {
        let x = random_x3c(m as u64, t, m, false);
        let h = generate_hardness_instance(ConstructionKind::BordaShift, &x).map_err(|e| e.to_string())?;
        let s = score_keys(h.instance.profile(), &VotingRule::Borda);
        let gap = s[cand(&h.instance, "w").idx()] - s[cand(&h.instance, "c").idx()];
        if gap != 5 * t as i64 {
            return Err(format!("borda-shift s(w)-s(c) = {gap}, want {}", 5 * t));
        }
    }
    for (t, m) in [(1, 3), (3, 6)] {
        let x = random_x3c(3 + m as u64, t, m, true);
        let h = generate_hardness_instance(ConstructionKind::CopelandShift, &x).map_err(|e| e.to_string())?;
        let s = rule_scores(h.instance.profile(), &h.instance.rule).unwrap();
        let sx = s.entries[cand(&h.instance, "x").idx()];
        if sx != (3 * t as i64 + 2).into() {
            return Err(format!("copeland-shift s(x) = {sx}, want {}", 3 * t + 2));
        }
    }
    for (t, m) in [(2, 6), (3, 8)] {
        let x = random_x3c(7 * m as u64, t, m, true);
        let h = generate_hardness_instance(ConstructionKind::CondorcetDollar(VotingRule::Copeland(0, 1)), &x)
            .map_err(|e| e.to_string())?;
        let inst = &h.instance;
        let mut r = inst.profile().clone();
        let q = inst.full_compliance().unwrap();
        for s in solve_x3c(&x).unwrap().unwrap() {
            let i = r.voter_index(&format!("s{}", s + 1)).unwrap();
            r.votes[i] = q.votes[i].clone();
        }
        let s = score_keys(&r, &VotingRule::Copeland(0, 1));
        let got = (s[cand(inst, "x").idx()], s[cand(inst, "c").idx()], s[cand(inst, "w").idx()]);
        let t = t as i64;
        if got != (3 * t + 2, 3 * t + 1, 0) {
            return Err(format!("condorcet-$ copeland scores {got:?}, want {:?}", (3 * t + 2, 3 * t + 1, 0)));
        }
    }
    Ok(format!("{applied} generated instances certified (9 kinds), ledgers exact (borda-shift 5t, copeland 3t+2)"))
}

// 6 ------------------------------------------------------------------------------------------

fn random_profile(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Profile {
    let votes = (0..n)
        .map(|_| {
            let mut v: Vec<usize> = (0..m).collect();
            v.shuffle(rng);
            LinearOrder::from_indices(&v)
        })
        .collect();
    Profile::from_votes(m, votes)
}

/// Condorcet winner straight from vote positions.
fn condorcet(p: &Profile) -> Option<Candidate> {
    let m = p.num_candidates;
    (0..m).map(|a| Candidate(a as u16)).find(|&a| {
        (0..m).map(|b| Candidate(b as u16)).filter(|&b| b != a).all(|b| {
            let wins = p.votes.iter().filter(|v| v.position(a) < v.position(b)).count();
            2 * wins > p.len()
        })
    })
}

const ALL_RULES: [VotingRule; 8] = [
    VotingRule::Plurality,
    VotingRule::KApproval(2),
    VotingRule::Veto,
    VotingRule::KVeto(2),
    VotingRule::Borda,
    VotingRule::SimplifiedBucklin,
    VotingRule::Copeland(1, 2),
    VotingRule::Maximin,
];

fn rule_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..1000 {
        let (m, n) = (rng.gen_range(3..=6), rng.gen_range(1..=9));
        let p = random_profile(&mut rng, m, n);
        let tb = random_profile(&mut rng, m, 1).votes[0].clone();
        let mut shuffled = p.clone();
        shuffled.votes.shuffle(&mut rng);
        for rule in ALL_RULES {
            let same = winner(&p, &rule, &tb).unwrap() == winner(&shuffled, &rule, &tb).unwrap()
                && rule_scores(&p, &rule).unwrap() == rule_scores(&shuffled, &rule).unwrap();
            if !same {
                return Err(format!("anonymity: {rule} on permutation {i}"));
            }
        }
    }
    let mut found = 0;
    while found < 1000 {
        let (m, n) = (rng.gen_range(2..=6), rng.gen_range(1..=9));
        let p = random_profile(&mut rng, m, n);
        let Some(cw) = condorcet(&p) else { continue };
        let tb = random_profile(&mut rng, m, 1).votes[0].clone();
        for rule in [VotingRule::Copeland(0, 1), VotingRule::Copeland(1, 2), VotingRule::Copeland(1, 1), VotingRule::Maximin] {
            if winner(&p, &rule, &tb).unwrap() != cw {
                return Err(format!("condorcet consistency: {rule} misses {cw:?}"));
            }
        }
        found += 1;
    }
    for i in 0..1000 {
        let m = rng.gen_range(2..=7);
        let (n, k) = (rng.gen_range(1..=9), rng.gen_range(1..m));
        let p = random_profile(&mut rng, m, n);
        let tb = random_profile(&mut rng, m, 1).votes[0].clone();
        if winner(&p, &VotingRule::KVeto(k), &tb).unwrap() != winner(&p, &VotingRule::KApproval(m - k), &tb).unwrap() {
            return Err(format!("veto:{k} vs approval:{} on profile {i}", m - k));
        }
    }
    Ok("anonymity 1000x8 rules, condorcet consistency 1000 profiles, k-veto = (m-k)-approval 1000, 0 failures".into())
}

// 7 ------------------------------------------------------------------------------------------

/// Minimum s-t cut over every node subset.
fn min_cut(g: &FlowNetwork) -> i64 {
    let inner: Vec<usize> = (0..g.num_nodes).filter(|&v| v != g.source && v != g.sink).collect();
    (0..1u32 << inner.len())
        .map(|mask| {
            let side = |v: usize| v == g.source || inner.iter().position(|&u| u == v).is_some_and(|i| mask >> i & 1 == 1);
            g.arcs.iter().filter(|a| side(a.from) && !side(a.to)).map(|a| a.cap.unwrap()).sum()
        })
        .min()
        .unwrap()
}

fn cut_matches(g: &FlowNetwork) -> Result<(), String> {
    let f = max_flow(g).map_err(|e| e.to_string())?;
    let checked = g.validate(&f.flows)?;
    if checked != f.value || f.value != min_cut(g) {
        return Err(format!("max flow {} vs min cut {} on {g:?}", f.value, min_cut(g)));
    }
    Ok(())
}

/// Every flow vector inside the windows, by odometer.
fn all_flows(g: &FlowNetwork, mut visit: impl FnMut(&[i64])) {
    let mut f: Vec<i64> = g.arcs.iter().map(|a| a.lower).collect();
    loop {
        visit(&f);
        let mut i = 0;
        loop {
            if i == f.len() {
                return;
            }
            if f[i] < g.arcs[i].cap.unwrap() {
                f[i] += 1;
                break;
            }
            f[i] = g.arcs[i].lower;
            i += 1;
        }
    }
}

fn random_network(rng: &mut ChaCha8Rng, nodes: usize, arcs: usize, lowers: bool, costs: bool) -> FlowNetwork {
    let mut g = FlowNetwork::new();
    for _ in 2..nodes {
        g.add_node();
    }
    for _ in 0..arcs {
        let from = rng.gen_range(0..nodes);
        let to = (from + rng.gen_range(1..nodes)) % nodes;
        let cap = rng.gen_range(0..=3);
        let lower = if lowers && rng.gen_bool(0.3) { rng.gen_range(0..=cap.min(1)) } else { 0 };
        let cost = if costs { rng.gen_range(-2..=3) } else { 0 };
        g.add_arc(from, to, lower, Some(cap), cost);
    }
    g
}

fn flow_engine() -> Outcome {
    // every network on 3 nodes with capacities 0..=3 and on 4 nodes with capacities 0..=2
    let mut exhaustive = 0;
    for (nodes, caps) in [(3usize, 4u32), (4, 3)] {
        let pairs: Vec<(usize, usize)> =
            (0..nodes).flat_map(|u| (0..nodes).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        for code in 0..caps.pow(pairs.len() as u32) {
            let mut g = FlowNetwork::new();
            for _ in 2..nodes {
                g.add_node();
            }
            let mut c = code;
            for &(u, v) in &pairs {
                if c % caps > 0 {
                    g.add_arc(u, v, 0, Some((c % caps) as i64), 0);
                }
                c /= caps;
            }
            cut_matches(&g)?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3000 {
        let nodes = rng.gen_range(5..=8);
        let arcs = rng.gen_range(0..=3 * nodes);
        cut_matches(&random_network(&mut rng, nodes, arcs, false, false))?;
    }
    let mut costed = 0;
    while costed < 500 {
        let nodes = rng.gen_range(2..=5);
        let arcs = rng.gen_range(1..=6);
        let g = random_network(&mut rng, nodes, arcs, true, true);
        let required = rng.gen_range(0..=3);
        let mut best: Option<i64> = None;
        let mut best_value: Option<i64> = None;
        all_flows(&g, |f| {
            if let Ok(v) = g.validate(f) {
                best_value = best_value.max(Some(v));
                if v == required {
                    let cost: i64 = f.iter().zip(&g.arcs).map(|(x, a)| x * a.cost).sum();
                    best = Some(best.map_or(cost, |b| b.min(cost)));
                }
            }
        });
        let got = min_cost_flow(&g, required).map_err(|e| e.to_string())?;
        if let Some((a, cost)) = &got {
            let v = g.validate(&a.flows)?;
            let recomputed: i64 = a.flows.iter().zip(&g.arcs).map(|(x, a)| x * a.cost).sum();
            if v != required || recomputed != *cost {
                return Err(format!("min-cost flow value {v} cost {cost} recomputed {recomputed} on {g:?}"));
            }
        }
        if got.as_ref().map(|x| x.1) != best {
            return Err(format!("min-cost flow {:?} vs exhaustive {best:?} on {g:?} req {required}", got.map(|x| x.1)));
        }
        let feas = feasible_flow(&g).map_err(|e| e.to_string())?;
        if let Some(a) = &feas {
            g.validate(&a.flows)?;
        }
        if feas.map(|a| a.value) != best_value {
            return Err(format!("feasible flow vs exhaustive max {best_value:?} on {g:?}"));
        }
        costed += 1;
    }
    Ok(format!(
        "max-flow = min-cut on {exhaustive} enumerated + 3000 random networks (<= 8 nodes); \
         min-cost and feasible flow exact on {costed} networks; all flows validated"
    ))
}

// 8 ------------------------------------------------------------------------------------------

fn corpus_files() -> Vec<(String, String)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "corpus"].iter().collect();
    let mut files: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn reports(files: &[(String, String)]) -> Result<String, String> {
    let mut out = check_report(files, None).map_err(|e| e.to_string())?.text;
    for (_, text) in files {
        let inst = parse_instance(text).map_err(|e| e.to_string())?;
        for m in [Method::Auto, Method::Oracle] {
            out += &is_safe_report(&inst, inst.rule, m).map_err(|e| e.to_string())?.text;
        }
    }
    for f in ["solve-plurality-dollar.elec", "solve-veto-dollar.elec", "solve-bucklin-shift.elec", "solve-borda-shift.elec"] {
        let inst = parse_instance(&data(f)).map_err(|e| e.to_string())?;
        out += &solve_report(&inst, inst.rule, Method::Auto).map_err(|e| e.to_string())?.text;
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let files = corpus_files();
    let first = reports(&files)?;
    for _ in 0..3 {
        if reports(&files)? != first {
            return Err("repeated runs differ".into());
        }
    }
    #[cfg(feature = "parallel")]
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        if pool.install(|| reports(&files))? != first {
            return Err(format!("report differs on a {threads}-thread pool"));
        }
    }
    for seed in 0..50 {
        let spec = RandomSpec::new(4, 6, ALL_RULES[seed as usize % 8], PayloadKind::SafeShift, seed);
        if serialize_instance(&random_instance(&spec).unwrap()) != serialize_instance(&random_instance(&spec).unwrap()) {
            return Err(format!("random instance seed {seed} not reproducible"));
        }
    }
    let x = random_x3c(3, 2, 6, true);
    let kind = ConstructionKind::KApprovalDollar(3);
    let gen = || generate_hardness_instance(kind, &x).map(|h| serialize_instance(&h.instance)).map_err(|e| e.to_string());
    if gen()? != gen()? {
        return Err("generator output differs".into());
    }
    let pools = if cfg!(feature = "parallel") { "1/2/8-thread pools" } else { "sequential build" };
    Ok(format!("{} report bytes identical over 4 runs and {pools}; seeds and generator reproducible", first.len()))
}

// --------------------------------------------------------------------------------------------

/// Criteria that may fail without failing the suite; each needs a ledger entry.
const ALLOWED_TO_FAIL: [usize; 0] = [];

#[test]
fn acceptance() {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        ("intro example", "verdict UNSAFE from flow and oracle, witness elects b, < 1 s", intro_example),
        ("checkers vs oracle", "100% agreement, >= 500 per rule, < 5 min", checkers_vs_oracle),
        ("solvers vs exhaustive", "exact feasibility and cost, >= 200 per solver, < 10 min", solvers_vs_exhaustive),
        ("classical equivalence", "100% agreement, >= 100 per model", classical_equivalence),
        ("reduction certification", "100% agreement, ledgers exact", certification),
        ("rule properties", "0 failures in 1000 trials each", rule_properties),
        ("flow engine", "0 mismatches, every flow validated", flow_engine),
        ("determinism", "byte-identical reports", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, tolerance, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name} ({tolerance}): {detail}"),
            Err(detail) => {
                println!("[FAIL] {id} {name} ({tolerance}): {detail}");
                if !ALLOWED_TO_FAIL.contains(&id) {
                    failed.push(id);
                }
            }
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
