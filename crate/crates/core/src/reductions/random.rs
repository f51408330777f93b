use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bribery::{
    BriberPreference, BriberyInstance, DollarCostModel, Payload, ShiftCostModel, ShiftVector,
};
use crate::election::{Election, LinearOrder, Profile, VotingRule};

use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayloadKind {
    IsSafeDollar,
    IsSafeShift,
    SafeDollar,
    SafeShift,
}

#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub m: usize,
    pub n: usize,
    pub rule: VotingRule,
    pub kind: PayloadKind,
    /// Upper bound on a $ price or on one step of a shift table.
    pub max_price: u64,
    pub max_budget: u64,
    /// Cap on bribed voters (Is-Safe $) and on nonzero shifts (Is-Safe shift).
    pub max_active: usize,
    /// Redraw the briber so that c is not the winner and some candidate is bad.
    pub nontrivial: bool,
    pub seed: u64,
}

impl RandomSpec {
    pub fn new(m: usize, n: usize, rule: VotingRule, kind: PayloadKind, seed: u64) -> Self {
        RandomSpec { m, n, rule, kind, max_price: 3, max_budget: 6, max_active: n, nontrivial: false, seed }
    }
}

pub fn candidate_names(m: usize) -> Vec<String> {
    if m <= 26 {
        (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=m).map(|i| format!("c{i}")).collect()
    }
}

fn perm(rng: &mut ChaCha8Rng, m: usize) -> LinearOrder {
    let mut v: Vec<usize> = (0..m).collect();
    v.shuffle(rng);
    LinearOrder::from_indices(&v)
}

/// Reproducible pseudo-random instance; equal specs give equal instances.
pub fn random_instance(spec: &RandomSpec) -> Result<BriberyInstance, ReductionError> {
    let (m, n) = (spec.m, spec.n);
    if m < 2 || n < 1 {
        return Err(ReductionError::Precondition("random instances need m >= 2 and n >= 1".into()));
    }
    spec.rule.validate(m).map_err(|e| ReductionError::Precondition(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let profile = Profile::from_votes(m, (0..n).map(|_| perm(&mut rng, m)).collect());
    let tiebreak = perm(&mut rng, m);
    let mut order = perm(&mut rng, m);
    if spec.nontrivial && m >= 3 {
        let w = crate::election::winner(&profile, &spec.rule, &tiebreak).expect("n >= 1");
        let mut v: Vec<usize> = order.as_slice().iter().map(|c| c.idx()).collect();
        if v[0] == w.idx() {
            let j = rng.gen_range(1..m);
            v.swap(0, j);
        }
        if v[m - 1] == w.idx() {
            let j = rng.gen_range(1..m - 1);
            v.swap(m - 1, j);
        }
        order = LinearOrder::from_indices(&v);
    }
    let c = order.top();
    let payload = match spec.kind {
        PayloadKind::IsSafeDollar => {
            let mut q = profile.clone();
            let mut active = 0;
            for i in 0..n {
                if active < spec.max_active && rng.gen_bool(0.6) {
                    let mut v = perm(&mut rng, m);
                    if rng.gen_bool(0.7) {
                        v = v.with_raised(c, 0);
                    }
                    if v != q.votes[i] {
                        active += 1;
                    }
                    q.votes[i] = v;
                }
            }
            Payload::IsSafeDollar(q)
        }
        PayloadKind::IsSafeShift => {
            let mut s = vec![0; n];
            let mut active = 0;
            for i in 0..n {
                let pos = profile.votes[i].position(c);
                if pos > 0 && active < spec.max_active && rng.gen_bool(0.7) {
                    s[i] = rng.gen_range(1..=pos);
                    active += 1;
                }
            }
            Payload::IsSafeShift(ShiftVector(s))
        }
        PayloadKind::SafeDollar => Payload::SafeDollar(DollarCostModel {
            prices: (0..n).map(|_| rng.gen_range(0..=spec.max_price)).collect(),
            budget: rng.gen_range(0..=spec.max_budget),
        }),
        PayloadKind::SafeShift => Payload::SafeShift(ShiftCostModel {
            tables: (0..n)
                .map(|_| {
                    let mut t = vec![0u64; m];
                    for k in 1..m {
                        t[k] = t[k - 1] + rng.gen_range(0..=spec.max_price);
                    }
                    t
                })
                .collect(),
            budget: rng.gen_range(0..=spec.max_budget),
        }),
    };
    Ok(BriberyInstance {
        election: Election { names: candidate_names(m), profile, tiebreak },
        rule: spec.rule,
        briber: BriberPreference { order },
        payload,
    })
}
