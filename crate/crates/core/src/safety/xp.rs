use crate::bribery::{BriberyInstance, Pattern, Payload, ShiftVector};
use crate::election::{best_by_keys, score_keys, Candidate, LinearOrder, Profile};
use crate::flow::{max_flow, FlowNetwork};
use crate::par;

use super::{precheck, SafetyError, SafetyVerdict};

pub const XP_DEFAULT_BOUND: usize = 4;

/// Orders each voter may end up casting, over a shared sorted alphabet.
pub(crate) struct Alphabet {
    pub orders: Vec<LinearOrder>,
    /// reach[i] = alphabet indices voter i can cast.
    pub reach: Vec<Vec<usize>>,
    pub cap: Vec<usize>,
}

impl Alphabet {
    pub fn new(options: Vec<Vec<LinearOrder>>) -> Self {
        let mut orders: Vec<LinearOrder> = options.iter().flatten().cloned().collect();
        orders.sort();
        orders.dedup();
        let reach: Vec<Vec<usize>> = options
            .iter()
            .map(|opts| {
                let mut r: Vec<usize> = opts.iter().map(|o| orders.binary_search(o).unwrap()).collect();
                r.sort();
                r.dedup();
                r
            })
            .collect();
        let mut cap = vec![0; orders.len()];
        for r in &reach {
            for &j in r {
                cap[j] += 1;
            }
        }
        Alphabet { orders, reach, cap }
    }

    /// Count vectors summing to n with x_j ≤ cap_j, ascending lexicographic, extending `prefix`.
    pub fn for_each_from<R>(&self, n: usize, prefix: &[usize], f: &mut impl FnMut(&[usize]) -> Option<R>) -> Option<R> {
        let used: usize = prefix.iter().sum();
        if used > n {
            return None;
        }
        let mut x = prefix.to_vec();
        x.resize(self.orders.len(), 0);
        self.rec(prefix.len(), n - used, &mut x, f)
    }

    fn rec<R>(&self, j: usize, left: usize, x: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> Option<R>) -> Option<R> {
        let a = self.orders.len();
        if j == a {
            return if left == 0 { f(x) } else { None };
        }
        let room: usize = self.cap[j + 1..].iter().sum();
        let lo = left.saturating_sub(room);
        for v in lo..=left.min(self.cap[j]) {
            x[j] = v;
            if let Some(r) = self.rec(j + 1, left - v, x, f) {
                return Some(r);
            }
        }
        x[j] = 0;
        None
    }

    pub fn profile(&self, m: usize, x: &[usize]) -> Profile {
        let votes = x.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(self.orders[j].clone(), k)).collect();
        Profile::from_votes(m, votes)
    }

    /// Voter-to-order assignment realising the count vector, if one exists.
    pub fn matching(&self, x: &[usize]) -> Result<Option<Vec<usize>>, SafetyError> {
        let n = self.reach.len();
        let mut g = FlowNetwork::new();
        let slots: Vec<usize> = (0..self.orders.len()).map(|_| g.add_node()).collect();
        for (j, &k) in x.iter().enumerate() {
            if k > 0 {
                g.add_arc(slots[j], g.sink, 0, Some(k as i64), 0);
            }
        }
        let mut arcs = Vec::with_capacity(n);
        for r in &self.reach {
            let v = g.add_node();
            g.add_arc(g.source, v, 0, Some(1), 0);
            arcs.push(r.iter().filter(|&&j| x[j] > 0).map(|&j| (j, g.add_arc(v, slots[j], 0, Some(1), 0))).collect::<Vec<_>>());
        }
        let f = max_flow(&g)?;
        if f.value < n as i64 {
            return Ok(None);
        }
        Ok(Some(arcs.iter().map(|a| a.iter().find(|(_, e)| f.flows[*e] == 1).unwrap().0).collect()))
    }
}

pub(crate) fn voter_options(inst: &BriberyInstance) -> Vec<Vec<LinearOrder>> {
    let p = &inst.election.profile;
    let c = inst.preferred();
    match &inst.payload {
        Payload::IsSafeDollar(q) => p.votes.iter().zip(&q.votes).map(|(a, b)| vec![a.clone(), b.clone()]).collect(),
        Payload::IsSafeShift(s) => {
            p.votes.iter().zip(&s.0).map(|(v, &k)| (0..=k).map(|d| v.shifted(c, d)).collect()).collect()
        }
        _ => unreachable!("checked by caller"),
    }
}

/// Enumerates anonymous outcome profiles and matches voters to each one electing a bad candidate.
pub fn is_safe_anonymous_xp(inst: &BriberyInstance, bound: usize) -> Result<SafetyVerdict, SafetyError> {
    let m = inst.election.m();
    if m > bound {
        return Err(SafetyError::TooManyCandidates { m, bound });
    }
    let part = match precheck(inst)? {
        Ok(p) => p,
        Err(v) => return Ok(v),
    };
    if part.bad().is_empty() {
        return Ok(SafetyVerdict::Safe);
    }
    let alpha = Alphabet::new(voter_options(inst));
    let n = inst.election.n();
    let tb = inst.election.tiebreak.ranks();
    let search = |prefix: &Vec<usize>| -> Option<Result<(Vec<usize>, Candidate), SafetyError>> {
        alpha.for_each_from(n, prefix, &mut |x| {
            let r = alpha.profile(m, x);
            let w = best_by_keys(&score_keys(&r, &inst.rule), &tb);
            if !part.is_bad(w) {
                return None;
            }
            match alpha.matching(x) {
                Ok(Some(assign)) => Some(Ok((assign, w))),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        })
    };
    let first_len = alpha.orders.len().min(1);
    let prefixes: Vec<Vec<usize>> = if first_len == 0 {
        vec![vec![]]
    } else {
        (0..=alpha.cap[0].min(n)).map(|v| vec![v]).collect()
    };
    let found = par::find_map_first(&prefixes, search);
    let (assign, w) = match found {
        None => return Ok(SafetyVerdict::Safe),
        Some(r) => r?,
    };
    let p = &inst.election.profile;
    let c = inst.preferred();
    let witness = match &inst.payload {
        Payload::IsSafeDollar(q) => Pattern::Comply(
            (0..n).filter(|&i| p.votes[i] != q.votes[i] && alpha.orders[assign[i]] == q.votes[i]).collect(),
        ),
        _ => Pattern::Shift(ShiftVector(
            (0..n).map(|i| p.votes[i].position(c) - alpha.orders[assign[i]].position(c)).collect(),
        )),
    };
    Ok(SafetyVerdict::Unsafe { witness, winner: w })
}
