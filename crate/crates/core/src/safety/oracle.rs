use crate::bribery::{BriberyInstance, NoncomplianceSpace, Payload};
use crate::election::{Candidate, LinearOrder};
use crate::par;
use crate::tally::Tally;

use super::{precheck, SafetyError, SafetyVerdict};

pub const DOLLAR_GUARD: usize = 20;
pub const SHIFT_GUARD: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    /// Lift the outcome-count guards.
    pub force: bool,
}

/// Exhaustive enumeration of every partial-compliance outcome.
pub fn is_safe_oracle(inst: &BriberyInstance, opts: OracleOptions) -> Result<SafetyVerdict, SafetyError> {
    let space = NoncomplianceSpace::of(inst)?;
    let count = space.count();
    if !opts.force {
        if space.is_dollar() && space.active.len() > DOLLAR_GUARD {
            return Err(SafetyError::Guard { count, limit: 1u128 << DOLLAR_GUARD });
        }
        if !space.is_dollar() && count > SHIFT_GUARD {
            return Err(SafetyError::Guard { count, limit: SHIFT_GUARD });
        }
    }
    let part = match precheck(inst)? {
        Ok(p) => p,
        Err(v) => return Ok(v),
    };
    if part.bad().is_empty() {
        return Ok(SafetyVerdict::Safe);
    }
    let walker = Walker::new(inst, &space);
    let found = walker.first_bad(&|x: Candidate| part.is_bad(x));
    Ok(match found {
        Some((digits, x)) => SafetyVerdict::Unsafe { witness: space.pattern(&digits), winner: x },
        None => SafetyVerdict::Safe,
    })
}

/// Odometer over the non-compliance space with an incrementally updated tally.
pub(crate) struct Walker<'a> {
    inst: &'a BriberyInstance,
    space: &'a NoncomplianceSpace,
    base: Tally,
    tb_rank: Vec<usize>,
    c: Candidate,
}

struct State {
    tally: Tally,
    /// Current vote of each active voter (shift model).
    votes: Vec<Vec<Candidate>>,
    cpos: Vec<usize>,
    digits: Vec<usize>,
}

impl<'a> Walker<'a> {
    pub(crate) fn new(inst: &'a BriberyInstance, space: &'a NoncomplianceSpace) -> Self {
        let base = Tally::new(&inst.election.profile, &inst.rule);
        Walker { inst, space, base, tb_rank: inst.election.tiebreak.ranks(), c: inst.preferred() }
    }

    fn fresh(&self) -> State {
        let p = &self.inst.election.profile;
        let votes: Vec<Vec<Candidate>> = self.space.active.iter().map(|&i| p.votes[i].as_slice().to_vec()).collect();
        let cpos = votes.iter().map(|v| v.iter().position(|&x| x == self.c).unwrap()).collect();
        State { tally: self.base.clone(), votes, cpos, digits: vec![0; self.space.active.len()] }
    }

    fn set(&self, st: &mut State, j: usize, to: usize) {
        let from = st.digits[j];
        if from == to {
            return;
        }
        if self.space.is_dollar() {
            let i = self.space.active[j];
            let (pv, qv) = self.dollar_votes(i);
            if to == 1 {
                st.tally.replace(pv, qv);
            } else {
                st.tally.replace(qv, pv);
            }
        } else {
            let v = &mut st.votes[j];
            let mut p = st.cpos[j];
            if to > from {
                for _ in from..to {
                    st.tally.swap(v[p - 1], self.c, p - 1);
                    v.swap(p - 1, p);
                    p -= 1;
                }
            } else {
                for _ in to..from {
                    st.tally.swap(self.c, v[p + 1], p);
                    v.swap(p, p + 1);
                    p += 1;
                }
            }
            st.cpos[j] = p;
        }
        st.digits[j] = to;
    }

    fn dollar_votes(&self, i: usize) -> (&LinearOrder, &LinearOrder) {
        match &self.inst.payload {
            Payload::IsSafeDollar(q) => (&self.inst.election.profile.votes[i], &q.votes[i]),
            _ => unreachable!("dollar space over a dollar payload"),
        }
    }

    /// Enumerates every digit vector extending `prefix`, in lexicographic order.
    fn scan<F: Fn(Candidate) -> bool>(&self, prefix: &[usize], bad: &F) -> Option<(Vec<usize>, Candidate)> {
        let k = self.space.active.len();
        let mut st = self.fresh();
        for (j, &d) in prefix.iter().enumerate() {
            self.set(&mut st, j, d);
        }
        let lo = prefix.len();
        loop {
            let x = st.tally.winner(&self.tb_rank);
            if bad(x) {
                return Some((st.digits.clone(), x));
            }
            let mut j = k;
            loop {
                if j == lo {
                    return None;
                }
                j -= 1;
                if st.digits[j] + 1 < self.space.radix[j] {
                    let d = st.digits[j] + 1;
                    self.set(&mut st, j, d);
                    break;
                }
                self.set(&mut st, j, 0);
            }
        }
    }

    pub(crate) fn first_bad<F: Fn(Candidate) -> bool + Sync>(&self, bad: &F) -> Option<(Vec<usize>, Candidate)> {
        let total = self.space.count();
        if total <= 4096 || !par::is_parallel() {
            return self.scan(&[], bad);
        }
        // split on a prefix long enough to give the pool work
        let mut len = 0;
        let mut chunks: u128 = 1;
        while len < self.space.radix.len() && chunks < 512 {
            chunks *= self.space.radix[len] as u128;
            len += 1;
        }
        let mut prefixes = Vec::with_capacity(chunks as usize);
        let mut d = vec![0usize; len];
        loop {
            prefixes.push(d.clone());
            let mut j = len;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                d[j] += 1;
                if d[j] < self.space.radix[j] {
                    break;
                }
                d[j] = 0;
            }
            if d.iter().all(|&x| x == 0) {
                break;
            }
        }
        par::find_map_first(&prefixes, |pre| self.scan(pre, bad))
    }
}
