//! Incrementally maintained rule scores, so that enumerations touch O(1) state per step.

use crate::election::{best_by_keys, copeland_keys, maximin_keys, Candidate, LinearOrder, Profile, VotingRule};

#[derive(Debug, Clone)]
pub enum Tally {
    Positional { vector: Vec<i64>, score: Vec<i64> },
    Copeland { m: usize, p: i64, q: i64, vs: Vec<i64>, key: Vec<i64> },
    Maximin { m: usize, vs: Vec<i64> },
    /// cum[a*m + k] = number of votes ranking a within the top k+1.
    Bucklin { m: usize, n: usize, cum: Vec<i64> },
}

impl Tally {
    pub fn new(profile: &Profile, rule: &VotingRule) -> Self {
        let m = profile.num_candidates;
        let mut t = match *rule {
            VotingRule::Copeland(p, q) => Tally::Copeland { m, p, q, vs: vec![0; m * m], key: vec![0; m] },
            VotingRule::Maximin => Tally::Maximin { m, vs: vec![0; m * m] },
            VotingRule::SimplifiedBucklin => Tally::Bucklin { m, n: 0, cum: vec![0; m * m] },
            _ => Tally::Positional { vector: rule.score_vector(m).expect("positional rule"), score: vec![0; m] },
        };
        for v in &profile.votes {
            t.add(v.as_slice(), 1);
        }
        t.refresh();
        t
    }

    fn refresh(&mut self) {
        if let Tally::Copeland { m, p, q, vs, key } = self {
            *key = copeland_keys(vs, *m, *p, *q);
        }
    }

    fn add(&mut self, vote: &[Candidate], sign: i64) {
        match self {
            Tally::Positional { vector, score } => {
                for (pos, c) in vote.iter().enumerate() {
                    score[c.idx()] += sign * vector[pos];
                }
            }
            Tally::Copeland { m, vs, .. } | Tally::Maximin { m, vs } => {
                for (i, a) in vote.iter().enumerate() {
                    for b in &vote[i + 1..] {
                        vs[a.idx() * *m + b.idx()] += sign;
                        vs[b.idx() * *m + a.idx()] -= sign;
                    }
                }
            }
            Tally::Bucklin { m, n, cum } => {
                *n = (*n as i64 + sign) as usize;
                for (pos, c) in vote.iter().enumerate() {
                    for k in pos..*m {
                        cum[c.idx() * *m + k] += sign;
                    }
                }
            }
        }
    }

    /// Replaces one vote by another.
    pub fn replace(&mut self, old: &LinearOrder, new: &LinearOrder) {
        self.add(old.as_slice(), -1);
        self.add(new.as_slice(), 1);
        self.refresh();
    }

    /// Swaps the adjacent pair at positions (pos, pos+1): `upper` moves down, `lower` moves up.
    pub fn swap(&mut self, upper: Candidate, lower: Candidate, pos: usize) {
        let (u, l) = (upper.idx(), lower.idx());
        match self {
            Tally::Positional { vector, score } => {
                let d = vector[pos] - vector[pos + 1];
                score[u] -= d;
                score[l] += d;
            }
            Tally::Copeland { m, p, q, vs, key } => {
                let contrib = |x: i64| match x {
                    x if x > 0 => *q,
                    0 => *p,
                    _ => 0,
                };
                let old = vs[l * *m + u];
                let new = old + 2;
                vs[l * *m + u] = new;
                vs[u * *m + l] = -new;
                key[l] += contrib(new) - contrib(old);
                key[u] += contrib(-new) - contrib(-old);
            }
            Tally::Maximin { m, vs } => {
                vs[l * *m + u] += 2;
                vs[u * *m + l] -= 2;
            }
            Tally::Bucklin { m, cum, .. } => {
                cum[l * *m + pos] += 1;
                cum[u * *m + pos] -= 1;
            }
        }
    }

    pub fn winner(&self, tb_rank: &[usize]) -> Candidate {
        match self {
            Tally::Positional { score, .. } => best_by_keys(score, tb_rank),
            Tally::Copeland { key, .. } => best_by_keys(key, tb_rank),
            Tally::Maximin { m, vs } => best_by_keys(&maximin_keys(vs, *m), tb_rank),
            Tally::Bucklin { m, n, cum } => {
                for k in 0..*m {
                    let mut best: Option<usize> = None;
                    for a in 0..*m {
                        if 2 * cum[a * *m + k] > *n as i64 && best.is_none_or(|b| tb_rank[a] < tb_rank[b]) {
                            best = Some(a);
                        }
                    }
                    if let Some(b) = best {
                        return Candidate(b as u16);
                    }
                }
                // n = 0: every candidate ties
                best_by_keys(&vec![0; *m], tb_rank)
            }
        }
    }
}
