//! Candidates, linear orders, profiles and winner determination.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElectionError {
    #[error("score vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("pairwise margin needs two distinct candidates")]
    InvalidPair,
    #[error("winner of an empty profile is undefined")]
    EmptyElection,
    #[error("not a permutation of the {0} candidates")]
    NotPermutation(usize),
}

/// Index of a candidate in its election's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate(pub u16);

impl Candidate {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A complete ranking, highest preferred first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrder(Vec<Candidate>);

impl LinearOrder {
    pub fn new(ranking: Vec<Candidate>, m: usize) -> Result<Self, ElectionError> {
        if ranking.len() != m {
            return Err(ElectionError::NotPermutation(m));
        }
        let mut seen = vec![false; m];
        for c in &ranking {
            if c.idx() >= m || seen[c.idx()] {
                return Err(ElectionError::NotPermutation(m));
            }
            seen[c.idx()] = true;
        }
        Ok(LinearOrder(ranking))
    }

    /// Builds from raw indices without validation; callers guarantee a permutation.
    pub fn from_indices(ix: &[usize]) -> Self {
        LinearOrder(ix.iter().map(|&i| Candidate(i as u16)).collect())
    }

    pub fn identity(m: usize) -> Self {
        LinearOrder((0..m).map(|i| Candidate(i as u16)).collect())
    }

    pub fn as_slice(&self) -> &[Candidate] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Candidate {
        self.0[0]
    }

    pub fn last(&self) -> Candidate {
        self.0[self.0.len() - 1]
    }

    pub fn at(&self, pos: usize) -> Candidate {
        self.0[pos]
    }

    /// 0-based position of `c`.
    pub fn position(&self, c: Candidate) -> usize {
        self.0.iter().position(|&x| x == c).expect("candidate in order")
    }

    /// rank[c] = 0-based position of c.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.0.len()];
        for (p, c) in self.0.iter().enumerate() {
            r[c.idx()] = p;
        }
        r
    }

    pub fn prefers(&self, a: Candidate, b: Candidate) -> bool {
        self.position(a) < self.position(b)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        LinearOrder(v)
    }

    /// Moves `c` left by `s` positions.
    pub fn shifted(&self, c: Candidate, s: usize) -> Self {
        let p = self.position(c);
        assert!(s <= p, "shift beyond top");
        let mut v = self.0.clone();
        v[p - s..=p].rotate_right(1);
        LinearOrder(v)
    }

    /// Moves `c` to 0-based position `to` (only leftwards).
    pub fn with_raised(&self, c: Candidate, to: usize) -> Self {
        let p = self.position(c);
        self.shifted(c, p.saturating_sub(to))
    }

    pub fn into_vec(self) -> Vec<Candidate> {
        self.0
    }
}

/// Ordered votes with distinct voter ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub num_candidates: usize,
    pub ids: Vec<String>,
    pub votes: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(num_candidates: usize) -> Self {
        Profile { num_candidates, ids: Vec::new(), votes: Vec::new() }
    }

    pub fn from_votes(num_candidates: usize, votes: Vec<LinearOrder>) -> Self {
        let ids = (1..=votes.len()).map(|i| format!("v{i}")).collect();
        Profile { num_candidates, ids, votes }
    }

    pub fn push(&mut self, id: impl Into<String>, vote: LinearOrder) {
        self.ids.push(id.into());
        self.votes.push(vote);
    }

    pub fn len(&self) -> usize {
        self.votes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.votes.is_empty()
    }

    pub fn voter_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VotingRule {
    Plurality,
    KApproval(usize),
    Veto,
    KVeto(usize),
    Borda,
    SimplifiedBucklin,
    /// Copeland with alpha = num/den.
    Copeland(i64, i64),
    Maximin,
}

impl VotingRule {
    pub fn copeland(alpha: Ratio<i64>) -> Self {
        VotingRule::Copeland(*alpha.numer(), *alpha.denom())
    }

    pub fn validate(&self, m: usize) -> Result<(), ElectionError> {
        match *self {
            VotingRule::KApproval(k) | VotingRule::KVeto(k) if k == 0 || k >= m.max(1) => {
                Err(ElectionError::InvalidRule(format!("k = {k} outside 1..={}", m.saturating_sub(1))))
            }
            VotingRule::Copeland(p, q) if q <= 0 || p < 0 || p > q => {
                Err(ElectionError::InvalidRule(format!("copeland alpha {p}/{q} outside [0,1]")))
            }
            _ => Ok(()),
        }
    }

    /// The positional vector, for scoring rules.
    pub fn score_vector(&self, m: usize) -> Option<Vec<i64>> {
        let v = match *self {
            VotingRule::Plurality => (0..m).map(|p| (p == 0) as i64).collect(),
            VotingRule::KApproval(k) => (0..m).map(|p| (p < k) as i64).collect(),
            VotingRule::Veto => (0..m).map(|p| -((p + 1 == m) as i64)).collect(),
            VotingRule::KVeto(k) => (0..m).map(|p| -((p + k >= m) as i64)).collect(),
            VotingRule::Borda => (0..m).map(|p| (m - 1 - p) as i64).collect(),
            _ => return None,
        };
        Some(v)
    }

    pub fn is_pairwise(&self) -> bool {
        matches!(self, VotingRule::Copeland(..) | VotingRule::Maximin)
    }
}

impl fmt::Display for VotingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VotingRule::Plurality => write!(f, "plurality"),
            VotingRule::KApproval(k) => write!(f, "approval:{k}"),
            VotingRule::Veto => write!(f, "veto"),
            VotingRule::KVeto(k) => write!(f, "veto:{k}"),
            VotingRule::Borda => write!(f, "borda"),
            VotingRule::SimplifiedBucklin => write!(f, "bucklin"),
            VotingRule::Copeland(0, _) => write!(f, "copeland"),
            VotingRule::Copeland(p, q) => write!(f, "copeland:{p}/{q}"),
            VotingRule::Maximin => write!(f, "maximin"),
        }
    }
}

impl FromStr for VotingRule {
    type Err = ElectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ElectionError::InvalidRule(s.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let num = |a: &str| a.parse::<usize>().map_err(|_| bad());
        Ok(match (head, arg) {
            ("plurality", None) => VotingRule::Plurality,
            ("approval", Some(a)) => match num(a)? {
                1 => VotingRule::Plurality,
                k => VotingRule::KApproval(k),
            },
            ("veto", None) => VotingRule::Veto,
            ("veto", Some(a)) => VotingRule::KVeto(num(a)?),
            ("borda", None) => VotingRule::Borda,
            ("bucklin", None) => VotingRule::SimplifiedBucklin,
            ("copeland", None) => VotingRule::Copeland(0, 1),
            ("copeland", Some(a)) => {
                let (p, q) = a.split_once('/').unwrap_or((a, "1"));
                let p: i64 = p.parse().map_err(|_| bad())?;
                let q: i64 = q.parse().map_err(|_| bad())?;
                if q <= 0 {
                    return Err(bad());
                }
                let r = Ratio::new(p, q);
                VotingRule::copeland(r)
            }
            ("maximin", None) => VotingRule::Maximin,
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    pub entries: Vec<Ratio<i64>>,
}

impl ScoreTable {
    pub fn get(&self, c: Candidate) -> Ratio<i64> {
        self.entries[c.idx()]
    }
}

pub fn positional_scores(profile: &Profile, vector: &[i64]) -> Result<ScoreTable, ElectionError> {
    let m = profile.num_candidates;
    if vector.len() != m {
        return Err(ElectionError::Dimension { expected: m, got: vector.len() });
    }
    if vector.windows(2).any(|w| w[0] < w[1]) || (m > 0 && vector[0] <= vector[m - 1]) {
        return Err(ElectionError::InvalidRule("score vector must be non-increasing and non-constant".into()));
    }
    let raw = positional_keys(profile, vector);
    Ok(ScoreTable { entries: raw.into_iter().map(Ratio::from_integer).collect() })
}

fn positional_keys(profile: &Profile, vector: &[i64]) -> Vec<i64> {
    let mut s = vec![0i64; profile.num_candidates];
    for v in &profile.votes {
        for (p, c) in v.as_slice().iter().enumerate() {
            s[c.idx()] += vector[p];
        }
    }
    s
}

/// m×m matrix of vs(a,b), row-major.
pub fn pairwise_matrix(profile: &Profile) -> Vec<i64> {
    let m = profile.num_candidates;
    let mut vs = vec![0i64; m * m];
    for v in &profile.votes {
        for (p, c) in v.as_slice().iter().enumerate() {
            for d in &v.as_slice()[p + 1..] {
                vs[c.idx() * m + d.idx()] += 1;
                vs[d.idx() * m + c.idx()] -= 1;
            }
        }
    }
    vs
}

pub fn pairwise_margin(profile: &Profile, a: Candidate, b: Candidate) -> Result<i64, ElectionError> {
    if a == b {
        return Err(ElectionError::InvalidPair);
    }
    let mut d = 0;
    for v in &profile.votes {
        let r = v.as_slice();
        let pa = r.iter().position(|&x| x == a).expect("complete vote");
        let pb = r.iter().position(|&x| x == b).expect("complete vote");
        d += if pa < pb { 1 } else { -1 };
    }
    Ok(d)
}

/// Copeland key scaled by the alpha denominator: q*wins + p*ties.
pub fn copeland_keys(vs: &[i64], m: usize, p: i64, q: i64) -> Vec<i64> {
    (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a)
                .map(|b| match vs[a * m + b] {
                    x if x > 0 => q,
                    0 => p,
                    _ => 0,
                })
                .sum()
        })
        .collect()
}

pub fn maximin_keys(vs: &[i64], m: usize) -> Vec<i64> {
    (0..m)
        .map(|a| (0..m).filter(|&b| b != a).map(|b| vs[a * m + b]).min().unwrap_or(0))
        .collect()
}

/// Smallest round k (1-based) at which a strict majority ranks each candidate in the top k.
pub fn bucklin_rounds(profile: &Profile) -> Vec<Option<usize>> {
    let m = profile.num_candidates;
    let n = profile.len();
    let mut at = vec![0usize; m * m];
    for v in &profile.votes {
        for (p, c) in v.as_slice().iter().enumerate() {
            at[c.idx() * m + p] += 1;
        }
    }
    (0..m)
        .map(|a| {
            let mut acc = 0;
            for p in 0..m {
                acc += at[a * m + p];
                if 2 * acc > n {
                    return Some(p + 1);
                }
            }
            None
        })
        .collect()
}

pub fn bucklin_round(profile: &Profile, a: Candidate) -> Option<usize> {
    bucklin_rounds(profile)[a.idx()]
}

/// Integer "larger is better" keys, comparable within one rule and profile.
pub fn score_keys(profile: &Profile, rule: &VotingRule) -> Vec<i64> {
    let m = profile.num_candidates;
    if let Some(vec) = rule.score_vector(m) {
        return positional_keys(profile, &vec);
    }
    match *rule {
        VotingRule::SimplifiedBucklin => bucklin_rounds(profile)
            .into_iter()
            .map(|r| r.map_or(0, |k| -(k as i64)))
            .collect(),
        VotingRule::Copeland(p, q) => copeland_keys(&pairwise_matrix(profile), m, p, q),
        VotingRule::Maximin => maximin_keys(&pairwise_matrix(profile), m),
        _ => unreachable!("positional rules handled above"),
    }
}

pub fn rule_scores(profile: &Profile, rule: &VotingRule) -> Result<ScoreTable, ElectionError> {
    rule.validate(profile.num_candidates)?;
    let keys = score_keys(profile, rule);
    let entries = match *rule {
        VotingRule::Copeland(_, q) => keys.into_iter().map(|k| Ratio::new(k, q)).collect(),
        _ => keys.into_iter().map(Ratio::from_integer).collect(),
    };
    Ok(ScoreTable { entries })
}

/// Maximum key, ties to the smallest tie-break rank.
#[inline]
pub fn best_by_keys(keys: &[i64], tb_rank: &[usize]) -> Candidate {
    let mut best = 0;
    for a in 1..keys.len() {
        if keys[a] > keys[best] || (keys[a] == keys[best] && tb_rank[a] < tb_rank[best]) {
            best = a;
        }
    }
    Candidate(best as u16)
}

pub fn winner(profile: &Profile, rule: &VotingRule, tiebreak: &LinearOrder) -> Result<Candidate, ElectionError> {
    if profile.is_empty() {
        return Err(ElectionError::EmptyElection);
    }
    rule.validate(profile.num_candidates)?;
    Ok(best_by_keys(&score_keys(profile, rule), &tiebreak.ranks()))
}

pub fn condorcet_winner(profile: &Profile) -> Option<Candidate> {
    let m = profile.num_candidates;
    let vs = pairwise_matrix(profile);
    (0..m)
        .find(|&a| (0..m).all(|b| b == a || vs[a * m + b] > 0))
        .map(|a| Candidate(a as u16))
}

/// Candidate names plus the profile and tie-break order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    pub names: Vec<String>,
    pub profile: Profile,
    pub tiebreak: LinearOrder,
}

impl Election {
    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn n(&self) -> usize {
        self.profile.len()
    }

    pub fn name(&self, c: Candidate) -> &str {
        &self.names[c.idx()]
    }

    pub fn candidate(&self, name: &str) -> Option<Candidate> {
        self.names.iter().position(|x| x == name).map(|i| Candidate(i as u16))
    }

    pub fn winner(&self, rule: &VotingRule) -> Result<Candidate, ElectionError> {
        winner(&self.profile, rule, &self.tiebreak)
    }

    pub fn render(&self, order: &LinearOrder) -> String {
        order.as_slice().iter().map(|&c| self.name(c)).collect::<Vec<_>>().join(" > ")
    }
}
