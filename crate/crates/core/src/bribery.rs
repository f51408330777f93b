//! Briber preferences, good/bad partitions, shift application and cost accounting.

use thiserror::Error;

use crate::election::{winner, Candidate, Election, ElectionError, LinearOrder, Profile, VotingRule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BriberyError {
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error("operation needs a {expected} payload")]
    WrongVariant { expected: &'static str },
    #[error("unknown voter {0}")]
    UnknownVoter(String),
    #[error("voter {voter}: shift {shift} exceeds the {max} available positions")]
    ShiftOutOfRange { voter: String, shift: usize, max: usize },
    #[error("profiles disagree on voter ids")]
    VoterMismatch,
    #[error("voter {0}: price table must start at 0")]
    NonZeroBase(String),
    #[error("voter {0}: price table must be non-decreasing")]
    NonMonotone(String),
    #[error("voter {voter}: price table has {got} entries, expected {expected}")]
    TableLength { voter: String, got: usize, expected: usize },
    #[error("voter {0} has no price")]
    MissingPrice(String),
    #[error("the preferred candidate must head the briber's order")]
    PreferredNotFirst,
}

/// The briber's ranking; its first candidate is the preferred candidate c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BriberPreference {
    pub order: LinearOrder,
}

impl BriberPreference {
    pub fn preferred(&self) -> Candidate {
        self.order.top()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodBadPartition {
    pub winner: Candidate,
    pub good: Vec<bool>,
}

impl GoodBadPartition {
    pub fn is_bad(&self, a: Candidate) -> bool {
        !self.good[a.idx()]
    }

    pub fn bad(&self) -> Vec<Candidate> {
        (0..self.good.len()).filter(|&i| !self.good[i]).map(|i| Candidate(i as u16)).collect()
    }

    pub fn goods(&self) -> Vec<Candidate> {
        (0..self.good.len()).filter(|&i| self.good[i]).map(|i| Candidate(i as u16)).collect()
    }
}

pub fn good_bad_partition(
    profile: &Profile,
    rule: &VotingRule,
    tiebreak: &LinearOrder,
    briber: &BriberPreference,
) -> Result<GoodBadPartition, BriberyError> {
    let w = winner(profile, rule, tiebreak)?;
    Ok(partition_around(w, briber))
}

pub fn partition_around(w: Candidate, briber: &BriberPreference) -> GoodBadPartition {
    let rank = briber.order.ranks();
    let good = (0..rank.len()).map(|a| rank[a] <= rank[w.idx()]).collect();
    GoodBadPartition { winner: w, good }
}

/// Per-voter left shifts of the preferred candidate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftVector(pub Vec<usize>);

impl ShiftVector {
    pub fn zeros(n: usize) -> Self {
        ShiftVector(vec![0; n])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn le(&self, other: &ShiftVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DollarCostModel {
    pub prices: Vec<u64>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCostModel {
    /// tables[i][s] = price of shifting c by s positions in vote i.
    pub tables: Vec<Vec<u64>>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    IsSafeDollar(Profile),
    IsSafeShift(ShiftVector),
    SafeDollar(DollarCostModel),
    SafeShift(ShiftCostModel),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::IsSafeDollar(_) => "is-safe-dollar",
            Payload::IsSafeShift(_) => "is-safe-shift",
            Payload::SafeDollar(_) => "safe-dollar",
            Payload::SafeShift(_) => "safe-shift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BriberyInstance {
    pub election: Election,
    pub rule: VotingRule,
    pub briber: BriberPreference,
    pub payload: Payload,
}

impl BriberyInstance {
    pub fn preferred(&self) -> Candidate {
        self.briber.preferred()
    }

    pub fn profile(&self) -> &Profile {
        &self.election.profile
    }

    pub fn partition(&self) -> Result<GoodBadPartition, BriberyError> {
        good_bad_partition(&self.election.profile, &self.rule, &self.election.tiebreak, &self.briber)
    }

    /// Profile under full compliance, for Is-Safe payloads.
    pub fn full_compliance(&self) -> Result<Profile, BriberyError> {
        match &self.payload {
            Payload::IsSafeDollar(q) => Ok(q.clone()),
            Payload::IsSafeShift(s) => apply_shift(&self.election.profile, self.preferred(), s),
            _ => Err(BriberyError::WrongVariant { expected: "Is-Safe" }),
        }
    }

    /// Checks every model invariant; `monotone` additionally demands non-decreasing shift tables.
    pub fn validate(&self, monotone: bool) -> Result<(), BriberyError> {
        let m = self.election.m();
        let p = &self.election.profile;
        self.rule.validate(m)?;
        LinearOrder::new(self.election.tiebreak.as_slice().to_vec(), m)?;
        LinearOrder::new(self.briber.order.as_slice().to_vec(), m)?;
        for v in &p.votes {
            LinearOrder::new(v.as_slice().to_vec(), m)?;
        }
        let c = self.preferred();
        match &self.payload {
            Payload::IsSafeDollar(q) => {
                if q.ids != p.ids {
                    return Err(BriberyError::VoterMismatch);
                }
                for v in &q.votes {
                    LinearOrder::new(v.as_slice().to_vec(), m)?;
                }
            }
            Payload::IsSafeShift(s) => check_shift(p, c, s)?,
            Payload::SafeDollar(d) => {
                if d.prices.len() != p.len() {
                    return Err(BriberyError::MissingPrice(p.ids.get(d.prices.len()).cloned().unwrap_or_default()));
                }
            }
            Payload::SafeShift(sc) => {
                if sc.tables.len() != p.len() {
                    return Err(BriberyError::MissingPrice(p.ids.get(sc.tables.len()).cloned().unwrap_or_default()));
                }
                for (id, t) in p.ids.iter().zip(&sc.tables) {
                    check_table(id, t, m, monotone)?;
                }
            }
        }
        Ok(())
    }
}

pub fn check_table(id: &str, t: &[u64], m: usize, monotone: bool) -> Result<(), BriberyError> {
    if t.len() != m {
        return Err(BriberyError::TableLength { voter: id.to_string(), got: t.len(), expected: m });
    }
    if t[0] != 0 {
        return Err(BriberyError::NonZeroBase(id.to_string()));
    }
    if monotone && t.windows(2).any(|w| w[0] > w[1]) {
        return Err(BriberyError::NonMonotone(id.to_string()));
    }
    Ok(())
}

fn check_shift(p: &Profile, c: Candidate, s: &ShiftVector) -> Result<(), BriberyError> {
    if s.0.len() != p.len() {
        return Err(BriberyError::VoterMismatch);
    }
    for ((id, v), &k) in p.ids.iter().zip(&p.votes).zip(&s.0) {
        let max = v.position(c);
        if k > max {
            return Err(BriberyError::ShiftOutOfRange { voter: id.clone(), shift: k, max });
        }
    }
    Ok(())
}

pub fn bribed_voters(p: &Profile, q: &Profile) -> Result<Vec<usize>, BriberyError> {
    if p.ids != q.ids {
        return Err(BriberyError::VoterMismatch);
    }
    Ok((0..p.len()).filter(|&i| p.votes[i] != q.votes[i]).collect())
}

pub fn apply_shift(p: &Profile, c: Candidate, s: &ShiftVector) -> Result<Profile, BriberyError> {
    check_shift(p, c, s)?;
    let votes = p.votes.iter().zip(&s.0).map(|(v, &k)| if k == 0 { v.clone() } else { v.shifted(c, k) }).collect();
    Ok(Profile { num_candidates: p.num_candidates, ids: p.ids.clone(), votes })
}

pub fn dollar_cost(model: &DollarCostModel, bribed: &[usize]) -> Result<u64, BriberyError> {
    bribed
        .iter()
        .map(|&i| model.prices.get(i).copied().ok_or_else(|| BriberyError::UnknownVoter(format!("#{i}"))))
        .sum()
}

pub fn shift_cost(model: &ShiftCostModel, s: &ShiftVector) -> Result<u64, BriberyError> {
    if s.0.len() != model.tables.len() {
        return Err(BriberyError::VoterMismatch);
    }
    s.0.iter()
        .zip(&model.tables)
        .enumerate()
        .map(|(i, (&k, t))| {
            t.get(k).copied().ok_or(BriberyError::ShiftOutOfRange { voter: format!("#{i}"), shift: k, max: t.len() - 1 })
        })
        .sum()
}

/// A partial-compliance pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    /// Indices of bribed voters who vote as bribed; the rest revert.
    Comply(Vec<usize>),
    Shift(ShiftVector),
}

/// Mixed-radix counter over the active voters, first voter most significant.
#[derive(Debug, Clone)]
pub struct NoncomplianceSpace {
    pub active: Vec<usize>,
    pub radix: Vec<usize>,
    n: usize,
    dollar: bool,
}

impl NoncomplianceSpace {
    pub fn of(inst: &BriberyInstance) -> Result<Self, BriberyError> {
        let p = &inst.election.profile;
        match &inst.payload {
            Payload::IsSafeDollar(q) => {
                let active = bribed_voters(p, q)?;
                let radix = vec![2; active.len()];
                Ok(NoncomplianceSpace { active, radix, n: p.len(), dollar: true })
            }
            Payload::IsSafeShift(s) => {
                check_shift(p, inst.preferred(), s)?;
                let active: Vec<usize> = (0..s.0.len()).filter(|&i| s.0[i] > 0).collect();
                let radix = active.iter().map(|&i| s.0[i] + 1).collect();
                Ok(NoncomplianceSpace { active, radix, n: p.len(), dollar: false })
            }
            _ => Err(BriberyError::WrongVariant { expected: "Is-Safe" }),
        }
    }

    /// Number of outcomes, saturating.
    pub fn count(&self) -> u128 {
        self.radix.iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }

    pub fn pattern(&self, digits: &[usize]) -> Pattern {
        if self.dollar {
            Pattern::Comply(self.active.iter().zip(digits).filter(|(_, &d)| d == 1).map(|(&i, _)| i).collect())
        } else {
            let mut s = vec![0; self.n];
            for (&i, &d) in self.active.iter().zip(digits) {
                s[i] = d;
            }
            Pattern::Shift(ShiftVector(s))
        }
    }

    pub fn is_dollar(&self) -> bool {
        self.dollar
    }
}

/// Profile realised by a pattern.
pub fn realise(inst: &BriberyInstance, pattern: &Pattern) -> Result<Profile, BriberyError> {
    let p = &inst.election.profile;
    match (pattern, &inst.payload) {
        (Pattern::Comply(set), Payload::IsSafeDollar(q)) => {
            let mut r = p.clone();
            for &i in set {
                r.votes[i] = q.votes[i].clone();
            }
            Ok(r)
        }
        (Pattern::Shift(s), _) => apply_shift(p, inst.preferred(), s),
        _ => Err(BriberyError::WrongVariant { expected: "matching Is-Safe" }),
    }
}

/// Every partial-compliance outcome in lexicographic digit order; the first is P itself.
pub fn enumerate_noncompliance(
    inst: &BriberyInstance,
) -> Result<impl Iterator<Item = (Pattern, Profile)> + '_, BriberyError> {
    let space = NoncomplianceSpace::of(inst)?;
    let k = space.active.len();
    let mut digits = vec![0usize; k];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let pat = space.pattern(&digits);
        let prof = realise(inst, &pat).expect("pattern within payload");
        // odometer step, last digit fastest
        let mut j = k;
        loop {
            if j == 0 {
                done = true;
                break;
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < space.radix[j] {
                break;
            }
            digits[j] = 0;
        }
        Some((pat, prof))
    }))
}
