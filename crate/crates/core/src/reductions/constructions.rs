//! Exact-cover instances compiled into Is-Safe instances whose answer is NO exactly when an
//! exact cover exists. The voter bribed on behalf of set i has id `s{i}` (1-based), padding
//! voters `pad{k}`, the remaining fixed voters `v{k}`.

use std::fmt;

use crate::bribery::{BriberPreference, BriberyInstance, Payload, ShiftVector};
use crate::election::{pairwise_matrix, score_keys, winner, Candidate, Election, LinearOrder, Profile, VotingRule};

use super::padding::{margin_padding, score_gap_padding, PaddingRule};
use super::x3c::X3CInstance;
use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    KApprovalDollar(usize),
    /// Takes the 4-set variant.
    BordaDollar,
    BordaShift,
    BucklinDollar,
    /// Any Condorcet-consistent rule; Copeland or maximin here.
    CondorcetDollar(VotingRule),
    CopelandShift,
    MaximinShift,
}

impl ConstructionKind {
    pub const NAMES: [&'static str; 7] = [
        "kapproval-dollar",
        "borda-dollar",
        "borda-shift",
        "bucklin-dollar",
        "condorcet-dollar",
        "copeland-shift",
        "maximin-shift",
    ];

    /// `k` is used by kapproval-dollar (default 3), `rule` by condorcet-dollar (default copeland).
    pub fn parse(name: &str, k: Option<usize>, rule: Option<VotingRule>) -> Result<Self, ReductionError> {
        Ok(match name {
            "kapproval-dollar" => ConstructionKind::KApprovalDollar(k.unwrap_or(3)),
            "borda-dollar" => ConstructionKind::BordaDollar,
            "borda-shift" => ConstructionKind::BordaShift,
            "bucklin-dollar" => ConstructionKind::BucklinDollar,
            "condorcet-dollar" => ConstructionKind::CondorcetDollar(rule.unwrap_or(VotingRule::Copeland(0, 1))),
            "copeland-shift" => ConstructionKind::CopelandShift,
            "maximin-shift" => ConstructionKind::MaximinShift,
            other => {
                return Err(ReductionError::Precondition(format!(
                    "unknown construction {other}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn rule(&self) -> VotingRule {
        match *self {
            ConstructionKind::KApprovalDollar(k) => VotingRule::KApproval(k),
            ConstructionKind::BordaDollar | ConstructionKind::BordaShift => VotingRule::Borda,
            ConstructionKind::BucklinDollar => VotingRule::SimplifiedBucklin,
            ConstructionKind::CondorcetDollar(r) => r,
            ConstructionKind::CopelandShift => VotingRule::Copeland(0, 1),
            ConstructionKind::MaximinShift => VotingRule::Maximin,
        }
    }

    pub fn arity(&self) -> usize {
        if *self == ConstructionKind::BordaDollar {
            4
        } else {
            3
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionKind::KApprovalDollar(k) => write!(f, "kapproval-dollar:{k}"),
            ConstructionKind::BordaDollar => write!(f, "borda-dollar"),
            ConstructionKind::BordaShift => write!(f, "borda-shift"),
            ConstructionKind::BucklinDollar => write!(f, "bucklin-dollar"),
            ConstructionKind::CondorcetDollar(r) => write!(f, "condorcet-dollar:{r}"),
            ConstructionKind::CopelandShift => write!(f, "copeland-shift"),
            ConstructionKind::MaximinShift => write!(f, "maximin-shift"),
        }
    }
}

/// A generated instance plus what produced it.
#[derive(Debug, Clone)]
pub struct HardInstance {
    pub instance: BriberyInstance,
    /// Indices of the padding voters.
    pub padding: Vec<usize>,
    pub metadata: Vec<(String, String)>,
}

/// Candidate registry and vote list under construction.
struct Builder {
    names: Vec<String>,
    ids: Vec<String>,
    votes: Vec<LinearOrder>,
    padding: Vec<usize>,
    bribed: Vec<usize>,
}

impl Builder {
    fn new() -> Self {
        Builder { names: Vec::new(), ids: Vec::new(), votes: Vec::new(), padding: Vec::new(), bribed: Vec::new() }
    }

    fn add(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn family(&mut self, prefix: &str, i: usize, len: usize) -> Vec<usize> {
        (1..=len).map(|j| self.add(format!("{prefix}[{i}][{j}]"))).collect()
    }

    fn m(&self) -> usize {
        self.names.len()
    }

    /// `prefix` followed by every other candidate in index order.
    fn complete(&self, prefix: &[usize]) -> LinearOrder {
        let mut v = prefix.to_vec();
        v.extend((0..self.m()).filter(|a| !prefix.contains(a)));
        LinearOrder::from_indices(&v)
    }

    fn fixed(&mut self, v: LinearOrder) {
        self.ids.push(format!("v{}", self.ids.len() + 1));
        self.votes.push(v);
    }

    fn bribe(&mut self, set: usize, v: LinearOrder) {
        self.ids.push(format!("s{}", set + 1));
        self.bribed.push(self.votes.len());
        self.votes.push(v);
    }

    fn pad(&mut self, votes: Vec<LinearOrder>) {
        for v in votes {
            self.padding.push(self.votes.len());
            self.ids.push(format!("pad{}", self.padding.len()));
            self.votes.push(v);
        }
    }

    fn profile(&self) -> Profile {
        Profile { num_candidates: self.m(), ids: self.ids.clone(), votes: self.votes.clone() }
    }
}

fn pre(ok: bool, what: &str) -> Result<(), ReductionError> {
    if ok {
        Ok(())
    } else {
        Err(ReductionError::Precondition(what.to_string()))
    }
}

fn order(ix: &[usize]) -> LinearOrder {
    LinearOrder::from_indices(ix)
}

fn rev(v: &[usize]) -> Vec<usize> {
    v.iter().rev().copied().collect()
}

fn cat(parts: &[&[usize]]) -> Vec<usize> {
    parts.concat()
}

/// How the bribed voters change their votes.
enum Bribe {
    Dollar(Vec<LinearOrder>),
    Shift(usize),
}

pub fn generate_hardness_instance(kind: ConstructionKind, x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    pre(
        x3c.arity == kind.arity(),
        &format!("{kind} takes sets of size {}, given size {}", kind.arity(), x3c.arity),
    )?;
    match kind {
        ConstructionKind::KApprovalDollar(k) => kapproval_dollar(k, x3c),
        ConstructionKind::BordaDollar => borda_dollar(x3c),
        ConstructionKind::BordaShift => borda_shift(x3c),
        ConstructionKind::BucklinDollar => bucklin_dollar(x3c),
        ConstructionKind::CondorcetDollar(rule) => condorcet_dollar(rule, x3c),
        ConstructionKind::CopelandShift => copeland_shift(x3c),
        ConstructionKind::MaximinShift => maximin_shift(x3c),
    }
}

/// Assembles the instance and checks that w wins P and c wins full compliance.
#[allow(clippy::too_many_arguments)]
fn finish(
    kind: ConstructionKind,
    x3c: &X3CInstance,
    b: Builder,
    tiebreak: &[usize],
    briber: &[usize],
    w: usize,
    bribe: Bribe,
    mut metadata: Vec<(String, String)>,
) -> Result<HardInstance, ReductionError> {
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = b.names.iter().find(|n| !seen.insert(n.as_str())) {
        return Err(ReductionError::Precondition(format!("element name {dup} clashes with a construction candidate")));
    }
    let rule = kind.rule();
    let p = b.profile();
    let payload = match bribe {
        Bribe::Dollar(qs) => {
            let mut q = p.clone();
            for (&i, v) in b.bribed.iter().zip(qs) {
                q.votes[i] = v;
            }
            Payload::IsSafeDollar(q)
        }
        Bribe::Shift(s) => {
            let mut sv = vec![0; p.len()];
            for &i in &b.bribed {
                sv[i] = s;
            }
            Payload::IsSafeShift(ShiftVector(sv))
        }
    };
    let instance = BriberyInstance {
        election: Election { names: b.names.clone(), profile: p, tiebreak: order(tiebreak) },
        rule,
        briber: BriberPreference { order: order(briber) },
        payload,
    };
    let tb = &instance.election.tiebreak;
    let wp = winner(&instance.election.profile, &rule, tb).map_err(|e| ReductionError::Precondition(e.to_string()))?;
    pre(wp == Candidate(w as u16), &format!("{kind}: original profile elects {} instead of w", b.names[wp.idx()]))?;
    let q = instance.full_compliance().map_err(|e| ReductionError::Precondition(e.to_string()))?;
    let wq = winner(&q, &rule, tb).map_err(|e| ReductionError::Precondition(e.to_string()))?;
    pre(
        wq == instance.preferred(),
        &format!("{kind}: full compliance elects {} instead of c", b.names[wq.idx()]),
    )?;
    let mut meta = vec![
        ("construction".to_string(), kind.to_string()),
        ("t".to_string(), x3c.t().to_string()),
        ("sets".to_string(), x3c.m().to_string()),
        ("padding-voters".to_string(), b.padding.len().to_string()),
    ];
    meta.append(&mut metadata);
    Ok(HardInstance { instance, padding: b.padding, metadata: meta })
}

fn kapproval_dollar(k: usize, x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let (t, m) = (x3c.t(), x3c.m());
    pre(k >= 3, "kapproval-dollar needs k >= 3")?;
    pre(t >= 1, "kapproval-dollar needs a nonempty universe")?;
    pre(m > t, "kapproval-dollar needs more sets than t")?;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let x = b.add("x".into());
    let w = b.add("w".into());
    let d1: Vec<Vec<usize>> = (0..m).map(|i| b.family("d1", i + 1, k - 3)).collect();
    let d2: Vec<Vec<usize>> = (0..m).map(|i| b.family("d2", i + 1, k - 1)).collect();
    let dummies: Vec<usize> = d1.iter().chain(&d2).flatten().copied().collect();
    let mut deg = vec![0usize; u.len()];
    for s in &x3c.sets {
        for &e in s {
            deg[e] += 1;
        }
    }
    let top = *deg.iter().max().unwrap();
    pre(top >= 2, "kapproval-dollar needs an element in two sets")?;
    let c = u[deg.iter().position(|&d| d == top).unwrap()];
    let others: Vec<usize> = u.iter().copied().filter(|&a| a != c).collect();
    let mut qs = Vec::new();
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&e| u[e]).collect();
        b.bribe(i, b.complete(&cat(&[&[w], &d2[i]])));
        qs.push(b.complete(&cat(&[&set, &d1[i]])));
    }
    let mm = b.m();
    let mut gaps = vec![None; mm];
    for &a in &u {
        gaps[a] = Some(0);
    }
    gaps[x] = Some(2);
    gaps[w] = Some(2 - (m as i64 - t as i64 + 1));
    let pad = score_gap_padding(mm, PaddingRule::KApproval(k), &vec![0; mm], &gaps)?;
    b.pad(pad);
    let tb = cat(&[&[w, c], &others, &[x], &dummies]);
    let briber = cat(&[&[c], &others, &dummies, &[w, x]]);
    finish(ConstructionKind::KApprovalDollar(k), x3c, b, &tb, &briber, w, Bribe::Dollar(qs), Vec::new())
}

fn borda_dollar(x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let m = x3c.m();
    pre(m >= 3, "borda-dollar needs at least 3 sets")?;
    // |C| = βm² + γ with β = 5/3, γ = 15
    let size = (5 * m * m).div_ceil(3) + 15;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let w = b.add("w".into());
    let x = b.add("x".into());
    let nd = size - u.len() - 2;
    let d: Vec<usize> = (1..=nd).map(|j| b.add(format!("d[{j}]"))).collect();
    let c = u[0];
    let others: Vec<usize> = u[1..].to_vec();
    let mut qs = Vec::new();
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&e| u[e]).collect();
        let rest: Vec<usize> = u.iter().copied().filter(|a| !set.contains(a)).collect();
        b.bribe(i, order(&cat(&[&[w], &d, &rest, &set, &[x]])));
        qs.push(order(&cat(&[&set, &d, &rest, &[w, x]])));
    }
    let current = score_keys(&b.profile(), &VotingRule::Borda);
    let big = size as i64 - 2;
    let xu = big - m as i64 + 1;
    let mut gaps = vec![None; size];
    for &a in &u {
        gaps[a] = Some(0);
    }
    gaps[x] = Some(xu);
    gaps[w] = Some(xu + (m as i64 / 3) * big - 1);
    b.pad(score_gap_padding(size, PaddingRule::Borda, &current, &gaps)?);
    let tb = cat(&[&[w, c], &others, &[x], &d]);
    let briber = cat(&[&[c], &others, &d, &[w, x]]);
    let meta = vec![("beta".to_string(), "5/3".to_string()), ("gamma".to_string(), "15".to_string())];
    finish(ConstructionKind::BordaDollar, x3c, b, &tb, &briber, w, Bribe::Dollar(qs), meta)
}

fn borda_shift(x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let (t, m) = (x3c.t(), x3c.m());
    pre(t >= 1, "borda-shift needs a nonempty universe")?;
    pre(m > t, "borda-shift needs more sets than t")?;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let d1: Vec<usize> = (1..t).map(|j| b.add(format!("d[1][{j}]"))).collect();
    let x = b.add("x".into());
    let c = b.add("c".into());
    let w = b.add("w".into());
    let d = b.add("d".into());
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&e| u[e]).collect();
        let rest: Vec<usize> = u.iter().copied().filter(|a| !set.contains(a)).collect();
        b.bribe(i, order(&cat(&[&[w], &set, &[c], &rest, &[x], &d1, &[d]])));
        b.fixed(order(&cat(&[&[x], &rev(&rest), &[c], &rev(&set), &[w], &rev(&d1), &[d]])));
    }
    let mm = b.m();
    let current = score_keys(&b.profile(), &VotingRule::Borda);
    let ti = t as i64;
    let mut gaps = vec![None; mm];
    for &a in &u {
        gaps[a] = Some(4 * ti + 1);
    }
    gaps[x] = Some(4 * ti + 1);
    gaps[w] = Some(5 * ti);
    gaps[c] = Some(0);
    b.pad(score_gap_padding(mm, PaddingRule::Borda, &current, &gaps)?);
    let tb = cat(&[&[c, w], &u, &d1, &[d, x]]);
    let briber = cat(&[&[c], &u, &d1, &[d, w, x]]);
    finish(ConstructionKind::BordaShift, x3c, b, &tb, &briber, w, Bribe::Shift(4), Vec::new())
}

fn bucklin_dollar(x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let (t, m) = (x3c.t(), x3c.m());
    pre(t >= 1, "bucklin-dollar needs a nonempty universe")?;
    pre(m >= t, "bucklin-dollar needs at least t sets")?;
    let ell = 3 * t + 2;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let x = b.add("x".into());
    let w = b.add("w".into());
    let d1: Vec<Vec<usize>> = (0..m).map(|i| b.family("d1", i + 1, ell - 3)).collect();
    let d2: Vec<Vec<usize>> = (0..m).map(|i| b.family("d2", i + 1, ell - 1)).collect();
    let dummies: Vec<usize> = d1.iter().chain(&d2).flatten().copied().collect();
    let mut qs = Vec::new();
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&e| u[e]).collect();
        b.bribe(i, b.complete(&cat(&[&[w], &d2[i]])));
        qs.push(b.complete(&cat(&[&set, &d1[i]])));
    }
    // with N = 2m + 2 voters in total, the m + 2 unbribed ones fix the round-ℓ tallies
    let mut cursor = 0;
    let mut hits = vec![0usize; b.m()];
    let mut next_dummy = |hits: &mut Vec<usize>| {
        let a = dummies[cursor % dummies.len()];
        cursor += 1;
        hits[a] += 1;
        a
    };
    for j in 0..m + 2 {
        let mut top: Vec<usize> = if j < m { u.clone() } else { (0..3 * t).map(|_| next_dummy(&mut hits)).collect() };
        top.push(if j <= t { w } else { next_dummy(&mut hits) });
        top.push(x);
        b.fixed(b.complete(&top));
    }
    pre(hits.iter().all(|&h| h <= m), "bucklin-dollar needs enough sets to keep dummies below a majority")?;
    let tb = cat(&[&[w], &u, &[x], &dummies]);
    let mut q = b.profile();
    for (&i, v) in b.bribed.iter().zip(&qs) {
        q.votes[i] = v.clone();
    }
    let wq = winner(&q, &VotingRule::SimplifiedBucklin, &order(&tb)).map_err(|e| ReductionError::Precondition(e.to_string()))?;
    let c = wq.idx();
    pre(u.contains(&c), &format!("bucklin-dollar: full compliance elects {} outside the universe", b.names[c]))?;
    let others: Vec<usize> = u.iter().copied().filter(|&a| a != c).collect();
    let briber = cat(&[&[c], &others, &dummies, &[w, x]]);
    let meta = vec![("round".to_string(), ell.to_string())];
    finish(ConstructionKind::BucklinDollar, x3c, b, &tb, &briber, w, Bribe::Dollar(qs), meta)
}

fn condorcet_dollar(rule: VotingRule, x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let (t, m) = (x3c.t(), x3c.m());
    pre(rule.is_pairwise(), "condorcet-dollar needs copeland or maximin")?;
    pre(t >= 2, "condorcet-dollar needs t >= 2")?;
    pre(m > 2 * t + 1, "condorcet-dollar needs more than 2t + 1 sets")?;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let x = b.add("x".into());
    let w = b.add("w".into());
    let c = b.add("c".into());
    let ru = rev(&u);
    let mut fixed: Vec<Vec<usize>> = Vec::new();
    for _ in 0..m - 3 {
        fixed.push(cat(&[&u, &[c, x, w]]));
    }
    fixed.push(cat(&[&[x], &u, &[c, w]]));
    fixed.push(cat(&[&[w], &u, &[c, x]]));
    for _ in 0..t - 2 {
        fixed.push(cat(&[&[x, w], &u, &[c]]));
        fixed.push(cat(&[&[c, w], &u, &[x]]));
        fixed.push(cat(&[&[x, w, c], &u]));
        fixed.push(cat(&[&ru, &[w, c, x]]));
        fixed.push(cat(&[&u, &[w, x, c]]));
        fixed.push(cat(&[&[c, w, x], &ru]));
    }
    for _ in 0..t - 1 {
        fixed.push(cat(&[&u, &[x, c, w]]));
        fixed.push(cat(&[&[w, x, c], &ru]));
    }
    for v in fixed {
        b.fixed(order(&v));
    }
    let mut qs = Vec::new();
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&e| u[e]).collect();
        let rest: Vec<usize> = u.iter().copied().filter(|a| !set.contains(a)).collect();
        b.bribe(i, order(&cat(&[&[w, x, c], &u])));
        qs.push(order(&cat(&[&[c], &set, &[x], &rest, &[w]])));
    }
    let tb = cat(&[&[c], &u, &[w, x]]);
    finish(ConstructionKind::CondorcetDollar(rule), x3c, b, &tb, &tb, w, Bribe::Dollar(qs), Vec::new())
}

/// Row-major margin targets, filled symmetrically.
struct Margins {
    m: usize,
    v: Vec<i64>,
}

impl Margins {
    fn new(m: usize) -> Self {
        Margins { m, v: vec![0; m * m] }
    }

    fn set(&mut self, a: usize, b: usize, d: i64) {
        self.v[a * self.m + b] = d;
        self.v[b * self.m + a] = -d;
    }

    /// Each of `a` beats the next ⌊|a|/2⌋ candidates cyclically by one.
    fn regular(&mut self, a: &[usize]) {
        let n = a.len();
        for i in 0..n {
            for d in 1..=(n - 1) / 2 {
                self.set(a[i], a[(i + d) % n], 1);
            }
        }
    }
}

fn copeland_shift(x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let (t, m) = (x3c.t(), x3c.m());
    pre(t % 2 == 1, "copeland-shift needs odd t")?;
    pre(m > t, "copeland-shift needs more sets than t")?;
    let covered: std::collections::BTreeSet<usize> = x3c.sets.iter().flatten().copied().collect();
    pre(covered.len() == x3c.universe.len(), "copeland-shift needs every element in some set")?;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let d: Vec<usize> = (1..=(3 * t - 1) / 2).map(|j| b.add(format!("d[{j}]"))).collect();
    let w = b.add("w".into());
    let x = b.add("x".into());
    let c = b.add("c".into());
    let e = b.add("e".into());
    let mm = b.m();
    let a: Vec<usize> = cat(&[&u, &[w, x]]);
    let ti = t as i64;
    let mut target = Margins::new(mm);
    target.regular(&a);
    for &ai in &a {
        for &di in &d {
            target.set(ai, di, 1);
        }
        target.set(ai, e, 1);
        target.set(ai, c, 1);
    }
    target.set(w, c, 2 * ti - 1);
    target.set(e, c, 2 * ti + 1);
    for (i, &di) in d.iter().enumerate() {
        target.set(di, c, 1);
        target.set(di, e, 1);
        for &dj in &d[i + 1..] {
            target.set(di, dj, 1);
        }
    }
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&el| u[el]).collect();
        let rest: Vec<usize> = u.iter().copied().filter(|z| !set.contains(z)).collect();
        let v = cat(&[&[x, w], &set, &[e, c], &rest, &d]);
        b.bribe(i, order(&v));
        b.fixed(order(&rev(&v)));
    }
    let tb = cat(&[&[c, w, e], &u, &d, &[x]]);
    b.fixed(order(&tb));
    let current = pairwise_matrix(&b.profile());
    b.pad(margin_padding(mm, &current, &target.v)?);
    let briber = cat(&[&[c, e], &u, &d, &[w, x]]);
    finish(ConstructionKind::CopelandShift, x3c, b, &tb, &briber, w, Bribe::Shift(5), Vec::new())
}

fn maximin_shift(x3c: &X3CInstance) -> Result<HardInstance, ReductionError> {
    let (t, m) = (x3c.t(), x3c.m());
    pre(t >= 1, "maximin-shift needs a nonempty universe")?;
    pre(m > t, "maximin-shift needs more sets than t")?;
    let mut b = Builder::new();
    let u: Vec<usize> = x3c.universe.iter().map(|n| b.add(n.clone())).collect();
    let w = b.add("w".into());
    let x = b.add("x".into());
    let c = b.add("c".into());
    let a = b.add("a".into());
    let mm = b.m();
    let group: Vec<usize> = cat(&[&u, &[w, x]]);
    let ti = t as i64;
    let odd = t % 2 == 1;
    let mut target = Margins::new(mm);
    if odd {
        target.regular(&group);
    }
    target.set(a, c, 5 * ti + 2);
    for &g in &group {
        target.set(g, a, 3 * ti + 2);
    }
    target.set(x, c, -3 * ti);
    target.set(w, c, -ti - 2);
    for &z in &u {
        target.set(z, c, -3 * ti);
    }
    for (i, s) in x3c.sets.iter().enumerate() {
        let set: Vec<usize> = s.iter().map(|&el| u[el]).collect();
        let rest: Vec<usize> = u.iter().copied().filter(|z| !set.contains(z)).collect();
        let v = cat(&[&[x, w], &set, &[a, c], &rest]);
        b.bribe(i, order(&v));
        b.fixed(order(&rev(&v)));
    }
    let tb = cat(&[&[c, w, a], &u, &[x]]);
    if odd {
        b.fixed(order(&tb));
    }
    let current = pairwise_matrix(&b.profile());
    b.pad(margin_padding(mm, &current, &target.v)?);
    let briber = cat(&[&[c, a], &u, &[w, x]]);
    finish(ConstructionKind::MaximinShift, x3c, b, &tb, &briber, w, Bribe::Shift(5), Vec::new())
}
