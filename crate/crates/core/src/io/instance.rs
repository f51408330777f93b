use std::collections::HashMap;

use crate::bribery::{BriberPreference, BriberyInstance, DollarCostModel, Payload, ShiftCostModel, ShiftVector};
use crate::election::{Candidate, Election, LinearOrder, Profile, VotingRule};

use super::ParseError;

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Per-line state while reading a file.
struct Reader {
    names: Option<Vec<String>>,
    index: HashMap<String, usize>,
}

impl Reader {
    fn candidates(&self, line: usize) -> Result<&[String], ParseError> {
        self.names.as_deref().ok_or_else(|| err(line, "candidates must be declared first"))
    }

    fn candidate(&self, line: usize, name: &str) -> Result<usize, ParseError> {
        self.index.get(name).copied().ok_or_else(|| err(line, format!("unknown candidate {name}")))
    }

    fn order(&self, line: usize, words: &[&str]) -> Result<LinearOrder, ParseError> {
        let m = self.candidates(line)?.len();
        let ix = words.iter().map(|w| self.candidate(line, w)).collect::<Result<Vec<_>, _>>()?;
        LinearOrder::new(ix.into_iter().map(|i| Candidate(i as u16)).collect(), m)
            .map_err(|e| err(line, format!("not a complete order: {e}")))
    }

    /// `a > b > c`
    fn ranking(&self, line: usize, text: &str) -> Result<LinearOrder, ParseError> {
        let words: Vec<&str> = text.split('>').map(str::trim).collect();
        if words.iter().any(|w| w.is_empty() || w.contains(char::is_whitespace)) {
            return Err(err(line, "expected `a > b > c`"));
        }
        self.order(line, &words)
    }
}

struct VoteLine {
    line: usize,
    id: String,
    vote: LinearOrder,
    cost: Option<u64>,
    shiftcosts: Option<Vec<u64>>,
}

fn number(line: usize, s: &str) -> Result<u64, ParseError> {
    s.parse().map_err(|_| err(line, format!("expected a non-negative integer, got {s}")))
}

/// Reads the line-oriented instance format; `#` starts a comment. A `# rule: <id>` comment sets
/// the rule, plurality otherwise.
pub fn parse_instance(text: &str) -> Result<BriberyInstance, ParseError> {
    let mut r = Reader { names: None, index: HashMap::new() };
    let mut tiebreak = None;
    let mut briber = None;
    let mut preferred: Option<(usize, usize)> = None;
    let mut budget = None;
    let mut votes: Vec<VoteLine> = Vec::new();
    let mut bribed: Vec<(usize, String, LinearOrder)> = Vec::new();
    let mut shift: Option<(usize, Vec<(String, usize)>)> = None;

    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, body) = line.split_once(':').ok_or_else(|| err(no, "expected `directive: ...`"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let body = body.trim();
        match head.as_slice() {
            ["candidates"] => {
                if r.names.is_some() {
                    return Err(err(no, "candidates declared twice"));
                }
                let names: Vec<String> = body.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(err(no, "no candidates"));
                }
                for (i, n) in names.iter().enumerate() {
                    if n.contains(['>', '=', ':', ',']) {
                        return Err(err(no, format!("bad candidate name {n}")));
                    }
                    if r.index.insert(n.clone(), i).is_some() {
                        return Err(err(no, format!("candidate {n} declared twice")));
                    }
                }
                r.names = Some(names);
            }
            ["tiebreak"] => {
                let words: Vec<&str> = body.split_whitespace().collect();
                tiebreak = Some(r.order(no, &words)?);
            }
            ["briber"] => briber = Some(r.ranking(no, body)?),
            ["preferred"] => preferred = Some((no, r.candidate(no, body)?)),
            ["budget"] => budget = Some(number(no, body)?),
            ["vote", rest @ ..] => {
                r.candidates(no)?;
                let Some((id, opts)) = rest.split_first() else {
                    return Err(err(no, "vote without an id"));
                };
                if id.contains('=') {
                    return Err(err(no, "vote without an id"));
                }
                let mut v = VoteLine { line: no, id: id.to_string(), vote: r.ranking(no, body)?, cost: None, shiftcosts: None };
                for o in opts {
                    match o.split_once('=') {
                        Some(("cost", x)) => v.cost = Some(number(no, x)?),
                        Some(("shiftcosts", x)) => {
                            v.shiftcosts = Some(x.split(',').map(|s| number(no, s)).collect::<Result<_, _>>()?)
                        }
                        _ => return Err(err(no, format!("unknown vote option {o}"))),
                    }
                }
                votes.push(v);
            }
            ["bribed", id] => bribed.push((no, id.to_string(), r.ranking(no, body)?)),
            ["shift"] => {
                if shift.is_some() {
                    return Err(err(no, "shift declared twice"));
                }
                let mut entries = Vec::new();
                for w in body.split_whitespace() {
                    let (id, k) = w.split_once('=').ok_or_else(|| err(no, format!("expected id=k, got {w}")))?;
                    entries.push((id.to_string(), number(no, k)? as usize));
                }
                shift = Some((no, entries));
            }
            _ => return Err(err(no, format!("unknown directive {}", head.join(" ")))),
        }
    }

    let names = r.candidates(0)?.to_vec();
    let m = names.len();
    let tiebreak = tiebreak.ok_or_else(|| err(0, "missing tiebreak"))?;
    let briber = briber.ok_or_else(|| err(0, "missing briber"))?;
    if let Some((no, c)) = preferred {
        if briber.top().idx() != c {
            return Err(err(no, "preferred candidate is not the briber's first choice"));
        }
    }
    let mut profile = Profile::new(m);
    for v in &votes {
        if profile.voter_index(&v.id).is_some() {
            return Err(err(v.line, format!("voter {} declared twice", v.id)));
        }
        profile.push(v.id.clone(), v.vote.clone());
    }
    if profile.is_empty() {
        return Err(err(0, "no votes"));
    }
    let voter = |line: usize, id: &str| profile.voter_index(id).ok_or_else(|| err(line, format!("unknown voter {id}")));

    let has_cost = votes.iter().any(|v| v.cost.is_some());
    let has_shiftcosts = votes.iter().any(|v| v.shiftcosts.is_some());
    let kinds = [!bribed.is_empty(), shift.is_some(), has_cost || has_shiftcosts || budget.is_some()];
    if kinds.iter().filter(|&&k| k).count() > 1 || (has_cost && has_shiftcosts) {
        let line = bribed.first().map(|b| b.0).or(shift.as_ref().map(|s| s.0)).unwrap_or(0);
        return Err(err(line, "mixed payload kinds"));
    }
    let payload = if !bribed.is_empty() {
        let mut q = profile.clone();
        let mut seen = vec![false; q.len()];
        for (line, id, vote) in bribed {
            let i = voter(line, &id)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(err(line, format!("voter {id} bribed twice")));
            }
            q.votes[i] = vote;
        }
        Payload::IsSafeDollar(q)
    } else if let Some((line, entries)) = shift {
        let mut s = vec![0; profile.len()];
        for (id, k) in entries {
            let i = voter(line, &id)?;
            s[i] = k;
        }
        Payload::IsSafeShift(ShiftVector(s))
    } else if has_cost {
        let budget = budget.ok_or_else(|| err(0, "cost annotations without a budget"))?;
        let prices = votes
            .iter()
            .map(|v| v.cost.ok_or_else(|| err(v.line, "missing cost")))
            .collect::<Result<_, _>>()?;
        Payload::SafeDollar(DollarCostModel { prices, budget })
    } else if has_shiftcosts {
        let budget = budget.ok_or_else(|| err(0, "shift costs without a budget"))?;
        let tables = votes
            .iter()
            .map(|v| v.shiftcosts.clone().ok_or_else(|| err(v.line, "missing shiftcosts")))
            .collect::<Result<_, _>>()?;
        Payload::SafeShift(ShiftCostModel { tables, budget })
    } else if budget.is_some() {
        return Err(err(0, "budget without cost annotations"));
    } else {
        return Err(err(0, "no payload: expected bribed lines, a shift line, or budget with costs"));
    };

    let rule = match read_metadata(text).into_iter().find(|(k, _)| k == "rule") {
        Some((_, r)) => r.parse().map_err(|e: crate::election::ElectionError| err(0, format!("rule comment: {e}")))?,
        None => VotingRule::Plurality,
    };
    let inst = BriberyInstance {
        election: Election { names, profile, tiebreak },
        rule,
        briber: BriberPreference { order: briber },
        payload,
    };
    if let Err(e) = inst.validate(false) {
        use crate::bribery::BriberyError as B;
        let id = match &e {
            B::TableLength { voter, .. } | B::ShiftOutOfRange { voter, .. } => Some(voter),
            B::NonZeroBase(v) | B::NonMonotone(v) => Some(v),
            _ => None,
        };
        let line = id.and_then(|id| votes.iter().find(|v| &v.id == id)).map_or(0, |v| v.line);
        return Err(err(line, e.to_string()));
    }
    Ok(inst)
}

/// Canonical text of an instance; `parse_instance` reads it back unchanged.
pub fn serialize_instance(inst: &BriberyInstance) -> String {
    let e = &inst.election;
    let p = &e.profile;
    let spaced = |o: &LinearOrder| o.as_slice().iter().map(|&c| e.name(c)).collect::<Vec<_>>().join(" ");
    let mut out = format!("# rule: {}\n", inst.rule);
    out.push_str(&format!("candidates: {}\n", e.names.join(" ")));
    out.push_str(&format!("tiebreak: {}\n", spaced(&e.tiebreak)));
    out.push_str(&format!("briber: {}\n", e.render(&inst.briber.order)));
    out.push_str(&format!("preferred: {}\n", e.name(inst.preferred())));
    match &inst.payload {
        Payload::SafeDollar(d) => out.push_str(&format!("budget: {}\n", d.budget)),
        Payload::SafeShift(s) => out.push_str(&format!("budget: {}\n", s.budget)),
        _ => {}
    }
    for (i, v) in p.votes.iter().enumerate() {
        let opt = match &inst.payload {
            Payload::SafeDollar(d) => format!(" cost={}", d.prices[i]),
            Payload::SafeShift(s) => {
                format!(" shiftcosts={}", s.tables[i].iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            }
            _ => String::new(),
        };
        out.push_str(&format!("vote {}{} : {}\n", p.ids[i], opt, e.render(v)));
    }
    match &inst.payload {
        Payload::IsSafeDollar(q) => {
            let changed: Vec<usize> = (0..p.len()).filter(|&i| q.votes[i] != p.votes[i]).collect();
            // an untouched profile still needs one line to mark the payload kind
            let lines = if changed.is_empty() { vec![0] } else { changed };
            for i in lines {
                out.push_str(&format!("bribed {} : {}\n", p.ids[i], e.render(&q.votes[i])));
            }
        }
        Payload::IsSafeShift(s) => {
            out.push_str("shift:");
            for (i, &k) in s.0.iter().enumerate() {
                if k > 0 {
                    out.push_str(&format!(" {}={k}", p.ids[i]));
                }
            }
            out.push('\n');
        }
        _ => {}
    }
    out
}

/// `# key: value` comment lines, in file order.
pub fn read_metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .filter_map(|l| l.split_once(':'))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .filter(|(k, _)| !k.is_empty() && !k.contains(char::is_whitespace))
        .collect()
}

/// Extra metadata comments followed by the canonical instance.
pub fn serialize_with_metadata(inst: &BriberyInstance, meta: &[(String, String)]) -> String {
    let mut out: String = meta.iter().filter(|(k, _)| k != "rule").map(|(k, v)| format!("# {k}: {v}\n")).collect();
    out.push_str(&serialize_instance(inst));
    out
}
