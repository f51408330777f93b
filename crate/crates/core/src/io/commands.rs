use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bribery::{BriberyInstance, Payload, Pattern};
use crate::election::{rule_scores, winner, VotingRule};
use crate::par;
use crate::reductions::{generate_hardness_instance, solve_x3c, ConstructionKind, ReductionError, X3CInstance};
use crate::safety::{
    is_safe_anonymous_xp, is_safe_bucklin_shift_traced, is_safe_oracle, is_safe_plurality_flow, is_safe_veto_flow,
    is_safe_zone_flow, CheckPath, OracleOptions, SafetyError, SafetyVerdict, XP_DEFAULT_BOUND,
};
use crate::solvers::{
    solve_safe_anonymous_xp, solve_safe_bucklin_shift, solve_safe_plurality, solve_safe_shift_enumeration,
    solve_safe_veto_dollar, solve_safe_zone_shift, BriberyPlan, PlanKind, SolveError,
};

use super::instance::{parse_instance, read_metadata, serialize_with_metadata};
use super::ParseError;

/// Version of the `--method auto` dispatch table, printed with every verdict.
pub const DISPATCH_VERSION: &str = "v1";

const NO_POLY_CHECK: &str = "no proven polynomial method; use oracle/xp";
const NO_POLY_SOLVE: &str = "no proven polynomial method; use xp/enum";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Oracle,
    Flow,
    Greedy,
    Xp,
    Enum,
}

impl FromStr for Method {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "auto" => Method::Auto,
            "oracle" => Method::Oracle,
            "flow" => Method::Flow,
            "greedy" => Method::Greedy,
            "xp" => Method::Xp,
            "enum" => Method::Enum,
            _ => return Err(CommandError::Usage(format!("unknown method {s}"))),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Auto => "auto",
            Method::Oracle => "oracle",
            Method::Flow => "flow",
            Method::Greedy => "greedy",
            Method::Xp => "xp",
            Method::Enum => "enum",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Guard(_) => 3,
            _ => 2,
        }
    }
}

impl From<SafetyError> for CommandError {
    fn from(e: SafetyError) -> Self {
        match e {
            SafetyError::Guard { .. } | SafetyError::TooManyCandidates { .. } => CommandError::Guard(e.to_string()),
            SafetyError::WrongRule(_) => CommandError::Usage(NO_POLY_CHECK.into()),
            other => CommandError::Failed(other.to_string()),
        }
    }
}

impl From<SolveError> for CommandError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Guard { .. } => CommandError::Guard(e.to_string()),
            SolveError::Safety(s) => s.into(),
            SolveError::Inapplicable(_) => CommandError::Usage(NO_POLY_SOLVE.into()),
            other => CommandError::Failed(other.to_string()),
        }
    }
}

impl From<ReductionError> for CommandError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Guard(..) => CommandError::Guard(e.to_string()),
            ReductionError::InvalidX3c(_) => CommandError::Usage(e.to_string()),
            other => CommandError::Failed(other.to_string()),
        }
    }
}

/// Text for stdout plus the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

fn with_rule(inst: &BriberyInstance, rule: VotingRule) -> Result<BriberyInstance, CommandError> {
    rule.validate(inst.election.m()).map_err(|e| CommandError::Usage(e.to_string()))?;
    Ok(BriberyInstance { rule, ..inst.clone() })
}

pub fn winner_report(inst: &BriberyInstance, rule: VotingRule) -> Result<Report, CommandError> {
    let inst = with_rule(inst, rule)?;
    let e = &inst.election;
    let w = e.winner(&rule).map_err(|e| CommandError::Failed(e.to_string()))?;
    let table = rule_scores(&e.profile, &rule).map_err(|e| CommandError::Failed(e.to_string()))?;
    let scores: Vec<String> = e.names.iter().zip(&table.entries).map(|(n, s)| format!("{n}:{s}")).collect();
    Ok(Report { text: format!("WINNER {}\n  scores: {}\n", e.name(w), scores.join(" ")), code: 0 })
}

fn needs_is_safe(inst: &BriberyInstance) -> Result<(), CommandError> {
    match inst.payload {
        Payload::IsSafeDollar(_) | Payload::IsSafeShift(_) => Ok(()),
        _ => Err(CommandError::Usage("is-safe needs bribed lines or a shift line".into())),
    }
}

/// The polynomial checker the dispatch table assigns to this rule and payload, if any.
fn fast_check(inst: &BriberyInstance, method: Method) -> Option<Method> {
    let shift = matches!(inst.payload, Payload::IsSafeShift(_));
    let flow = match inst.rule {
        VotingRule::Plurality | VotingRule::Veto => true,
        VotingRule::KApproval(_) | VotingRule::KVeto(_) => shift,
        _ => false,
    };
    let greedy = inst.rule == VotingRule::SimplifiedBucklin && shift;
    match method {
        Method::Flow if flow => Some(Method::Flow),
        Method::Greedy if greedy => Some(Method::Greedy),
        Method::Auto if flow => Some(Method::Flow),
        Method::Auto if greedy => Some(Method::Greedy),
        _ => None,
    }
}

/// Runs one checker; the label names what actually ran.
fn run_check(inst: &BriberyInstance, method: Method) -> Result<(SafetyVerdict, String), CommandError> {
    let verdict = match method {
        Method::Flow => match inst.rule {
            VotingRule::Plurality => is_safe_plurality_flow(inst)?,
            VotingRule::Veto if matches!(inst.payload, Payload::IsSafeDollar(_)) => is_safe_veto_flow(inst)?,
            _ => is_safe_zone_flow(inst)?,
        },
        Method::Greedy => {
            let (v, path) = is_safe_bucklin_shift_traced(inst, OracleOptions::default())?;
            if path == CheckPath::OracleFallback {
                return Ok((v, "greedy/oracle-fallback".into()));
            }
            v
        }
        Method::Oracle => is_safe_oracle(inst, OracleOptions::default())?,
        Method::Xp => is_safe_anonymous_xp(inst, XP_DEFAULT_BOUND)?,
        Method::Auto | Method::Enum => unreachable!("resolved by the caller"),
    };
    Ok((verdict, method.to_string()))
}

fn check(inst: &BriberyInstance, method: Method) -> Result<(SafetyVerdict, String), CommandError> {
    needs_is_safe(inst)?;
    match method {
        Method::Oracle | Method::Xp => run_check(inst, method),
        Method::Flow | Method::Greedy => match fast_check(inst, method) {
            Some(m) => run_check(inst, m),
            None => Err(CommandError::Usage(NO_POLY_CHECK.into())),
        },
        Method::Auto => match fast_check(inst, method) {
            Some(m) => run_check(inst, m),
            None => match run_check(inst, Method::Oracle) {
                Err(CommandError::Guard(_)) => run_check(inst, Method::Xp),
                r => r,
            },
        },
        Method::Enum => Err(CommandError::Usage("enum is a solve method".into())),
    }
}

fn method_line(label: &str) -> String {
    format!("  method: {label} (dispatch {DISPATCH_VERSION})\n")
}

fn render_verdict(inst: &BriberyInstance, v: &SafetyVerdict, label: &str) -> String {
    let e = &inst.election;
    let ids = &e.profile.ids;
    let mut out = format!("{}\n{}", v.token(), method_line(label));
    match v {
        SafetyVerdict::Safe => {}
        SafetyVerdict::NotSuccessful(w) => out.push_str(&format!("  winner: {}\n", e.name(*w))),
        SafetyVerdict::Unsafe { witness, winner: w } => {
            out.push_str(&format!("  winner: {}\n", e.name(*w)));
            match witness {
                Pattern::Comply(set) => {
                    let names: Vec<&str> = set.iter().map(|&i| ids[i].as_str()).collect();
                    out.push_str(&format!("  comply: {}\n", names.join(" ")).replace(": \n", ":\n"));
                }
                Pattern::Shift(s) => {
                    let parts: Vec<String> = s.0.iter().enumerate().map(|(i, k)| format!("{}={k}", ids[i])).collect();
                    out.push_str(&format!("  shift': {}\n", parts.join(" ")));
                }
            }
        }
    }
    out
}

fn verdict_code(v: &SafetyVerdict) -> i32 {
    if v.is_safe() {
        0
    } else {
        1
    }
}

pub fn is_safe_report(inst: &BriberyInstance, rule: VotingRule, method: Method) -> Result<Report, CommandError> {
    let inst = with_rule(inst, rule)?;
    let (v, label) = check(&inst, method)?;
    Ok(Report { text: render_verdict(&inst, &v, &label), code: verdict_code(&v) })
}

fn solve(inst: &BriberyInstance, method: Method) -> Result<(Option<BriberyPlan>, Method), CommandError> {
    let (dollar, shift) = match inst.payload {
        Payload::SafeDollar(_) => (true, false),
        Payload::SafeShift(_) => (false, true),
        _ => return Err(CommandError::Usage("solve needs a budget with cost or shiftcosts annotations".into())),
    };
    let rule = inst.rule;
    let flow = rule == VotingRule::Plurality
        || (shift && matches!(rule, VotingRule::Veto | VotingRule::KApproval(_) | VotingRule::KVeto(_)));
    let greedy = (dollar && rule == VotingRule::Veto) || (shift && rule == VotingRule::SimplifiedBucklin);
    let chosen = match method {
        Method::Flow if flow => Method::Flow,
        Method::Greedy if greedy => Method::Greedy,
        Method::Flow | Method::Greedy => return Err(CommandError::Usage(NO_POLY_SOLVE.into())),
        Method::Enum if !shift => return Err(CommandError::Usage("enum solves shift instances only".into())),
        Method::Oracle => return Err(CommandError::Usage("oracle is an is-safe method".into())),
        Method::Auto if flow => Method::Flow,
        Method::Auto if greedy => Method::Greedy,
        Method::Auto if inst.election.m() <= XP_DEFAULT_BOUND => Method::Xp,
        Method::Auto if shift => Method::Enum,
        Method::Auto => return Err(CommandError::Usage(NO_POLY_SOLVE.into())),
        m => m,
    };
    let plan = match chosen {
        Method::Flow if rule == VotingRule::Plurality => solve_safe_plurality(inst)?,
        Method::Flow => solve_safe_zone_shift(inst)?,
        Method::Greedy if dollar => solve_safe_veto_dollar(inst)?,
        Method::Greedy => solve_safe_bucklin_shift(inst)?,
        Method::Xp => solve_safe_anonymous_xp(inst, XP_DEFAULT_BOUND)?,
        Method::Enum => {
            let max_total = inst.election.n() * inst.election.m().saturating_sub(1);
            solve_safe_shift_enumeration(inst, max_total)?
        }
        _ => unreachable!("resolved above"),
    };
    Ok((plan, chosen))
}

pub fn solve_report(inst: &BriberyInstance, rule: VotingRule, method: Method) -> Result<Report, CommandError> {
    let inst = with_rule(inst, rule)?;
    let (plan, used) = solve(&inst, method)?;
    let Some(plan) = plan else {
        return Ok(Report { text: format!("NO\n{}", method_line(&used.to_string())), code: 1 });
    };
    let e = &inst.election;
    let ids = &e.profile.ids;
    let mut out = format!("PLAN\n{}  cost: {}\n", method_line(&used.to_string()), plan.cost);
    match &plan.kind {
        PlanKind::Dollar { bribed, q } => {
            for &i in bribed {
                out.push_str(&format!("  bribed {} : {}\n", ids[i], e.render(&q.votes[i])));
            }
        }
        PlanKind::Shift(s) => {
            let parts: Vec<String> =
                s.0.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, k)| format!(" {}={k}", ids[i])).collect();
            out.push_str(&format!("  shift:{}\n", parts.concat()));
        }
    }
    Ok(Report { text: out, code: 0 })
}

/// Builds a hardness instance; returns the file text and the report.
pub fn gen_report(kind: ConstructionKind, x3c: &X3CInstance, out_name: &str) -> Result<(String, Report), CommandError> {
    let h = generate_hardness_instance(kind, x3c).map_err(|e| match e {
        ReductionError::Precondition(msg) => CommandError::Usage(msg),
        other => other.into(),
    })?;
    let expected = match solve_x3c(x3c) {
        Ok(Some(_)) => "UNSAFE",
        Ok(None) => "SAFE",
        Err(_) => "unknown",
    };
    let mut meta = h.metadata.clone();
    meta.push(("expected".into(), expected.into()));
    let file = serialize_with_metadata(&h.instance, &meta);
    let e = &h.instance.election;
    let text = format!(
        "GENERATED {out_name}\n  construction: {kind}\n  rule: {}\n  candidates: {}\n  voters: {}\n  padding-voters: {}\n  expected: {expected}\n",
        h.instance.rule,
        e.m(),
        e.n(),
        h.padding.len()
    );
    Ok((file, Report { text, code: 0 }))
}

/// Outcome of checking one file.
enum Row {
    Agree(String),
    Disagree(String),
    Skipped(String),
}

fn check_one(text: &str, rule: Option<VotingRule>) -> Result<Row, CommandError> {
    let mut inst = parse_instance(text)?;
    if let Some(r) = rule {
        inst = with_rule(&inst, r)?;
    }
    if needs_is_safe(&inst).is_err() {
        return Ok(Row::Skipped("not an is-safe instance".into()));
    }
    let expected = read_metadata(text).into_iter().find(|(k, _)| k == "expected").map(|(_, v)| v);
    let fast = match fast_check(&inst, Method::Auto) {
        Some(m) => Some(run_check(&inst, m)),
        None if inst.election.m() <= XP_DEFAULT_BOUND || expected.is_none() => Some(run_check(&inst, Method::Xp)),
        // generated files carry the verdict certified by their exact-cover answer
        None => None,
    };
    let (fast_token, label, fv) = match fast {
        Some(Ok((v, label))) => (v.token().to_string(), label, Some(v)),
        Some(Err(CommandError::Guard(g))) => return Ok(Row::Skipped(g)),
        Some(Err(e)) => return Err(e),
        None => (expected.unwrap_or_default(), "expected".to_string(), None),
    };
    let ov = match is_safe_oracle(&inst, OracleOptions::default()) {
        Ok(v) => v,
        Err(e @ SafetyError::Guard { .. }) => return Ok(Row::Skipped(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let line = format!("{label} {fast_token} / oracle {}", ov.token());
    let replays = fv.iter().chain([&ov]).all(|v| witness_replays(&inst, v));
    if fast_token == ov.token() && replays {
        Ok(Row::Agree(line))
    } else {
        Ok(Row::Disagree(line))
    }
}

fn witness_replays(inst: &BriberyInstance, v: &SafetyVerdict) -> bool {
    let SafetyVerdict::Unsafe { witness, winner: w } = v else {
        return true;
    };
    let Ok(r) = crate::bribery::realise(inst, witness) else {
        return false;
    };
    let Ok(part) = inst.partition() else {
        return false;
    };
    winner(&r, &inst.rule, &inst.election.tiebreak).is_ok_and(|x| x == *w && part.is_bad(x))
}

/// Cross-validates the fast checker against the oracle on every `(name, text)` file. Files are
/// checked concurrently; the report keeps input order.
pub fn check_report(files: &[(String, String)], rule: Option<VotingRule>) -> Result<Report, CommandError> {
    let rows = par::map(files, |(_, text)| check_one(text, rule));
    let mut body = String::new();
    let (mut agree, mut compared, mut skipped) = (0, 0, 0);
    for ((name, _), row) in files.iter().zip(rows) {
        let row = row.map_err(|e| match e {
            CommandError::Parse(p) => CommandError::Parse(ParseError { line: p.line, msg: format!("{name}: {}", p.msg) }),
            other => other,
        })?;
        match row {
            Row::Agree(s) => {
                agree += 1;
                compared += 1;
                body.push_str(&format!("  {name}: agree: {s}\n"));
            }
            Row::Disagree(s) => {
                compared += 1;
                body.push_str(&format!("  {name}: DISAGREE: {s}\n"));
            }
            Row::Skipped(s) => {
                skipped += 1;
                body.push_str(&format!("  {name}: skipped: {s}\n"));
            }
        }
    }
    let token = if agree == compared { "AGREE" } else { "DISAGREE" };
    let pct = if compared == 0 { 100.0 } else { 100.0 * agree as f64 / compared as f64 };
    let head = format!("{token} {agree}/{compared} ({pct:.1}%), {skipped} skipped\n");
    Ok(Report { text: head + &body, code: if agree == compared { 0 } else { 1 } })
}
