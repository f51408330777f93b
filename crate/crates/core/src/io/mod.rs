//! Text formats, verdict reports and the command layer behind the CLI.

mod commands;
mod instance;

pub use commands::{
    check_report, gen_report, is_safe_report, solve_report, winner_report, CommandError, Method, Report,
    DISPATCH_VERSION,
};
pub use instance::{parse_instance, read_metadata, serialize_instance, serialize_with_metadata};

use thiserror::Error;

/// A malformed input file; line 0 means the file as a whole.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{}{msg}", if *.line > 0 { format!("line {}: ", .line) } else { String::new() })]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

/// Reads the witness line of an UNSAFE report (`comply: ...` or `shift': ...`) back into a
/// pattern for `inst`.
pub fn parse_witness(inst: &crate::BriberyInstance, line: &str) -> Result<crate::Pattern, ParseError> {
    let bad = |msg: String| ParseError { line: 0, msg };
    let p = inst.profile();
    let voter = |id: &str| p.voter_index(id).ok_or_else(|| bad(format!("unknown voter {id}")));
    let line = line.trim();
    if let Some(rest) = line.strip_prefix("comply:") {
        let mut set = rest.split_whitespace().map(voter).collect::<Result<Vec<_>, _>>()?;
        set.sort_unstable();
        Ok(crate::Pattern::Comply(set))
    } else if let Some(rest) = line.strip_prefix("shift':") {
        let mut s = vec![0; p.len()];
        for w in rest.split_whitespace() {
            let (id, k) = w.split_once('=').ok_or_else(|| bad(format!("expected id=k, got {w}")))?;
            s[voter(id)?] = k.parse().map_err(|_| bad(format!("bad shift {k}")))?;
        }
        Ok(crate::Pattern::Shift(crate::ShiftVector(s)))
    } else {
        Err(bad(format!("not a witness line: {line}")))
    }
}
