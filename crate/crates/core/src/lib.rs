//! Safety of bribery under partial compliance: checkers, solvers and hard-instance generators.

pub mod bribery;
pub mod election;
pub mod flow;
pub mod io;
pub mod par;
pub mod reductions;
pub mod safety;
pub mod solvers;
pub mod tally;

pub use bribery::{BriberPreference, BriberyInstance, Payload, Pattern, ShiftVector};
pub use election::{Candidate, Election, ElectionError, LinearOrder, Profile, ScoreTable, VotingRule};
pub use safety::{SafetyError, SafetyVerdict};
