//! Instance generators: random instances and hardness constructions from exact-cover inputs.

mod constructions;
mod padding;
mod random;
mod x3c;

pub use constructions::{generate_hardness_instance, ConstructionKind, HardInstance};
pub use padding::{margin_padding, score_gap_padding, PaddingRule};
pub use random::{candidate_names, random_instance, PayloadKind, RandomSpec};
pub use x3c::{solve_x3c, X3CInstance, X3C_GUARD};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exact-cover search guard: {0} sets exceed the limit of {1}")]
    Guard(usize, usize),
    #[error("padding cannot realise the gap for {0}")]
    Unrealisable(String),
    #[error("invalid exact-cover instance: {0}")]
    InvalidX3c(String),
}
