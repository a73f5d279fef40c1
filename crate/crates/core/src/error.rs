use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::logic::Formula;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("signature has {atoms} atoms, above the cap of {cap}")]
    SignatureTooLarge { atoms: usize, cap: usize },

    #[error("cannot contract by the tautology `{0}`")]
    TautologyContraction(Formula),

    #[error("`{0}` already occurs in the flock")]
    OccursInFlock(Formula),

    #[error("flocks share formulas: {}", list(.0))]
    NotDisjoint(Vec<Formula>),

    #[error("flock has no bases")]
    EmptyFlock,

    #[error("epistemic state has no admissible states")]
    EmptyState,

    #[error("base has {size} formulas, above the cap of {cap}")]
    BaseTooLarge { size: usize, cap: usize },

    #[error("epistemic state would have {states} states, above the cap of {cap}")]
    TooLarge { states: usize, cap: usize },

    #[error("invalid preference relation: {0}")]
    InvalidOrder(String),

    #[error("search bounds exceeded: {0}")]
    Guard(String),
}

fn list(fs: &[Formula]) -> String {
    let mut out = String::new();
    for (i, f) in fs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&alloc::format!("`{f}`"));
    }
    out
}
