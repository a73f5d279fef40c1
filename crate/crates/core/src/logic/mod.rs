//! Propositional formulas, their ASCII syntax, and classical consequence.

mod formula;
mod parse;
mod semantics;

pub use formula::Formula;
pub use parse::parse_formula;
pub use semantics::{
    entails, equivalent, freshen, is_satisfiable, is_tautology, signature, Signature, TruthTable, ATOM_CAP,
};
