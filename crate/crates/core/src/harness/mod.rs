//! Randomized checkers that compare flock operations against the explicit
//! epistemic-state oracle, and a bounded constructibility explorer.
//!
//! Every check is a pure function of its [`TrialConfig`]: trial `i` draws
//! from a ChaCha stream keyed by `(seed, i)`, so reports are reproducible
//! byte for byte.

mod checks;
mod explore;
mod gen;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use checks::{
    check_commutativity, check_expansion, check_lemma_contraction, check_persistence, check_theorem_merge,
    contraction_commutes, expansion_commutes, expansion_matches_oracle, fukv_order_witness,
    lemma_contraction_holds, merge_matches_oracle, run_check, CHECK_NAMES,
};
pub use explore::{
    canonical_formulas, explore_constructibility, replay, Exploration, Step, EXPLORE_ATOM_CAP,
    EXPLORE_DEPTH_CAP,
};
pub use gen::{atom_names, random_flock, random_formula, random_persistent_state};

use crate::error::{Error, Result};

/// Bounds and seed for a randomized check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub atoms: usize,
    pub max_bases: usize,
    pub max_base_size: usize,
    pub max_formula_depth: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig { seed: 0, trials: 200, atoms: 3, max_bases: 3, max_base_size: 3, max_formula_depth: 2 }
    }
}

impl TrialConfig {
    pub fn with_trials(self, trials: usize) -> Self {
        TrialConfig { trials, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        TrialConfig { seed, ..self }
    }

    pub fn with_atoms(self, atoms: usize) -> Self {
        TrialConfig { atoms, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let bound = |what: &str, value: usize, lo: usize, hi: usize| {
            if value < lo || value > hi {
                Err(Error::Guard(format!("{what} must be in {lo}..={hi}, got {value}")))
            } else {
                Ok(())
            }
        };
        bound("atoms", self.atoms, 1, 4)?;
        bound("max_bases", self.max_bases, 1, 4)?;
        bound("max_base_size", self.max_base_size, 1, 4)?;
        bound("max_formula_depth", self.max_formula_depth, 0, 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub counterexample: String,
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub trials: usize,
    /// Samples redrawn because an operation's precondition failed or a
    /// size guard tripped.
    pub resampled: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport { name: name.into(), trials: 0, resampled: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `CHECK <name> trials=<n> failures=<k>`, then one block per failure with
/// the counterexample in flock text format.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CHECK {} trials={} failures={}", self.name, self.trials, self.failures.len())?;
        writeln!(f, "# resampled={}", self.resampled)?;
        for failure in &self.failures {
            writeln!(f, "--- trial {}", failure.trial)?;
            f.write_str(&failure.counterexample)?;
            if !failure.counterexample.ends_with('\n') {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
