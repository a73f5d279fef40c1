//! Iterated non-prioritized belief change over flocks of bases.
//!
//! Two representations live side by side:
//!
//! * [`flock`]: finite sets of finite bases, with contraction, merge,
//!   expansion and revision defined directly on the syntax.
//! * [`estate`]: explicit finite epistemic states (admissible states, labels,
//!   strict preference), used as a brute-force oracle for the flock
//!   operations.
//!
//! [`logic`] provides the propositional language and the classical
//! consequence relation; [`harness`] holds the randomized checkers and the
//! bounded constructibility explorer.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod estate;
pub mod flock;
pub mod harness;
pub mod logic;

pub use error::{Error, Result};

pub use estate::{BeliefSummary, EpistemicState};
pub use flock::{Base, Flock};
pub use logic::{Formula, Signature};
