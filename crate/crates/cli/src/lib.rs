//! Command-line front end for `flockrev-core`: flock files, scripted and
//! interactive sessions, built-in scenarios.

pub mod error;
pub mod format;
pub mod repl;
pub mod scenario;
pub mod session;

pub use error::CliError;
pub use format::{load_flock, parse_flock, render_flock, save_flock};
pub use session::{Options, Semantics, Session};
