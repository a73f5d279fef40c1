//! Line-oriented command sessions shared by script mode and the REPL.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use flockrev_core::harness::{run_check, TrialConfig};
use flockrev_core::logic::parse_formula;
use flockrev_core::{Base, EpistemicState, Flock, Formula};

use crate::error::CliError;
use crate::format::{load_flock, save_flock};
use crate::scenario;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMMAND: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

/// Which reduction decides the beliefs and the outcome of contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semantics {
    /// Inclusion-maximal bases.
    #[default]
    Ours,
    /// Inclusion-minimal bases, contraction by `fukv_delete`.
    Fukv,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Ours => "ours",
            Semantics::Fukv => "fukv",
        })
    }
}

impl FromStr for Semantics {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "ours" => Ok(Semantics::Ours),
            "fukv" => Ok(Semantics::Fukv),
            other => Err(CliError::Usage(format!("unknown semantics `{other}` (expected ours or fukv)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub auto_freshen: bool,
    pub semantics: Semantics,
}

impl Default for Options {
    fn default() -> Self {
        Options { auto_freshen: true, semantics: Semantics::Ours }
    }
}

pub const HELP: &str = "\
commands:
  load <path>            replace the flock by the one in <path>
  save <path>            write the flock to <path>
  show                   print the flock
  show history           list the recorded changes
  beliefs                print the belief formula
  believe <formula>      is <formula> believed?
  contract <formula>     contract by <formula>
  expand <formula>       expand by <formula>
  merge <path>           merge with the flock in <path>
  revise <formula>       contract by the negation, then expand
  normalize              keep only the reduced bases
  identical <path>       same epistemic state as the flock in <path>?
  equiv <path> --depth <n>
                         bounded behavioural equivalence with <path>
  undo                   revert the last change
  scenario <name>        run a built-in scenario
  check <name> [--seed n --trials n --atoms n]
                         run a randomized check
  help                   print this list
";

/// A current flock together with the changes that produced it.
///
/// Invariant: re-running the commands in `history` from `initial` with the
/// same options yields `current`.
#[derive(Debug, Clone)]
pub struct Session {
    initial: Flock,
    current: Flock,
    history: Vec<(String, Flock)>,
    options: Options,
    dir: PathBuf,
    status: i32,
}

enum Effect {
    Keep,
    Replace(Flock),
    Undo,
}

impl Session {
    pub fn new(initial: Flock, options: Options) -> Self {
        Session {
            current: initial.clone(),
            initial,
            history: Vec::new(),
            options,
            dir: PathBuf::from("."),
            status: EXIT_OK,
        }
    }

    /// Directory against which relative paths in commands are resolved.
    pub fn with_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.dir = dir.into();
        self
    }

    pub fn current(&self) -> &Flock {
        &self.current
    }

    pub fn initial(&self) -> &Flock {
        &self.initial
    }

    pub fn history(&self) -> &[(String, Flock)] {
        &self.history
    }

    pub fn options(&self) -> Options {
        self.options
    }

    /// Most severe exit status produced so far.
    pub fn status(&self) -> i32 {
        self.status
    }

    fn note_status(&mut self, code: i32) {
        self.status = self.status.max(code);
    }

    /// Runs one command line and returns its transcript: the echoed
    /// command, command-specific output, then the flock and its beliefs.
    /// Blank lines and `#` comments produce no output.
    pub fn execute(&mut self, line: &str) -> String {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return String::new();
        }
        let mut out = format!("> {line}\n");
        match self.dispatch(line, &mut out) {
            Ok(Effect::Keep) => {}
            Ok(Effect::Replace(flock)) => {
                self.history.push((line.to_string(), flock.clone()));
                self.current = flock;
            }
            Ok(Effect::Undo) => {}
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                self.note_status(e.exit_code());
            }
        }
        out.push_str(&self.render_state());
        out
    }

    /// Runs every line of `script` and concatenates the transcripts.
    pub fn run_script(&mut self, script: &str) -> String {
        script.lines().map(|line| self.execute(line)).collect()
    }

    /// Re-runs the recorded commands from the initial flock.
    pub fn replay_history(&self) -> Result<Flock, CliError> {
        let mut fresh = Session::new(self.initial.clone(), self.options).with_dir(self.dir.clone());
        for (command, _) in &self.history {
            let mut sink = String::new();
            match fresh.dispatch(command, &mut sink)? {
                Effect::Replace(flock) => {
                    fresh.history.push((command.clone(), flock.clone()));
                    fresh.current = flock;
                }
                Effect::Keep | Effect::Undo => {
                    return Err(CliError::Usage(format!("`{command}` does not change the flock")))
                }
            }
        }
        Ok(fresh.current)
    }

    /// The flock whose bases determine the beliefs under the active
    /// semantics.
    pub fn belief_flock(&self) -> Flock {
        match self.options.semantics {
            Semantics::Ours => self.current.normalize(),
            Semantics::Fukv => self.current.fukv_normalize(),
        }
    }

    pub fn belief_formula(&self) -> Option<Formula> {
        let reduced = self.belief_flock();
        if reduced.is_empty() {
            return None;
        }
        Some(Formula::disjoin(reduced.canonical().into_iter().map(Base::conjunction)))
    }

    fn render_state(&self) -> String {
        if self.current.is_empty() {
            return "(empty flock)\nbeliefs: (none)\n".to_string();
        }
        let beliefs = self.belief_formula().expect("nonempty flock has a reduced base");
        format!("{}beliefs: {beliefs}\n", self.current)
    }

    fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.dir.join(p)
        }
    }

    fn dispatch(&mut self, line: &str, out: &mut String) -> Result<Effect, CliError> {
        let (word, rest) = match line.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (line, ""),
        };
        let formula = || -> Result<Formula, CliError> {
            if rest.is_empty() {
                return Err(CliError::Usage(format!("`{word}` needs a formula")));
            }
            Ok(parse_formula(rest)?)
        };
        let path = || -> Result<PathBuf, CliError> {
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(CliError::Usage(format!("`{word}` needs exactly one path")));
            }
            Ok(self.resolve(rest))
        };
        let no_args = || -> Result<(), CliError> {
            if rest.is_empty() {
                Ok(())
            } else {
                Err(CliError::Usage(format!("`{word}` takes no arguments")))
            }
        };

        match word {
            "load" => Ok(Effect::Replace(load_flock(&path()?)?)),
            "save" => {
                save_flock(&path()?, &self.current)?;
                Ok(Effect::Keep)
            }
            "show" if rest == "history" => {
                if self.history.is_empty() {
                    out.push_str("history: (empty)\n");
                }
                for (i, (command, flock)) in self.history.iter().enumerate() {
                    let _ = writeln!(out, "{}. {command} => {}", i + 1, one_line(flock));
                }
                Ok(Effect::Keep)
            }
            "show" | "beliefs" => {
                no_args()?;
                Ok(Effect::Keep)
            }
            "believe" => {
                let f = formula()?;
                let reduced = self.belief_flock();
                if reduced.is_empty() {
                    return Err(flockrev_core::Error::EmptyFlock.into());
                }
                let mut believed = true;
                for base in reduced.iter() {
                    believed &= base.entails(&f)?;
                }
                let _ = writeln!(out, "believed {f}: {}", yes_no(believed));
                Ok(Effect::Keep)
            }
            "contract" => {
                let f = formula()?;
                let next = match self.options.semantics {
                    Semantics::Ours => self.current.contract(&f)?,
                    Semantics::Fukv => self.current.fukv_delete(&f)?,
                };
                Ok(Effect::Replace(next))
            }
            "expand" => {
                let f = formula()?;
                let expansion = self.current.expand(&f, self.options.auto_freshen)?;
                if expansion.used != f {
                    let _ = writeln!(out, "used: {}", expansion.used);
                }
                Ok(Effect::Replace(expansion.flock))
            }
            "merge" => {
                let other = load_flock(&path()?)?;
                Ok(Effect::Replace(self.current.merge(&other)?))
            }
            "revise" => Ok(Effect::Replace(self.current.revise(&formula()?)?)),
            "normalize" => {
                no_args()?;
                Ok(Effect::Replace(self.belief_flock()))
            }
            "identical" => {
                let other = load_flock(&path()?)?;
                let same = match self.options.semantics {
                    Semantics::Ours => self.current.identical(&other),
                    Semantics::Fukv => self.current.fukv_normalize() == other.fukv_normalize(),
                };
                let _ = writeln!(out, "identical: {}", yes_no(same));
                Ok(Effect::Keep)
            }
            "equiv" => {
                let (target, depth) = parse_equiv(rest)?;
                let other = load_flock(&self.resolve(target))?;
                let left = EpistemicState::generate(&self.current)?;
                let right = EpistemicState::generate(&other)?;
                let same = left.behaviorally_equivalent(&right, depth)?;
                let _ = writeln!(out, "equivalent up to depth {depth}: {}", yes_no(same));
                Ok(Effect::Keep)
            }
            "undo" => {
                no_args()?;
                let (command, _) =
                    self.history.pop().ok_or_else(|| CliError::Usage("nothing to undo".into()))?;
                self.current = self.history.last().map_or_else(|| self.initial.clone(), |(_, f)| f.clone());
                let _ = writeln!(out, "undid: {command}");
                Ok(Effect::Undo)
            }
            "scenario" => {
                out.push_str(&scenario::run(rest)?);
                Ok(Effect::Keep)
            }
            "check" => {
                let (name, cfg) = parse_check(rest)?;
                let report = run_check(name, &cfg)?;
                out.push_str(&report.to_string());
                if !report.passed() {
                    self.note_status(EXIT_CHECK);
                }
                Ok(Effect::Keep)
            }
            "help" => {
                out.push_str(HELP);
                Ok(Effect::Keep)
            }
            other => Err(CliError::Usage(format!("unknown command `{other}` (try `help`)"))),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Bases on one line, separated by spaces, in canonical order.
pub fn one_line(flock: &Flock) -> String {
    if flock.is_empty() {
        return "(empty flock)".to_string();
    }
    flock.canonical().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_number<T: FromStr>(flag: &str, value: Option<&str>) -> Result<T, CliError> {
    let value = value.ok_or_else(|| CliError::Usage(format!("`{flag}` needs a value")))?;
    value.parse().map_err(|_| CliError::Usage(format!("`{flag}` expects a number, got `{value}`")))
}

fn parse_equiv(rest: &str) -> Result<(&str, usize), CliError> {
    let mut words = rest.split_whitespace();
    let usage = || CliError::Usage("usage: equiv <path> --depth <n>".into());
    let path = words.next().ok_or_else(usage)?;
    match words.next() {
        Some("--depth") => {}
        _ => return Err(usage()),
    }
    let depth = parse_number("--depth", words.next())?;
    if words.next().is_some() {
        return Err(usage());
    }
    Ok((path, depth))
}

fn parse_check(rest: &str) -> Result<(&str, TrialConfig), CliError> {
    let mut words = rest.split_whitespace();
    let name = words
        .next()
        .ok_or_else(|| CliError::Usage("usage: check <name> [--seed n --trials n --atoms n]".into()))?;
    let mut cfg = TrialConfig::default();
    while let Some(flag) = words.next() {
        match flag {
            "--seed" => cfg.seed = parse_number(flag, words.next())?,
            "--trials" => cfg.trials = parse_number(flag, words.next())?,
            "--atoms" => cfg.atoms = parse_number(flag, words.next())?,
            other => return Err(CliError::Usage(format!("unknown check option `{other}`"))),
        }
    }
    Ok((name, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_flock;

    fn flock(text: &str) -> Flock {
        parse_flock(text).unwrap()
    }

    fn session(text: &str) -> Session {
        Session::new(flock(text), Options::default())
    }

    #[test]
    fn contraction_transcript() {
        let mut s = session("{ A ; B }");
        let out = s.run_script("contract A & B\ncontract A\n");
        assert_eq!(out, "> contract A & B\n{ A }\n{ B }\nbeliefs: A | B\n> contract A\n{ B }\nbeliefs: B\n");
        assert_eq!(s.status(), EXIT_OK);
    }

    #[test]
    fn expansion_reports_the_fresh_formula() {
        let mut s = session("{ A }\n{ B }");
        let out = s.execute("expand B");
        assert_eq!(out, "> expand B\nused: ~~B\n{ A ; ~~B }\n{ B ; ~~B }\nbeliefs: A & ~~B | B & ~~B\n");
        assert!(s.execute("believe B").contains("believed B: yes"));
        assert!(s.execute("believe A & B").contains("believed A & B: no"));
    }

    #[test]
    fn errors_leave_the_flock_alone() {
        let mut s = session("{ A ; B }");
        let before = s.current().clone();
        for bad in ["contract A | ~A", "contract A &", "expand", "frobnicate", "load /no/such/file"] {
            let out = s.execute(bad);
            assert!(out.contains("\nerror: "), "{out}");
            assert_eq!(s.current(), &before);
        }
        assert!(s.history().is_empty());
        assert_eq!(s.status(), 3);

        let mut strict = Session::new(flock("{ A }"), Options { auto_freshen: false, ..Options::default() });
        assert!(strict.execute("expand A").contains("error: `A` already occurs"));
        assert_eq!(strict.status(), EXIT_COMMAND);
    }

    #[test]
    fn undo_and_history_replay() {
        let mut s = session("{ A ; B ; C }");
        s.run_script("contract A & B\nexpand A\nrevise ~C\nnormalize\n");
        assert_eq!(s.history().len(), 4);
        assert_eq!(&s.replay_history().unwrap(), s.current());

        let after_two = s.history()[1].1.clone();
        s.execute("undo");
        s.execute("undo");
        assert_eq!(s.current(), &after_two);
        assert_eq!(&s.replay_history().unwrap(), s.current());
        s.execute("undo");
        s.execute("undo");
        assert_eq!(s.current(), s.initial());
        assert!(s.execute("undo").contains("error: nothing to undo"));
    }

    #[test]
    fn history_listing() {
        let mut s = session("{ A ; B }");
        assert!(s.execute("show history").contains("history: (empty)"));
        s.execute("contract A & B");
        s.execute("believe A");
        let out = s.execute("show history");
        assert!(out.contains("1. contract A & B => { A } { B }\n"), "{out}");
        assert!(!out.contains("2."));
    }

    #[test]
    fn fukv_semantics_switches_contraction_and_beliefs() {
        let fukv = Options { semantics: Semantics::Fukv, ..Options::default() };
        let mut s = Session::new(flock("{ A ; B }"), fukv);
        let out = s.run_script("contract A & B\ncontract A\n");
        assert!(out.ends_with("> contract A\n{ }\nbeliefs: true\n"), "{out}");
        let mut t = Session::new(flock("{ A }\n{ A ; B }"), fukv);
        assert!(t.execute("beliefs").ends_with("beliefs: A\n"));
    }

    #[test]
    fn files_and_queries() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("ab.flock"), "{ A ; B }\n").unwrap();
        std::fs::write(dir.path().join("split.flock"), "{ A }\n{ B }\n{ }\n").unwrap();
        std::fs::write(dir.path().join("c.flock"), "{ C }\n").unwrap();
        let mut s = Session::new(Flock::new(), Options::default()).with_dir(dir.path());
        let out = s.run_script(
            "show\nload ab.flock\ncontract A & B\nidentical split.flock\nmerge c.flock\nsave out.flock\n\
             equiv split.flock --depth 1\n",
        );
        assert!(out.starts_with("> show\n(empty flock)\nbeliefs: (none)\n"));
        assert!(out.contains("identical: yes"));
        assert!(out.contains("> merge c.flock\n{ A ; C }\n{ B ; C }\n"));
        assert!(out.contains("equivalent up to depth 1: no"));
        let saved = std::fs::read_to_string(dir.path().join("out.flock")).unwrap();
        assert_eq!(saved, "{ A ; C }\n{ B ; C }\n");
        assert_eq!(&s.replay_history().unwrap(), s.current());
    }

    #[test]
    fn check_command_reports_and_sets_status() {
        let mut s = session("{ A }");
        let out = s.execute("check lemma-contraction --trials 5 --seed 3");
        assert!(out.contains("CHECK lemma-contraction trials=5 failures=0"), "{out}");
        assert_eq!(s.status(), EXIT_OK);
        assert!(s.execute("check nonsense").contains("error: "));
        assert!(s.execute("check expansion --bogus 1").contains("unknown check option"));
    }

    #[test]
    fn comments_and_blank_lines_are_silent() {
        let mut s = session("{ A }");
        assert_eq!(s.run_script("# note\n\n   \n"), "");
    }
}
