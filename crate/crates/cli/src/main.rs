use std::io::{self, IsTerminal};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flockrev::format::{load_flock, parse_base};
use flockrev::session::{EXIT_CHECK, EXIT_OK};
use flockrev::{repl, scenario, CliError, Options, Semantics, Session};
use flockrev_core::harness::{explore_constructibility, run_check, TrialConfig};
use flockrev_core::Flock;

#[derive(Parser)]
#[command(name = "flockrev", version, about = "Belief change over flocks of bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SessionArgs {
    /// Initial flock file (defaults to the empty flock).
    #[arg(long)]
    flock: Option<PathBuf>,
    /// Reduction used for beliefs and contraction.
    #[arg(long, default_value = "ours", value_parser = parse_semantics)]
    semantics: Semantics,
    /// Reject expansion by a formula already in the flock instead of
    /// adding a double-negated copy.
    #[arg(long)]
    no_freshen: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script of commands and print the transcript.
    Run {
        script: PathBuf,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Interactive session reading commands from standard input.
    Repl {
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Print the transcript of a built-in scenario.
    Scenario {
        #[arg(value_parser = scenario::SCENARIO_NAMES)]
        name: String,
    },
    /// Run a randomized check against the epistemic-state oracle.
    Check {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
    },
    /// Search for a sequence of changes that builds a target flock from
    /// singleton flocks over the atoms p and q.
    Explore {
        /// Target bases, each written `{ f1 ; f2 }`.
        #[arg(required = true)]
        bases: Vec<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        atoms: usize,
    },
    /// Print a flock file in canonical form with its beliefs.
    Show { path: PathBuf },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn open_session(args: &SessionArgs, dir: &Path) -> Result<Session, CliError> {
    let initial = match &args.flock {
        Some(path) => load_flock(path)?,
        None => Flock::new(),
    };
    let options = Options { auto_freshen: !args.no_freshen, semantics: args.semantics };
    Ok(Session::new(initial, options).with_dir(dir))
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Run { script, session } => {
            let text = std::fs::read_to_string(&script)
                .map_err(|source| CliError::Io { path: script.clone(), source })?;
            let dir = script.parent().unwrap_or(Path::new("."));
            let mut session = open_session(&session, dir)?;
            print!("{}", session.run_script(&text));
            Ok(session.status())
        }
        Command::Repl { session } => {
            let mut session = open_session(&session, Path::new("."))?;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal().then_some("flockrev> ");
            repl::run(&mut session, stdin.lock(), io::stdout().lock(), prompt)
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdio>"), source })?;
            Ok(session.status())
        }
        Command::Scenario { name } => {
            print!("{}", scenario::run(&name)?);
            Ok(EXIT_OK)
        }
        Command::Check { name, seed, trials, atoms } => {
            let cfg = TrialConfig::default().with_seed(seed).with_trials(trials).with_atoms(atoms);
            let report = run_check(&name, &cfg)?;
            print!("{report}");
            Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK })
        }
        Command::Explore { bases, depth, atoms } => {
            let target =
                bases.iter().enumerate().map(|(i, b)| parse_base(b, i + 1)).collect::<Result<Flock, _>>()?;
            print!("{}", explore_constructibility(&target, depth, atoms)?);
            Ok(EXIT_OK)
        }
        Command::Show { path } => {
            let flock = load_flock(&path)?;
            let mut session = Session::new(flock, Options::default());
            print!("{}", session.execute("show"));
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
