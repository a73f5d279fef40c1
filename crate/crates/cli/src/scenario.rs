//! Built-in scenarios: short scripted sessions with fixed transcripts.

use std::fmt::Write as _;

use flockrev_core::Flock;

use crate::error::CliError;
use crate::format::parse_flock;
use crate::session::{one_line, Options, Semantics, Session};

pub const SCENARIO_NAMES: [&str; 3] = ["niamey", "fukv-contrast", "syntax-sensitivity"];

struct Segment<'a> {
    title: &'a str,
    initial: &'a str,
    options: Options,
    script: &'a str,
}

const OURS: Options = Options { auto_freshen: true, semantics: Semantics::Ours };
const FUKV: Options = Options { auto_freshen: true, semantics: Semantics::Fukv };

const NIAMEY: [Segment<'static>; 2] = [
    Segment {
        title: "giving up A & B, then A",
        initial: "{ A ; B }",
        options: OURS,
        script: "contract A & B\nbelieve A | B\nbelieve A\ncontract A\nbelieve B\n",
    },
    Segment {
        title: "giving up A & B, new support for B, then giving up B",
        initial: "{ A ; B }",
        options: OURS,
        script: "contract A & B\nexpand B\nbelieve B\nbelieve A & B\ncontract B\nbelieve A\n",
    },
];

const SYNTAX: [Segment<'static>; 2] = [
    Segment {
        title: "A written twice, once as ~~A",
        initial: "{ ~~A }\n{ A ; B }",
        options: OURS,
        script: "normalize\nbelieve A\nbelieve A & B\n",
    },
    Segment {
        title: "A written the same way both times",
        initial: "{ A }\n{ A ; B }",
        options: OURS,
        script: "normalize\nbelieve A\nbelieve A & B\n",
    },
];

const ORDERS: [(&str, &str); 2] = [("A & B, then A", "A & B\nA"), ("A, then A & B", "A\nA & B")];

fn run_segment(out: &mut String, segment: &Segment) -> Result<Session, CliError> {
    let initial = parse_flock(segment.initial)?;
    let mut session = Session::new(initial, segment.options);
    let _ = writeln!(
        out,
        "## {} (semantics={}, auto-freshen={})",
        segment.title,
        segment.options.semantics,
        if segment.options.auto_freshen { "on" } else { "off" }
    );
    let _ = writeln!(out, "start: {}", one_line(session.current()));
    out.push_str(&session.run_script(segment.script));
    if session.status() != 0 {
        return Err(CliError::Usage(format!("scenario segment `{}` hit an error", segment.title)));
    }
    Ok(session)
}

fn run_segments(name: &str, segments: &[Segment]) -> Result<String, CliError> {
    let mut out = format!("=== scenario {name}\n");
    for segment in segments {
        run_segment(&mut out, segment)?;
    }
    Ok(out)
}

fn fukv_contrast() -> Result<String, CliError> {
    let mut out = String::from("=== scenario fukv-contrast\n");
    let mut rows = Vec::new();
    for (semantics, options) in [("ours", OURS), ("fukv", FUKV)] {
        let mut results: Vec<Flock> = Vec::new();
        for (title, order) in ORDERS {
            let script: String = order.lines().map(|f| format!("contract {f}\n")).collect();
            let segment = Segment { title, initial: "{ A ; B }", options, script: &script };
            let session = run_segment(&mut out, &segment)?;
            results.push(session.belief_flock());
        }
        let same = results[0] == results[1];
        rows.push([
            semantics.to_string(),
            one_line(&results[0]),
            one_line(&results[1]),
            if same { "yes" } else { "no" }.to_string(),
        ]);
    }
    out.push_str("## summary\n");
    let header = ["semantics", ORDERS[0].0, ORDERS[1].0, "identical"].map(String::from);
    let widths: Vec<usize> =
        (0..4).map(|c| rows.iter().chain([&header]).map(|r| r[c].len()).max().unwrap_or(0)).collect();
    for row in [&header].into_iter().chain(&rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
    }
    Ok(out)
}

/// Transcript of the named scenario.
pub fn run(name: &str) -> Result<String, CliError> {
    match name {
        "niamey" => run_segments(name, &NIAMEY),
        "syntax-sensitivity" => run_segments(name, &SYNTAX),
        "fukv-contrast" => fukv_contrast(),
        other => Err(CliError::Usage(format!(
            "unknown scenario `{other}` (expected one of: {})",
            SCENARIO_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scenario_runs_and_is_deterministic() {
        for name in SCENARIO_NAMES {
            let first = run(name).unwrap();
            assert_eq!(first, run(name).unwrap());
            assert!(!first.contains("error:"), "{first}");
        }
        assert!(matches!(run("atlantis"), Err(CliError::Usage(_))));
    }

    #[test]
    fn fukv_summary_rows() {
        let out = run("fukv-contrast").unwrap();
        let summary = out.split("## summary\n").nth(1).unwrap();
        let rows: Vec<&str> = summary.lines().collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[1].starts_with("ours") && rows[1].ends_with("yes"), "{summary}");
        assert!(rows[2].starts_with("fukv") && rows[2].ends_with("no"), "{summary}");
    }
}
