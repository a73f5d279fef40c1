//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured time against its budget. Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use flockrev::{parse_flock, scenario, Options, Semantics, Session};
use flockrev_core::harness::{
    check_commutativity, check_expansion, check_lemma_contraction, check_persistence, check_theorem_merge,
    explore_constructibility, CheckReport, TrialConfig,
};
use flockrev_core::logic::{entails, equivalent, is_tautology, parse_formula};
use flockrev_core::{Flock, Formula};
use proptest::collection::vec;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;

fn flock(text: &str) -> Flock {
    parse_flock(text).expect("valid flock literal")
}

fn f(text: &str) -> Formula {
    parse_formula(text).expect("valid formula literal")
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn golden(name: &str) -> Result<(), String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let actual = scenario::run(name).map_err(|e| e.to_string())?;
    ensure(actual == expected, || format!("transcript of `{name}` differs from {}", path.display()))
}

fn believes(s: &Session, text: &str) -> bool {
    s.belief_flock().iter().all(|b| b.entails(&f(text)).expect("small signature"))
}

fn niamey() -> Outcome {
    golden("niamey")?;
    let mut s = Session::new(flock("{ A ; B }"), Options::default());
    s.execute("contract A & B");
    ensure(s.current().identical(&flock("{ A }\n{ B }")), || {
        format!("after contract A & B:\n{}", s.current())
    })?;
    let beliefs = s.belief_formula().ok_or("no beliefs")?;
    ensure(equivalent(&beliefs, &f("A | B")).unwrap(), || format!("beliefs {beliefs}, expected A | B"))?;
    s.execute("contract A");
    ensure(s.current() == &flock("{ B }") && believes(&s, "B"), || {
        format!("after contract A:\n{}", s.current())
    })?;

    let mut t = Session::new(flock("{ A ; B }"), Options::default());
    t.run_script("contract A & B\nexpand B\ncontract B\n");
    ensure(t.current() == &flock("{ A }") && believes(&t, "A"), || {
        format!("after expand/contract B:\n{}", t.current())
    })?;
    ensure(t.status() == 0, || "a command failed".into())?;
    Ok("golden transcript matches; {{A},{B}}, A | B, {{B}}, {{A}}".into())
}

fn syntax_sensitivity() -> Outcome {
    golden("syntax-sensitivity")?;
    let primed = Session::new(flock("{ ~~A }\n{ A ; B }"), Options::default());
    ensure(believes(&primed, "A") && !believes(&primed, "A & B"), || "{{~~A},{A,B}} beliefs".into())?;
    let plain = Session::new(flock("{ A }\n{ A ; B }"), Options::default());
    ensure(plain.current().normalize() == flock("{ A ; B }"), || {
        "{{A},{A,B}} does not normalize to {{A,B}}".into()
    })?;
    ensure(believes(&plain, "A & B"), || "{{A},{A,B}} does not believe A & B".into())?;
    Ok("A' = ~~A blocks A & B; plain A collapses to {{A,B}}".into())
}

fn fukv_contrast() -> Outcome {
    golden("fukv-contrast")?;
    let start = flock("{ A ; B }");
    let (a, ab) = (f("A"), f("A & B"));
    let first = start.contract(&ab).and_then(|x| x.contract(&a)).map_err(|e| e.to_string())?;
    let second = start.contract(&a).and_then(|x| x.contract(&ab)).map_err(|e| e.to_string())?;
    ensure(first.identical(&second) && second.identical(&flock("{ B }")), || {
        format!("ours: {first} vs {second}")
    })?;

    let fukv = Options { semantics: Semantics::Fukv, ..Options::default() };
    let run = |script: &str| {
        let mut s = Session::new(start.clone(), fukv);
        s.run_script(script);
        s.belief_flock()
    };
    let (x, y) = (run("contract A & B\ncontract A\n"), run("contract A\ncontract A & B\n"));
    ensure(x == flock("{ }") && y == flock("{ B }") && x != y, || format!("fukv: {x} vs {y}"))?;
    Ok("ours: both orders {{B}}; fukv: {{}} vs {{B}}".into())
}

fn report(r: flockrev_core::Result<CheckReport>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())?;
    Ok(format!("{} trials, 0 failures, {} resampled", r.trials, r.resampled))
}

fn cfg(trials: usize) -> TrialConfig {
    TrialConfig::default().with_trials(trials).with_atoms(3)
}

fn explorer() -> Outcome {
    let far = explore_constructibility(&flock("{ p }\n{ p & q }"), 4, 2).map_err(|e| e.to_string())?;
    ensure(!far.found() && far.outside_vocabulary.is_none(), || far.to_string())?;
    let near = explore_constructibility(&flock("{ p }\n{ q }"), 2, 2).map_err(|e| e.to_string())?;
    let steps = near.witness.as_ref().ok_or_else(|| near.to_string())?;
    let replayed = near.replay().expect("witness present").map_err(|e| e.to_string())?;
    ensure(replayed.identical(&flock("{ p }\n{ q }")), || format!("witness replays to\n{replayed}"))?;
    Ok(format!(
        "{{{{p}},{{p&q}}}} unreachable among {} flocks; {{{{p}},{{q}}}} in {} moves",
        far.reached(),
        steps.len() - 1
    ))
}

fn logic_layer() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&common::formula(4, 5), |g| {
            let back = parse_formula(&g.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
            if back == g {
                Ok(())
            } else {
                Err(TestCaseError::fail(format!("{g} reparsed as {back:?}")))
            }
        })
        .map_err(|e| format!("round trip: {e}"))?;

    let strategy = (vec(common::formula(4, 3), 0..4), common::formula(4, 3), common::formula(4, 3));
    runner
        .run(&strategy, |(premises, middle, goal)| {
            let ent =
                |ps: &[Formula], g: &Formula| entails(ps, g).map_err(|e| TestCaseError::fail(e.to_string()));
            let fail =
                |what: &str| Err(TestCaseError::fail(format!("{what}: {premises:?} / {middle} / {goal}")));
            if ent(&premises, &goal)? != common::oracle_entails(&premises, &goal) {
                return fail("oracle disagreement");
            }
            if is_tautology(&goal).unwrap() != common::oracle_entails(&[], &goal) {
                return fail("tautology disagreement");
            }
            if premises.iter().any(|p| !ent(&premises, p).unwrap_or(false)) {
                return fail("reflexivity");
            }
            let mut more = premises.clone();
            more.push(middle.clone());
            if ent(&premises, &goal)? && !ent(&more, &goal)? {
                return fail("monotonicity");
            }
            if ent(&premises, &middle)? && ent(&more, &goal)? && !ent(&premises, &goal)? {
                return fail("cut");
            }
            Ok(())
        })
        .map_err(|e| format!("consequence: {e}"))?;
    Ok("1000 round trips; 1000 consequence samples agree with the oracle".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("niamey trace", 1, niamey),
        ("syntax sensitivity", 1, syntax_sensitivity),
        ("fukv contrast", 1, fukv_contrast),
        ("contraction lemma, 500 trials", 60, || report(check_lemma_contraction(&cfg(500)))),
        ("merge theorem, 200 trials", 60, || report(check_theorem_merge(&cfg(200)))),
        ("expansion, 200 trials", 60, || report(check_expansion(&cfg(200)))),
        ("commutativity, 300 trials", 60, || report(check_commutativity(&cfg(300)))),
        ("persistence, 300 trials", 30, || report(check_persistence(&cfg(300)))),
        ("constructibility explorer, depth 4", 120, explorer),
        ("logic layer", 30, logic_layer),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(budget);
        let (verdict, detail) = match (&outcome, within) {
            (Ok(detail), true) => ("PASS", detail.clone()),
            (Ok(detail), false) => ("FAIL", format!("over budget; {detail}")),
            (Err(why), _) => ("FAIL", why.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        let first_line = detail.lines().next().unwrap_or("");
        println!(
            "{verdict} criterion {:>2}: {name} [{:.2}s / {budget}s] {first_line}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if verdict == "FAIL" && detail.lines().count() > 1 {
            for line in detail.lines().skip(1) {
                println!("    {line}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
