use alloc::format;
use alloc::string::String;

use rand_chacha::ChaCha8Rng;

use super::gen::{random_flock_over, random_formula, random_persistent_state, trial_rng};
use super::{atom_names, CheckReport, Failure, TrialConfig};
use crate::error::{Error, Result};
use crate::estate::EpistemicState;
use crate::flock::Flock;
use crate::logic::{equivalent, is_tautology, Formula};

pub const CHECK_NAMES: [&str; 5] =
    ["lemma-contraction", "theorem-merge", "expansion", "commutativity", "persistence"];

const MAX_ATTEMPTS: usize = 256;

enum Outcome {
    Pass,
    Resample,
    Fail(String),
}

fn run_trials<F>(name: &str, cfg: &TrialConfig, mut trial: F) -> Result<CheckReport>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Outcome>,
{
    cfg.validate()?;
    let mut report = CheckReport::new(name);
    for index in 0..cfg.trials {
        let mut rng = trial_rng(cfg, index);
        let mut settled = false;
        for _ in 0..MAX_ATTEMPTS {
            match trial(&mut rng) {
                Ok(Outcome::Pass) => settled = true,
                Ok(Outcome::Fail(counterexample)) => {
                    report.failures.push(Failure { trial: index, counterexample });
                    settled = true;
                }
                Ok(Outcome::Resample)
                | Err(Error::TooLarge { .. })
                | Err(Error::BaseTooLarge { .. })
                | Err(Error::TautologyContraction(_))
                | Err(Error::NotDisjoint(_))
                | Err(Error::OccursInFlock(_)) => report.resampled += 1,
                Err(e) => {
                    report.failures.push(Failure { trial: index, counterexample: format!("# error: {e}\n") });
                    settled = true;
                }
            }
            if settled {
                break;
            }
        }
        if !settled {
            let counterexample = format!("# no admissible sample in {MAX_ATTEMPTS} attempts\n");
            report.failures.push(Failure { trial: index, counterexample });
        }
        report.trials += 1;
    }
    Ok(report)
}

fn verdict(ok: bool, counterexample: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(counterexample())
    }
}

fn non_tautology(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Option<Formula>> {
    let f = random_formula(rng, atom_names(cfg.atoms), cfg.max_formula_depth);
    Ok((!is_tautology(&f)?).then_some(f))
}

fn absent_from(rng: &mut ChaCha8Rng, cfg: &TrialConfig, flock: &Flock) -> Option<Formula> {
    let f = random_formula(rng, atom_names(cfg.atoms), cfg.max_formula_depth);
    (!flock.occurs(&f)).then_some(f)
}

/// Contracting the generated state equals generating from the flock of
/// remainders, state for state, label for label and pair for pair; the
/// normalized flock contraction generates the same state.
pub fn lemma_contraction_holds(flock: &Flock, f: &Formula) -> Result<bool> {
    let contracted_state = EpistemicState::generate(flock)?.contract(f)?;
    let view = contracted_state.label_view();
    let raw = EpistemicState::generate(&flock.remainder_flock(f)?)?;
    let normal = EpistemicState::generate(&flock.contract(f)?)?;
    Ok(view == raw.label_view() && view == normal.label_view())
}

/// The pure merge of the generated states is isomorphic to the state of
/// the merged flock.
pub fn merge_matches_oracle(left: &Flock, right: &Flock) -> Result<bool> {
    let merged = left.merge(right)?;
    let product = EpistemicState::generate(left)?.pure_merge(&EpistemicState::generate(right)?)?;
    product.isomorphic(&EpistemicState::generate(&merged)?)
}

/// For `f` not occurring in the flock: the pure expansion of the generated
/// state is isomorphic to the state of the expanded flock, and both belief
/// sets are those of the old belief formula conjoined with `f`.
pub fn expansion_matches_oracle(flock: &Flock, f: &Formula) -> Result<bool> {
    let expanded = flock.expand(f, false)?.flock;
    let state = EpistemicState::generate(flock)?.expand(f)?;
    if !state.isomorphic(&EpistemicState::generate(&expanded)?)? {
        return Ok(false);
    }
    let expected = Formula::conjunction(flock.belief_formula(), f.clone());
    Ok(equivalent(&expanded.belief_formula(), &expected)?
        && equivalent(&state.belief_summary()?.belief_formula, &expected)?)
}

pub fn contraction_commutes(flock: &Flock, f: &Formula, g: &Formula) -> Result<bool> {
    let fg = flock.contract(f)?.contract(g)?;
    let gf = flock.contract(g)?.contract(f)?;
    Ok(fg.identical(&gf))
}

pub fn expansion_commutes(flock: &Flock, f: &Formula, g: &Formula) -> Result<bool> {
    let fg = flock.expand(f, false)?.flock.expand(g, false)?.flock;
    let gf = flock.expand(g, false)?.flock.expand(f, false)?.flock;
    Ok(fg.identical(&gf))
}

/// The two deletion orders on `{{A, B}}` under the minimal-set semantics:
/// `A & B` then `A`, and `A` then `A & B`.
pub fn fukv_order_witness() -> Result<(Flock, Flock)> {
    let (a, b) = (Formula::atom("A"), Formula::atom("B"));
    let ab = Formula::conjunction(a.clone(), b.clone());
    let start: Flock = [[a.clone(), b].into_iter().collect()].into_iter().collect();
    let first = start.fukv_delete(&ab)?.fukv_delete(&a)?;
    let second = start.fukv_delete(&a)?.fukv_delete(&ab)?;
    Ok((first, second))
}

fn flock_and(flock: &Flock, extra: &[(&str, &Formula)]) -> String {
    let mut out = format!("{flock}");
    for (what, f) in extra {
        out.push_str(&format!("# {what}: {f}\n"));
    }
    out
}

pub fn check_lemma_contraction(cfg: &TrialConfig) -> Result<CheckReport> {
    run_trials("lemma-contraction", cfg, |rng| {
        let flock = random_flock_over(rng, cfg, atom_names(cfg.atoms));
        let Some(f) = non_tautology(rng, cfg)? else { return Ok(Outcome::Resample) };
        let ok = lemma_contraction_holds(&flock, &f)?;
        Ok(verdict(ok, || flock_and(&flock, &[("contract", &f)])))
    })
}

pub fn check_theorem_merge(cfg: &TrialConfig) -> Result<CheckReport> {
    if cfg.atoms < 2 {
        return Err(Error::Guard(format!("merge trials need at least 2 atoms, got {}", cfg.atoms)));
    }
    let names = atom_names(cfg.atoms);
    let (left_atoms, right_atoms) = names.split_at(cfg.atoms.div_ceil(2));
    run_trials("theorem-merge", cfg, |rng| {
        let left = random_flock_over(rng, cfg, left_atoms);
        let right = random_flock_over(rng, cfg, right_atoms);
        let ok = merge_matches_oracle(&left, &right)?;
        Ok(verdict(ok, || format!("{left}# merged with\n{right}")))
    })
}

pub fn check_expansion(cfg: &TrialConfig) -> Result<CheckReport> {
    run_trials("expansion", cfg, |rng| {
        let flock = random_flock_over(rng, cfg, atom_names(cfg.atoms));
        let Some(f) = absent_from(rng, cfg, &flock) else { return Ok(Outcome::Resample) };
        let ok = expansion_matches_oracle(&flock, &f)?;
        Ok(verdict(ok, || flock_and(&flock, &[("expand", &f)])))
    })
}

pub fn check_commutativity(cfg: &TrialConfig) -> Result<CheckReport> {
    let mut report = run_trials("commutativity", cfg, |rng| {
        let flock = random_flock_over(rng, cfg, atom_names(cfg.atoms));
        let Some(f) = non_tautology(rng, cfg)? else { return Ok(Outcome::Resample) };
        let Some(g) = non_tautology(rng, cfg)? else { return Ok(Outcome::Resample) };
        if !contraction_commutes(&flock, &f, &g)? {
            return Ok(Outcome::Fail(flock_and(&flock, &[("contract", &f), ("contract", &g)])));
        }
        let Some(x) = absent_from(rng, cfg, &flock) else { return Ok(Outcome::Resample) };
        let Some(y) = absent_from(rng, cfg, &flock) else { return Ok(Outcome::Resample) };
        if x == y {
            return Ok(Outcome::Resample);
        }
        let ok = expansion_commutes(&flock, &x, &y)?;
        Ok(verdict(ok, || flock_and(&flock, &[("expand", &x), ("expand", &y)])))
    })?;
    // The minimal-set semantics must stay order-sensitive on {{A, B}}.
    let (first, second) = fukv_order_witness()?;
    if first.identical(&second) {
        let counterexample = format!("# minimal-set deletion orders agree\n{first}# vs\n{second}");
        report.failures.push(Failure { trial: cfg.trials, counterexample });
    }
    Ok(report)
}

pub fn check_persistence(cfg: &TrialConfig) -> Result<CheckReport> {
    let names = atom_names(cfg.atoms);
    let mut report = run_trials("persistence", cfg, |rng| {
        let flock = random_flock_over(rng, cfg, names);
        let generated = EpistemicState::generate(&flock)?;
        if !generated.is_persistent()? {
            return Ok(Outcome::Fail(flock_and(&flock, &[])));
        }
        let left = random_persistent_state(rng, cfg, names);
        let right = random_persistent_state(rng, cfg, names);
        let ok = left.is_persistent()? && right.is_persistent()?;
        let merged = left.pure_merge(&right)?;
        let ok = ok && merged.is_persistent()?;
        Ok(verdict(ok, || format!("# left\n{left}# right\n{right}")))
    })?;
    // Negative control: the checker must notice a violation.
    let a: crate::flock::Base = [Formula::atom("A")].into_iter().collect();
    let b: crate::flock::Base = [Formula::atom("B")].into_iter().collect();
    let broken = EpistemicState::new(alloc::vec![a, b], [(0, 1)])?;
    if broken.is_persistent()? {
        let counterexample = format!("# non-persistent control accepted\n{broken}");
        report.failures.push(Failure { trial: cfg.trials, counterexample });
    }
    Ok(report)
}

/// Runs the check registered under `name`.
pub fn run_check(name: &str, cfg: &TrialConfig) -> Result<CheckReport> {
    match name {
        "lemma-contraction" => check_lemma_contraction(cfg),
        "theorem-merge" => check_theorem_merge(cfg),
        "expansion" => check_expansion(cfg),
        "commutativity" => check_commutativity(cfg),
        "persistence" => check_persistence(cfg),
        other => Err(Error::Guard(format!("unknown check `{other}` (known: {})", CHECK_NAMES.join(", ")))),
    }
}
