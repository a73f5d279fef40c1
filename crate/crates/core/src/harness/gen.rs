use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TrialConfig;
use crate::estate::EpistemicState;
use crate::flock::{Base, Flock};
use crate::logic::Formula;

const ATOMS: [&str; 4] = ["A", "B", "C", "D"];

/// The first `n` harness atom names.
pub fn atom_names(n: usize) -> &'static [&'static str] {
    &ATOMS[..n.min(ATOMS.len())]
}

pub(crate) fn trial_rng(cfg: &TrialConfig, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    rng
}

/// Random formula over `atoms` of depth at most `depth`; leaves are
/// occasionally constants.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        if rng.gen_ratio(1, 16) {
            return if rng.gen_bool(0.5) { Formula::Verum } else { Formula::Falsum };
        }
        return Formula::atom(*atoms.choose(rng).expect("at least one atom"));
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..8) {
        0 | 1 => Formula::negation(sub(rng)),
        2 | 3 => Formula::conjunction(sub(rng), sub(rng)),
        4 | 5 => Formula::disjunction(sub(rng), sub(rng)),
        6 => Formula::implication(sub(rng), sub(rng)),
        _ => Formula::equivalence(sub(rng), sub(rng)),
    }
}

pub(crate) fn random_flock_over<R: Rng + ?Sized>(rng: &mut R, cfg: &TrialConfig, atoms: &[&str]) -> Flock {
    let bases = rng.gen_range(1..=cfg.max_bases);
    (0..bases)
        .map(|_| {
            let size = rng.gen_range(1..=cfg.max_base_size);
            (0..size).map(|_| random_formula(rng, atoms, cfg.max_formula_depth)).collect::<Base>()
        })
        .collect()
}

/// Deterministic random flock for trial `index`: at most `max_bases`
/// nonempty bases of at most `max_base_size` formulas over the first
/// `atoms` atom names.
pub fn random_flock(cfg: &TrialConfig, index: usize) -> Flock {
    random_flock_over(&mut trial_rng(cfg, index), cfg, atom_names(cfg.atoms))
}

/// Random persistent epistemic state that need not come from a flock.
///
/// States are numbered in a topological order of a random strict order;
/// each label carries its own random generators plus, for every state
/// below it, that state's generators or a strengthening `c & x` of them.
pub fn random_persistent_state<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &TrialConfig,
    atoms: &[&str],
) -> EpistemicState {
    let n = rng.gen_range(1..=4usize);
    let mut below: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); n];
    for t in 0..n {
        for s in 0..t {
            if rng.gen_bool(0.4) {
                below[t].insert(s);
                let inherited: Vec<usize> = below[s].iter().copied().collect();
                below[t].extend(inherited);
            }
        }
    }
    let mut labels: Vec<Base> = Vec::with_capacity(n);
    for below_t in &below {
        let own = rng.gen_range(0..=2usize);
        let mut label: Base = (0..own).map(|_| random_formula(rng, atoms, cfg.max_formula_depth)).collect();
        for &s in below_t {
            for c in labels[s].iter() {
                let inherited = if rng.gen_bool(0.3) {
                    Formula::conjunction(c.clone(), random_formula(rng, atoms, 1))
                } else {
                    c.clone()
                };
                label.insert(inherited);
            }
        }
        labels.push(label);
    }
    let pairs: Vec<(usize, usize)> =
        below.iter().enumerate().flat_map(|(t, ss)| ss.iter().map(move |&s| (s, t))).collect();
    EpistemicState::new(labels, pairs).expect("closed under transitivity by construction")
}
