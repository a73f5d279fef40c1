use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::EpistemicState;
use crate::error::{Error, Result};
use crate::logic::Signature;

/// Joint signature size accepted by [`EpistemicState::behaviorally_equivalent`].
pub const BEHAVIOR_ATOM_CAP: usize = 3;

struct Tracker<'a> {
    state: &'a EpistemicState,
    tables: Vec<u64>,
}

impl Tracker<'_> {
    // Belief table of the live sub-state, or None when no state survives.
    fn belief(&self, live: &[bool]) -> Option<u64> {
        let mut any = false;
        let mut models = 0u64;
        for s in (0..live.len()).filter(|&s| live[s]) {
            any = true;
            if self.state.above[s].iter().all(|&t| !live[t]) {
                models |= self.tables[s];
            }
        }
        any.then_some(models)
    }

    fn contract(&self, live: &[bool], goal: u64) -> Vec<bool> {
        live.iter().zip(&self.tables).map(|(&alive, &t)| alive && t & !goal != 0).collect()
    }
}

impl EpistemicState {
    /// Bounded check that no sequence of at most `depth` contractions can
    /// tell the two states apart by their beliefs.
    ///
    /// Contractions range over every non-tautological boolean function of
    /// the joint signature (at most three atoms). This approximates
    /// equivalence of epistemic states from below and is never used by the
    /// change operations themselves.
    pub fn behaviorally_equivalent(&self, other: &EpistemicState, depth: usize) -> Result<bool> {
        let own_sig = Signature::of(self.labels.iter().flat_map(|b| b.iter()));
        let other_sig = Signature::of(other.labels.iter().flat_map(|b| b.iter()));
        let joint = own_sig.union(&other_sig);
        if joint.len() > BEHAVIOR_ATOM_CAP {
            return Err(Error::SignatureTooLarge { atoms: joint.len(), cap: BEHAVIOR_ATOM_CAP });
        }
        let small = |(_, ts): (Signature, Vec<crate::logic::TruthTable>)| -> Vec<u64> {
            ts.iter().map(|t| t.as_small().expect("at most three atoms")).collect()
        };
        let left = Tracker { state: self, tables: small(self.label_tables(&other_sig)?) };
        let right = Tracker { state: other, tables: small(other.label_tables(&own_sig)?) };

        let full: u64 = (1u64 << (1u32 << joint.len())) - 1;
        let goals: Vec<u64> = (0..full).collect();
        let mut seen = BTreeMap::new();
        Ok(agree(
            &left,
            &right,
            alloc::vec![true; self.len()],
            alloc::vec![true; other.len()],
            depth,
            &goals,
            &mut seen,
        ))
    }
}

type Seen = BTreeMap<(Vec<bool>, Vec<bool>), usize>;

fn agree(
    left: &Tracker<'_>,
    right: &Tracker<'_>,
    l: Vec<bool>,
    r: Vec<bool>,
    budget: usize,
    goals: &[u64],
    seen: &mut Seen,
) -> bool {
    if left.belief(&l) != right.belief(&r) {
        return false;
    }
    if budget == 0 {
        return true;
    }
    let key = (l, r);
    if seen.get(&key).is_some_and(|&b| b >= budget) {
        return true;
    }
    seen.insert(key.clone(), budget);
    let (l, r) = key;
    goals.iter().all(|&g| {
        let (nl, nr) = (left.contract(&l, g), right.contract(&r, g));
        if nl == l && nr == r {
            return true;
        }
        agree(left, right, nl, nr, budget - 1, goals, seen)
    })
}
