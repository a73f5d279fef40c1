//! Explicit finite epistemic states.
//!
//! A state is a list of admissible states, each labelled by a finite set of
//! generators standing for their deductive closure, together with a strict
//! preference order: `s ≺ t` means `t` is preferred to `s`. All label
//! comparisons go through classical entailment.
//!
//! The flock-generated state contains every subset of every base, the
//! empty subset included (its label is the closure of nothing, i.e. the
//! tautologies), ordered by strict inclusion.

mod behavior;
pub use behavior::BEHAVIOR_ATOM_CAP;
mod iso;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::flock::{Base, Flock};
use crate::logic::{is_tautology, Formula, Signature, TruthTable};

/// Largest number of admissible states any construction may produce.
pub const STATE_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicState {
    labels: Vec<Base>,
    // above[s] = every t with s ≺ t, sorted
    above: Vec<Vec<usize>>,
}

/// The maximally preferred states and the belief set they determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefSummary {
    pub maximal_states: Vec<usize>,
    pub belief_formula: Formula,
}

fn too_large(states: usize) -> Error {
    Error::TooLarge { states, cap: STATE_CAP }
}

impl EpistemicState {
    /// Builds a state from labels and `(s, t)` pairs meaning `s ≺ t`.
    ///
    /// The pairs must form a strict partial order: irreflexive and
    /// transitive.
    pub fn new<I>(labels: Vec<Base>, prefer: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if n > STATE_CAP {
            return Err(too_large(n));
        }
        let mut above = vec![BTreeSet::new(); n];
        for (s, t) in prefer {
            if s >= n || t >= n {
                return Err(Error::InvalidOrder(format!("pair ({s}, {t}) names a missing state")));
            }
            if s == t {
                return Err(Error::InvalidOrder(format!("state {s} is preferred to itself")));
            }
            above[s].insert(t);
        }
        for s in 0..n {
            for &t in &above[s] {
                if let Some(u) = above[t].iter().find(|u| !above[s].contains(u)) {
                    return Err(Error::InvalidOrder(format!("{s} ≺ {t} and {t} ≺ {u} but not {s} ≺ {u}")));
                }
            }
        }
        let above = above.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(EpistemicState { labels, above })
    }

    /// The state generated by a flock: all subsets of its bases under strict
    /// inclusion, listed by size and then by rendered text.
    pub fn generate(flock: &Flock) -> Result<Self> {
        if flock.is_empty() {
            return Err(Error::EmptyFlock);
        }
        let mut budget = 0usize;
        for base in flock {
            if base.len() >= 17 {
                return Err(too_large(usize::MAX));
            }
            budget = budget.saturating_add(1 << base.len());
        }
        if budget > STATE_CAP {
            return Err(too_large(budget));
        }

        let mut downset = BTreeSet::new();
        for base in flock {
            let members: Vec<&Formula> = base.iter().collect();
            for mask in 0u32..1 << members.len() {
                downset.insert(subset(&members, mask));
            }
        }
        let mut keyed: Vec<(usize, String, Base)> =
            downset.into_iter().map(|b| (b.len(), b.to_string(), b)).collect();
        keyed.sort();
        let labels: Vec<Base> = keyed.into_iter().map(|(_, _, b)| b).collect();

        let index: BTreeMap<&Base, usize> = labels.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut above = vec![Vec::new(); labels.len()];
        for (t, label) in labels.iter().enumerate() {
            let members: Vec<&Formula> = label.iter().collect();
            let full = (1u32 << members.len()) - 1;
            for mask in 0..full {
                above[index[&subset(&members, mask)]].push(t);
            }
        }
        for a in &mut above {
            a.sort_unstable();
        }
        Ok(EpistemicState { labels, above })
    }

    /// The two-state epistemic state of a single proposition: nothing, below
    /// `f` alone.
    pub fn rudiment(f: &Formula) -> Self {
        let labels = vec![Base::new(), [f.clone()].into_iter().collect()];
        EpistemicState { labels, above: vec![vec![1], vec![]] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Base] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &Base {
        &self.labels[s]
    }

    /// States strictly preferred to `s`.
    pub fn above(&self, s: usize) -> &[usize] {
        &self.above[s]
    }

    /// `s ≺ t`.
    pub fn prefers(&self, s: usize, t: usize) -> bool {
        self.above[s].binary_search(&t).is_ok()
    }

    /// `s ⪯ t`, the reflexive closure of the preference.
    pub fn weakly_prefers(&self, s: usize, t: usize) -> bool {
        s == t || self.prefers(s, t)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.above.iter().enumerate().flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
    }

    pub fn maximal_states(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.above[s].is_empty()).collect()
    }

    /// Labels and preference pairs keyed by label instead of position.
    ///
    /// Only meaningful when labels are distinct, as in flock-generated
    /// states.
    pub fn label_view(&self) -> (BTreeSet<Base>, BTreeSet<(Base, Base)>) {
        let states = self.labels.iter().cloned().collect();
        let pairs = self.pairs().map(|(s, t)| (self.labels[s].clone(), self.labels[t].clone())).collect();
        (states, pairs)
    }

    /// One conjunction table per state over the joint signature of all
    /// labels (plus `extra`).
    pub(crate) fn label_tables(&self, extra: &Signature) -> Result<(Signature, Vec<TruthTable>)> {
        let sig = Signature::of(self.labels.iter().flat_map(Base::iter)).union(extra);
        sig.check_cap()?;
        let tables = self
            .labels
            .iter()
            .map(|label| {
                let mut t = TruthTable::constant(sig.len(), true);
                for g in label {
                    t = t.and(&TruthTable::of(g, &sig)?);
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((sig, tables))
    }

    pub fn belief_summary(&self) -> Result<BeliefSummary> {
        if self.is_empty() {
            return Err(Error::EmptyState);
        }
        let maximal_states = self.maximal_states();
        let mut keyed: Vec<(String, usize)> =
            maximal_states.iter().map(|&s| (self.labels[s].to_string(), s)).collect();
        keyed.sort();
        let belief_formula = Formula::disjoin(keyed.into_iter().map(|(_, s)| self.labels[s].conjunction()));
        Ok(BeliefSummary { maximal_states, belief_formula })
    }

    /// Whether `f` holds in every maximally preferred state.
    pub fn believes(&self, f: &Formula) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyState);
        }
        for s in self.maximal_states() {
            if !self.labels[s].entails(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `s ≺ t` implies that the closure of `l(s)` is contained in that of
    /// `l(t)`.
    pub fn is_persistent(&self) -> Result<bool> {
        let (_, tables) = self.label_tables(&Signature::default())?;
        Ok(self.pairs().all(|(s, t)| tables[t].entails(&tables[s])))
    }

    /// `s ⪯ t` holds exactly when the closure of `l(s)` is contained in that
    /// of `l(t)`.
    pub fn is_pure(&self) -> Result<bool> {
        let (_, tables) = self.label_tables(&Signature::default())?;
        for s in 0..self.len() {
            for t in 0..self.len() {
                if self.weakly_prefers(s, t) != tables[t].entails(&tables[s]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exactly one maximally preferred state.
    pub fn is_determinate(&self) -> bool {
        self.maximal_states().len() == 1
    }

    /// Keeps the states whose label does not entail `f`.
    pub fn contract(&self, f: &Formula) -> Result<Self> {
        if is_tautology(f)? {
            return Err(Error::TautologyContraction(f.clone()));
        }
        let mut keep = Vec::with_capacity(self.len());
        for label in &self.labels {
            keep.push(!label.entails(f)?);
        }
        Ok(self.restrict(&keep))
    }

    pub(crate) fn restrict(&self, keep: &[bool]) -> Self {
        let mut renumber = vec![usize::MAX; self.len()];
        let mut labels = Vec::new();
        for (s, _) in keep.iter().enumerate().filter(|(_, k)| **k) {
            renumber[s] = labels.len();
            labels.push(self.labels[s].clone());
        }
        let above = (0..self.len())
            .filter(|&s| keep[s])
            .map(|s| self.above[s].iter().filter(|&&t| keep[t]).map(|&t| renumber[t]).collect())
            .collect();
        EpistemicState { labels, above }
    }

    /// Product of two states with equal weight: pairs of states, labels
    /// united, and `(s1, s2) ⪯ (t1, t2)` iff `s1 ⪯ t1` and `s2 ⪯ t2`.
    ///
    /// Pair `(i, j)` becomes state `i * other.len() + j`.
    pub fn pure_merge(&self, other: &EpistemicState) -> Result<Self> {
        let (n1, n2) = (self.len(), other.len());
        let total = n1.saturating_mul(n2);
        if total > STATE_CAP {
            return Err(too_large(total));
        }
        let mut labels = Vec::with_capacity(total);
        let mut above = Vec::with_capacity(total);
        for i in 0..n1 {
            for j in 0..n2 {
                labels.push(self.labels[i].union(&other.labels[j]));
                let ups1 = core::iter::once(i).chain(self.above[i].iter().copied());
                let mut ups: Vec<usize> = ups1
                    .flat_map(|k| {
                        core::iter::once(j).chain(other.above[j].iter().copied()).map(move |l| k * n2 + l)
                    })
                    .filter(|&u| u != i * n2 + j)
                    .collect();
                ups.sort_unstable();
                above.push(ups);
            }
        }
        Ok(EpistemicState { labels, above })
    }

    /// Pure merge with the rudimentary state of `f`.
    pub fn expand(&self, f: &Formula) -> Result<Self> {
        self.pure_merge(&EpistemicState::rudiment(f))
    }

    /// Text dump, one line per state: `id : {generators} ; above: [ids]`.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EpistemicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, label) in self.labels.iter().enumerate() {
            write!(f, "{s} : {label} ; above: [")?;
            for (i, t) in self.above[s].iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

fn subset(members: &[&Formula], mask: u32) -> Base {
    members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| (*f).clone()).collect()
}
