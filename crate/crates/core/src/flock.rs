//! Bases, flocks of bases, and the change operations defined on them.
//!
//! A flock stands for the epistemic state whose admissible states are all
//! subsets of its bases, ordered by inclusion. Two flocks are identical when
//! they generate the same state, which happens exactly when they have the
//! same inclusion-maximal bases; every operation here that produces a flock
//! returns it in that normal form.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::logic::{freshen, is_tautology, Formula, Signature, TruthTable};

/// Largest base accepted by [`remainders`].
pub const BASE_CAP: usize = 16;

/// A finite set of formulas under structural identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(BTreeSet<Formula>);

impl Base {
    pub fn new() -> Self {
        Base(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.0.insert(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> + Clone {
        self.0.iter()
    }

    pub fn formulas(&self) -> &BTreeSet<Formula> {
        &self.0
    }

    pub fn is_subset(&self, other: &Base) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_strict_subset(&self, other: &Base) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &Base) -> Base {
        Base(self.0.union(&other.0).cloned().collect())
    }

    pub fn with(&self, f: Formula) -> Base {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    pub fn entails(&self, goal: &Formula) -> Result<bool> {
        crate::logic::entails(self.iter(), goal)
    }

    /// Members ordered by their rendered text.
    pub fn canonical(&self) -> Vec<&Formula> {
        let mut out: Vec<(String, &Formula)> = self.0.iter().map(|f| (f.to_string(), f)).collect();
        out.sort();
        out.into_iter().map(|(_, f)| f).collect()
    }

    /// Conjunction of the members in canonical order; `true` when empty.
    pub fn conjunction(&self) -> Formula {
        Formula::conjoin(self.canonical().into_iter().cloned())
    }
}

impl FromIterator<Formula> for Base {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Base(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Base {
    type Item = &'a Formula;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{ }");
        }
        f.write_str("{ ")?;
        for (i, g) in self.canonical().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(" }")
    }
}

/// A finite set of bases.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flock(BTreeSet<Base>);

/// Result of [`Flock::expand`]: the new flock and the formula actually added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub flock: Flock,
    pub used: Formula,
}

impl Flock {
    pub fn new() -> Self {
        Flock(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bases(&self) -> &BTreeSet<Base> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Base> {
        self.0.iter()
    }

    pub fn insert(&mut self, base: Base) -> bool {
        self.0.insert(base)
    }

    pub fn contains(&self, base: &Base) -> bool {
        self.0.contains(base)
    }

    /// Every formula that is a member of some base.
    pub fn formulas(&self) -> BTreeSet<&Formula> {
        self.0.iter().flat_map(Base::iter).collect()
    }

    pub fn occurs(&self, f: &Formula) -> bool {
        self.0.iter().any(|b| b.contains(f))
    }

    /// Bases ordered by their rendered text.
    pub fn canonical(&self) -> Vec<&Base> {
        let mut out: Vec<(String, &Base)> = self.0.iter().map(|b| (b.to_string(), b)).collect();
        out.sort();
        out.into_iter().map(|(_, b)| b).collect()
    }

    /// Keeps the inclusion-maximal bases.
    ///
    /// The empty base disappears as soon as any nonempty base is present; a
    /// flock consisting of the empty base alone is already normal.
    pub fn normalize(&self) -> Flock {
        let keep = self
            .0
            .iter()
            .filter(|b| !self.0.iter().any(|other| b.is_strict_subset(other)))
            .cloned()
            .collect();
        Flock(keep)
    }

    /// Whether both flocks generate the same epistemic state.
    pub fn identical(&self, other: &Flock) -> bool {
        self.normalize() == other.normalize()
    }

    /// The union of the remainders of every base, before normalization.
    pub fn remainder_flock(&self, f: &Formula) -> Result<Flock> {
        let mut out = Flock::new();
        for base in &self.0 {
            out.0.extend(remainders(base, f)?);
        }
        Ok(out)
    }

    fn check_contractible(&self, f: &Formula) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyFlock);
        }
        if is_tautology(f)? {
            return Err(Error::TautologyContraction(f.clone()));
        }
        Ok(())
    }

    /// Replaces every base by its maximal subsets that do not entail `f`.
    pub fn contract(&self, f: &Formula) -> Result<Flock> {
        self.check_contractible(f)?;
        Ok(self.remainder_flock(f)?.normalize())
    }

    /// Pairwise unions of bases from two flocks with no formula in common.
    pub fn merge(&self, other: &Flock) -> Result<Flock> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyFlock);
        }
        let mine = self.formulas();
        let shared: Vec<Formula> =
            other.formulas().into_iter().filter(|f| mine.contains(f)).cloned().collect();
        if !shared.is_empty() {
            return Err(Error::NotDisjoint(shared));
        }
        let mut out = Flock::new();
        for a in &self.0 {
            for b in &other.0 {
                out.insert(a.union(b));
            }
        }
        Ok(out.normalize())
    }

    /// Adds `f` to every base.
    ///
    /// `f` must not already occur in the flock. With `auto_freshen`, an
    /// occurring `f` is replaced by a double-negated variant that does not
    /// occur anywhere in the flock; [`Expansion::used`] records the formula
    /// that was actually added.
    pub fn expand(&self, f: &Formula, auto_freshen: bool) -> Result<Expansion> {
        if self.is_empty() {
            return Err(Error::EmptyFlock);
        }
        let used = if !self.occurs(f) {
            f.clone()
        } else if auto_freshen {
            freshen(f, self.formulas())
        } else {
            return Err(Error::OccursInFlock(f.clone()));
        };
        let flock = Flock(self.0.iter().map(|b| b.with(used.clone())).collect()).normalize();
        Ok(Expansion { flock, used })
    }

    /// Contraction by `~f` followed by freshening expansion by `f`.
    pub fn revise(&self, f: &Formula) -> Result<Flock> {
        let contracted = self.contract(&Formula::negation(f.clone()))?;
        Ok(contracted.expand(f, true)?.flock)
    }

    /// Whether `f` follows from every inclusion-maximal base.
    pub fn believed(&self, f: &Formula) -> Result<bool> {
        let normal = self.normalize();
        if normal.is_empty() {
            return Err(Error::EmptyFlock);
        }
        for base in &normal.0 {
            if !base.entails(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A single formula whose consequences are exactly the beliefs: the
    /// disjunction over the maximal bases of their conjunctions. A flock with
    /// no bases yields `true`.
    pub fn belief_formula(&self) -> Formula {
        let normal = self.normalize();
        if normal.is_empty() {
            return Formula::Verum;
        }
        Formula::disjoin(normal.canonical().into_iter().map(Base::conjunction))
    }

    /// Keeps the inclusion-minimal bases, the reduction used by the rival
    /// deletion semantics.
    pub fn fukv_normalize(&self) -> Flock {
        let keep = self
            .0
            .iter()
            .filter(|b| !self.0.iter().any(|other| other.is_strict_subset(b)))
            .cloned()
            .collect();
        Flock(keep)
    }

    /// Deletion under the minimal-set semantics: same remainders as
    /// [`Flock::contract`], reduced to the minimal ones.
    pub fn fukv_delete(&self, f: &Formula) -> Result<Flock> {
        self.check_contractible(f)?;
        Ok(self.remainder_flock(f)?.fukv_normalize())
    }
}

impl FromIterator<Base> for Flock {
    fn from_iter<I: IntoIterator<Item = Base>>(iter: I) -> Self {
        Flock(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Flock {
    type Item = &'a Base;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Base>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// One base per line in canonical order.
impl fmt::Display for Flock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for base in self.canonical() {
            writeln!(f, "{base}")?;
        }
        Ok(())
    }
}

/// All inclusion-maximal subsets of `base` that do not entail `f`.
///
/// Subsets are visited from largest to smallest; a subset contained in an
/// earlier remainder cannot be maximal and is skipped, and by monotonicity
/// the first non-entailing subset outside all earlier remainders is maximal.
/// A tautology has no remainders.
pub fn remainders(base: &Base, f: &Formula) -> Result<BTreeSet<Base>> {
    let n = base.len();
    if n > BASE_CAP {
        return Err(Error::BaseTooLarge { size: n, cap: BASE_CAP });
    }
    let members: Vec<&Formula> = base.iter().collect();
    let sig = Signature::of(members.iter().copied()).union(&Signature::of([f]));
    let goal = TruthTable::of(f, &sig)?;
    let tables = members.iter().map(|m| TruthTable::of(m, &sig)).collect::<Result<Vec<_>>>()?;

    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| core::cmp::Reverse(m.count_ones()));

    let mut found: Vec<u32> = Vec::new();
    for mask in masks {
        if found.iter().any(|r| mask & !r == 0) {
            continue;
        }
        let mut models = TruthTable::constant(sig.len(), true);
        for (i, t) in tables.iter().enumerate() {
            if mask >> i & 1 == 1 {
                models = models.and(t);
            }
        }
        if !models.entails(&goal) {
            found.push(mask);
        }
    }

    Ok(found
        .into_iter()
        .map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, m)| (*m).clone())
                .collect()
        })
        .collect())
}
