//! Classical consequence decided by truth tables.
//!
//! A [`TruthTable`] stores one bit per valuation of a [`Signature`], packed
//! 64 valuations to a word, so conjunction and entailment checks are word-wise
//! bit operations.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::logic::Formula;

/// Largest joint signature accepted by the consequence relation.
pub const ATOM_CAP: usize = 20;

/// Ordered, duplicate-free set of atom names.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(Vec<String>);

impl Signature {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        Signature(set.into_iter().collect())
    }

    pub fn of<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> Self {
        let mut names = BTreeSet::new();
        for f in fs {
            f.collect_atoms(&mut names);
        }
        Signature(names.into_iter().map(String::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    /// Fails with [`Error::SignatureTooLarge`] above [`ATOM_CAP`].
    pub fn check_cap(&self) -> Result<()> {
        if self.len() > ATOM_CAP {
            return Err(Error::SignatureTooLarge { atoms: self.len(), cap: ATOM_CAP });
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// Atom sets of all formulas in `fs`, sorted.
pub fn signature<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> Signature {
    Signature::of(fs)
}

// Bit j of a word is valuation j; atom i is true in valuation j iff bit i
// of j is set.
const LOW_ATOMS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// The set of models of a formula over a fixed signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruthTable {
    atoms: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn word_count(atoms: usize) -> usize {
        if atoms <= 6 {
            1
        } else {
            1 << (atoms - 6)
        }
    }

    fn last_mask(atoms: usize) -> u64 {
        if atoms >= 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << atoms)) - 1
        }
    }

    pub fn constant(atoms: usize, value: bool) -> Self {
        let fill = if value { Self::last_mask(atoms) } else { 0 };
        TruthTable { atoms, words: vec![fill; Self::word_count(atoms)] }
    }

    fn atom(atoms: usize, index: usize) -> Self {
        let mask = Self::last_mask(atoms);
        let words = (0..Self::word_count(atoms))
            .map(|w| {
                if index < 6 {
                    LOW_ATOMS[index] & mask
                } else if (w >> (index - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect();
        TruthTable { atoms, words }
    }

    /// Models of `f` over `sig`. Every atom of `f` must occur in `sig`.
    pub fn of(f: &Formula, sig: &Signature) -> Result<Self> {
        sig.check_cap()?;
        Ok(Self::eval(f, sig))
    }

    fn eval(f: &Formula, sig: &Signature) -> Self {
        let n = sig.len();
        match f {
            Formula::Atom(name) => {
                let index = sig.index_of(name).expect("formula atom missing from evaluation signature");
                Self::atom(n, index)
            }
            Formula::Verum => Self::constant(n, true),
            Formula::Falsum => Self::constant(n, false),
            Formula::Not(c) => Self::eval(c, sig).complement(),
            Formula::And(l, r) => Self::eval(l, sig).zip(&Self::eval(r, sig), |a, b| a & b),
            Formula::Or(l, r) => Self::eval(l, sig).zip(&Self::eval(r, sig), |a, b| a | b),
            Formula::Implies(l, r) => Self::eval(l, sig).zip(&Self::eval(r, sig), |a, b| !a | b),
            Formula::Iff(l, r) => Self::eval(l, sig).zip(&Self::eval(r, sig), |a, b| !(a ^ b)),
        }
    }

    fn zip(mut self, other: &TruthTable, op: impl Fn(u64, u64) -> u64) -> Self {
        let mask = Self::last_mask(self.atoms);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a = op(*a, *b) & mask;
        }
        self
    }

    pub fn complement(mut self) -> Self {
        let mask = Self::last_mask(self.atoms);
        for w in &mut self.words {
            *w = !*w & mask;
        }
        self
    }

    pub fn and(self, other: &TruthTable) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(self, other: &TruthTable) -> Self {
        self.zip(other, |a, b| a | b)
    }

    /// Every model of `self` is a model of `other`.
    pub fn entails(&self, other: &TruthTable) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_valid(&self) -> bool {
        *self == Self::constant(self.atoms, true)
    }

    pub fn is_unsatisfiable(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    /// Truth value in valuation `index` (bit `i` of `index` is atom `i`).
    pub fn get(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    /// The table as one integer when the signature has at most six atoms.
    pub fn as_small(&self) -> Option<u64> {
        (self.atoms <= 6).then(|| self.words[0])
    }
}

/// True iff every valuation of the joint signature that satisfies all of
/// `premises` also satisfies `goal`.
pub fn entails<'a, I>(premises: I, goal: &Formula) -> Result<bool>
where
    I: IntoIterator<Item = &'a Formula>,
    I::IntoIter: Clone,
{
    let premises = premises.into_iter();
    let sig = Signature::of(premises.clone()).union(&Signature::of([goal]));
    sig.check_cap()?;
    let mut models = TruthTable::constant(sig.len(), true);
    for p in premises {
        models = models.and(&TruthTable::eval(p, &sig));
    }
    Ok(models.entails(&TruthTable::eval(goal, &sig)))
}

pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    let sig = Signature::of([f, g]);
    sig.check_cap()?;
    Ok(TruthTable::eval(f, &sig) == TruthTable::eval(g, &sig))
}

pub fn is_tautology(f: &Formula) -> Result<bool> {
    entails(core::iter::empty(), f)
}

pub fn is_satisfiable(f: &Formula) -> Result<bool> {
    Ok(!entails([f], &Formula::Falsum)?)
}

/// First of `~~f`, `~~~~f`, ... that is neither a member of `forbidden` nor a
/// subformula of one.
pub fn freshen<'a, I: IntoIterator<Item = &'a Formula>>(f: &Formula, forbidden: I) -> Formula {
    let mut taken = BTreeSet::new();
    for g in forbidden {
        g.collect_subformulas(&mut taken);
    }
    let mut candidate = Formula::negation(Formula::negation(f.clone()));
    while taken.contains(&candidate) {
        candidate = Formula::negation(Formula::negation(candidate));
    }
    candidate
}
