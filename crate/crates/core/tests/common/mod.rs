//! Independent reference semantics and generators shared by the property
//! tests. The oracle evaluates formulas directly under explicit valuations
//! and shares no code with the crate's truth-table engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use flockrev_core::Formula;
use proptest::prelude::*;

pub const ATOMS: [&str; 4] = ["A", "B", "C", "D"];

pub type Valuation = BTreeMap<String, bool>;

pub fn eval(f: &Formula, v: &Valuation) -> bool {
    match f {
        Formula::Atom(a) => v[a],
        Formula::Verum => true,
        Formula::Falsum => false,
        Formula::Not(g) => !eval(g, v),
        Formula::And(l, r) => eval(l, v) && eval(r, v),
        Formula::Or(l, r) => eval(l, v) || eval(r, v),
        Formula::Implies(l, r) => !eval(l, v) || eval(r, v),
        Formula::Iff(l, r) => eval(l, v) == eval(r, v),
    }
}

fn atoms_of(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) => {
            out.insert(a.clone());
        }
        Formula::Verum | Formula::Falsum => {}
        Formula::Not(g) => atoms_of(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            atoms_of(l, out);
            atoms_of(r, out);
        }
    }
}

/// Every valuation of the atoms occurring in `fs`.
pub fn valuations<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<Valuation> {
    let mut atoms = BTreeSet::new();
    for f in fs {
        atoms_of(f, &mut atoms);
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    (0..1u32 << atoms.len())
        .map(|bits| atoms.iter().enumerate().map(|(i, a)| (a.clone(), bits >> i & 1 == 1)).collect())
        .collect()
}

/// Reference consequence: every valuation satisfying all premises
/// satisfies the goal.
pub fn oracle_entails(premises: &[Formula], goal: &Formula) -> bool {
    let all: Vec<&Formula> = premises.iter().chain([goal]).collect();
    valuations(all).iter().all(|v| !premises.iter().all(|p| eval(p, v)) || eval(goal, v))
}

pub fn oracle_equivalent(f: &Formula, g: &Formula) -> bool {
    valuations([f, g]).iter().all(|v| eval(f, v) == eval(g, v))
}

/// Formulas over the first `atoms` harness atoms, up to `depth` connectives
/// deep.
pub fn formula(atoms: usize, depth: u32) -> impl Strategy<Value = Formula> {
    let names: Vec<&'static str> = ATOMS[..atoms].to_vec();
    let leaf = prop_oneof![
        8 => proptest::sample::select(names).prop_map(Formula::atom),
        1 => Just(Formula::Verum),
        1 => Just(Formula::Falsum),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negation),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::conjunction(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::disjunction(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implication(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::equivalence(l, r)),
        ]
    })
}
