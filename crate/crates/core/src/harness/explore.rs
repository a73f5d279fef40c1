//! Bounded breadth-first search for flocks reachable from primitive flocks.
//!
//! Primitive flocks are `{{φ}}` for each canonical formula φ: one
//! smallest representative per boolean function of the signature. Moves
//! are contraction by a non-tautological canonical formula and expansion
//! by a canonical formula that does not yet occur (no freshening, so every
//! reachable flock stays inside the canonical vocabulary).
//!
//! The search runs on bitmask flocks: formula `i` of the canonical list is
//! bit `i`, a base is a `u32` and a flock is its sorted list of maximal
//! bases. Witnesses are replayed through [`Flock`] to confirm them.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::flock::{Base, Flock};
use crate::logic::{Formula, Signature, TruthTable};

pub const EXPLORE_ATOM_CAP: usize = 2;
pub const EXPLORE_DEPTH_CAP: usize = 4;

const ATOMS: [&str; 2] = ["p", "q"];

/// One smallest formula per boolean function over the first `atoms` of
/// `p`, `q`, with its truth table.
///
/// Formulas are enumerated by size; within a size negations come first,
/// then `&`, `|`, `->`, `<->`, operands in discovery order. Smallest
/// formulas only have smallest subformulas, so combining representatives
/// suffices.
pub fn canonical_formulas(atoms: usize) -> Result<Vec<(Formula, u64)>> {
    if atoms > EXPLORE_ATOM_CAP {
        return Err(Error::Guard(format!("explorer supports at most {EXPLORE_ATOM_CAP} atoms, got {atoms}")));
    }
    let sig = Signature::new(ATOMS[..atoms].iter().copied());
    let functions = 1usize << (1usize << atoms);
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    let mut reps: Vec<(Formula, u64)> = Vec::new();
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new()];

    let mut offer = |f: Formula, reps: &mut Vec<(Formula, u64)>, bucket: &mut Vec<usize>| -> Result<()> {
        let table = TruthTable::of(&f, &sig)?.as_small().expect("small signature");
        if let Entry::Vacant(slot) = seen.entry(table) {
            slot.insert(reps.len());
            bucket.push(reps.len());
            reps.push((f, table));
        }
        Ok(())
    };

    let mut size = 1;
    while reps.len() < functions {
        let mut bucket = Vec::new();
        if size == 1 {
            for a in &ATOMS[..atoms] {
                offer(Formula::atom(*a), &mut reps, &mut bucket)?;
            }
            offer(Formula::Verum, &mut reps, &mut bucket)?;
            offer(Formula::Falsum, &mut reps, &mut bucket)?;
        } else {
            for &i in &by_size[size - 1] {
                let f = Formula::negation(reps[i].0.clone());
                offer(f, &mut reps, &mut bucket)?;
            }
            let ops: [fn(Formula, Formula) -> Formula; 4] =
                [Formula::conjunction, Formula::disjunction, Formula::implication, Formula::equivalence];
            for op in ops {
                for left_size in 1..size - 1 {
                    let right_size = size - 1 - left_size;
                    for &l in &by_size[left_size] {
                        for &r in &by_size[right_size] {
                            let f = op(reps[l].0.clone(), reps[r].0.clone());
                            offer(f, &mut reps, &mut bucket)?;
                        }
                    }
                }
            }
        }
        by_size.push(bucket);
        size += 1;
    }
    Ok(reps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Start(Formula),
    Contract(Formula),
    Expand(Formula),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Start(g) => write!(f, "start {{ {g} }}"),
            Step::Contract(g) => write!(f, "contract {g}"),
            Step::Expand(g) => write!(f, "expand {g}"),
        }
    }
}

/// Replays a witness with the ordinary flock operations.
pub fn replay(steps: &[Step]) -> Result<Flock> {
    let mut flock = Flock::new();
    for step in steps {
        flock = match step {
            Step::Start(g) => [[g.clone()].into_iter().collect::<Base>()].into_iter().collect(),
            Step::Contract(g) => flock.contract(g)?,
            Step::Expand(g) => flock.expand(g, false)?.flock,
        };
    }
    Ok(flock)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    pub target: Flock,
    pub depth: usize,
    pub atoms: usize,
    pub primitives: usize,
    /// Newly reached flocks at each depth, starting with the primitives.
    pub reached_per_depth: Vec<usize>,
    pub witness: Option<Vec<Step>>,
    /// Why the target cannot be expressed in the canonical vocabulary, if so.
    pub outside_vocabulary: Option<String>,
}

impl Exploration {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn reached(&self) -> usize {
        self.reached_per_depth.iter().sum()
    }

    pub fn replay(&self) -> Option<Result<Flock>> {
        self.witness.as_deref().map(replay)
    }
}

impl fmt::Display for Exploration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EXPLORE depth={} atoms={} target=", self.depth, self.atoms)?;
        for (i, base) in self.target.canonical().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{base}")?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "# primitives: {{{{φ}}}} for each of {} canonical formulas (one smallest per boolean function)",
            self.primitives
        )?;
        writeln!(f, "# moves: contract by a non-tautology, expand by a formula not in the flock")?;
        write!(f, "# reached per depth:")?;
        for n in &self.reached_per_depth {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        if let Some(reason) = &self.outside_vocabulary {
            writeln!(f, "# {reason}")?;
        }
        match &self.witness {
            Some(steps) => {
                writeln!(f, "FOUND at depth {}", steps.len() - 1)?;
                for step in steps {
                    writeln!(f, "  {step}")?;
                }
            }
            None => writeln!(
                f,
                "NOT FOUND: all {} flocks reachable within depth {} differ from the target",
                self.reached(),
                self.depth
            )?,
        }
        Ok(())
    }
}

type Masks = Vec<u32>;

#[derive(Clone, Copy)]
enum Move {
    Start(usize),
    Contract(usize),
    Expand(usize),
}

struct Space {
    tables: Vec<u64>,
    full: u64,
}

impl Space {
    fn normalize(mut bases: Masks) -> Masks {
        bases.sort_unstable();
        bases.dedup();
        let keep: Masks =
            bases.iter().copied().filter(|&b| !bases.iter().any(|&o| o != b && b & !o == 0)).collect();
        keep
    }

    fn models(&self, base: u32) -> u64 {
        let mut t = self.full;
        let mut rest = base;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            t &= self.tables[i];
            rest &= rest - 1;
        }
        t
    }

    fn remainders(&self, base: u32, goal: u64, out: &mut Masks) {
        let mut subs: Masks = Vec::new();
        let mut sub = base;
        loop {
            subs.push(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & base;
        }
        subs.sort_by_key(|s| core::cmp::Reverse(s.count_ones()));
        let mut found: Masks = Vec::new();
        for s in subs {
            if found.iter().any(|r| s & !r == 0) {
                continue;
            }
            if self.models(s) & !goal != 0 {
                found.push(s);
            }
        }
        out.extend(found);
    }

    fn contract(&self, flock: &[u32], goal: usize) -> Masks {
        let mut out = Vec::new();
        for &b in flock {
            self.remainders(b, self.tables[goal], &mut out);
        }
        Self::normalize(out)
    }

    fn expand(&self, flock: &[u32], f: usize) -> Option<Masks> {
        let bit = 1u32 << f;
        if flock.iter().any(|b| b & bit != 0) {
            return None;
        }
        Some(Self::normalize(flock.iter().map(|b| b | bit).collect()))
    }
}

/// Breadth-first search from the primitive flocks, up to `depth` moves,
/// for a flock identical to `target`.
pub fn explore_constructibility(target: &Flock, depth: usize, atoms: usize) -> Result<Exploration> {
    if depth > EXPLORE_DEPTH_CAP {
        return Err(Error::Guard(format!("explorer depth is capped at {EXPLORE_DEPTH_CAP}, got {depth}")));
    }
    let canon = canonical_formulas(atoms)?;
    let full = (1u64 << (1u32 << atoms)) - 1;
    let space = Space { tables: canon.iter().map(|(_, t)| *t).collect(), full };

    let index: BTreeMap<&Formula, usize> = canon.iter().enumerate().map(|(i, (f, _))| (f, i)).collect();
    let mut outside_vocabulary = None;
    let mut goal: Option<Masks> = Some(Vec::new());
    for base in target.normalize().iter() {
        let mut mask = 0u32;
        for f in base.iter() {
            match index.get(f) {
                Some(&i) => mask |= 1 << i,
                None => {
                    outside_vocabulary =
                        Some(format!("`{f}` is not a canonical formula, so no move can produce it"));
                    goal = None;
                }
            }
        }
        if let Some(g) = goal.as_mut() {
            g.push(mask);
        }
    }
    let goal = goal.map(Space::normalize);
    let goal = goal.filter(|g| !g.is_empty());

    let mut nodes: Vec<(Masks, Option<usize>, Move)> = Vec::new();
    let mut seen: BTreeMap<Masks, usize> = BTreeMap::new();
    let mut frontier: Vec<usize> = Vec::new();
    let mut hit = None;
    for i in 0..canon.len() {
        let flock = vec![1u32 << i];
        if seen.contains_key(&flock) {
            continue;
        }
        seen.insert(flock.clone(), nodes.len());
        if goal.as_ref() == Some(&flock) && hit.is_none() {
            hit = Some(nodes.len());
        }
        frontier.push(nodes.len());
        nodes.push((flock, None, Move::Start(i)));
    }
    let mut reached_per_depth = vec![frontier.len()];

    for _ in 0..depth {
        if hit.is_some() || goal.is_none() {
            break;
        }
        let mut next = Vec::new();
        for &node in &frontier {
            let flock = nodes[node].0.clone();
            let moves = (0..canon.len())
                .filter(|&g| space.tables[g] != full)
                .map(|g| (Some(space.contract(&flock, g)), Move::Contract(g)))
                .chain((0..canon.len()).map(|g| (space.expand(&flock, g), Move::Expand(g))));
            for (result, mv) in moves {
                let Some(result) = result else { continue };
                if result.is_empty() || seen.contains_key(&result) {
                    continue;
                }
                seen.insert(result.clone(), nodes.len());
                if goal.as_ref() == Some(&result) && hit.is_none() {
                    hit = Some(nodes.len());
                }
                next.push(nodes.len());
                nodes.push((result, Some(node), mv));
            }
        }
        reached_per_depth.push(next.len());
        frontier = next;
    }

    let witness = hit.map(|mut at| {
        let mut steps = Vec::new();
        loop {
            let (_, parent, mv) = &nodes[at];
            steps.push(match *mv {
                Move::Start(i) => Step::Start(canon[i].0.clone()),
                Move::Contract(i) => Step::Contract(canon[i].0.clone()),
                Move::Expand(i) => Step::Expand(canon[i].0.clone()),
            });
            match parent {
                Some(p) => at = *p,
                None => break,
            }
        }
        steps.reverse();
        steps
    });

    Ok(Exploration {
        target: target.clone(),
        depth,
        atoms,
        primitives: canon.len(),
        reached_per_depth,
        witness,
        outside_vocabulary,
    })
}
