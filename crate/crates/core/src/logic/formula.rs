use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

/// A propositional formula.
///
/// Equality, ordering and hashing are structural: `A & B` and `B & A` are
/// different formulas even though they are logically equivalent. All set
/// containers in this crate rely on that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Verum,
    Falsum,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

/// Binding strength used by the printer, loosest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Prec {
    Iff,
    Implies,
    Or,
    And,
    Not,
    Leaf,
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn negation(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn conjunction(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn disjunction(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implication(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn equivalence(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction of `fs`; the empty conjunction is `true`.
    pub fn conjoin<I: IntoIterator<Item = Formula>>(fs: I) -> Self {
        fs.into_iter().reduce(Formula::conjunction).unwrap_or(Formula::Verum)
    }

    /// Left-nested disjunction of `fs`; the empty disjunction is `false`.
    pub fn disjoin<I: IntoIterator<Item = Formula>>(fs: I) -> Self {
        fs.into_iter().reduce(Formula::disjunction).unwrap_or(Formula::Falsum)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Verum | Formula::Falsum => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Verum | Formula::Falsum => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn children(&self) -> impl Iterator<Item = &Formula> {
        let (a, b): (Option<&Formula>, Option<&Formula>) = match self {
            Formula::Atom(_) | Formula::Verum | Formula::Falsum => (None, None),
            Formula::Not(f) => (Some(f), None),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                (Some(l), Some(r))
            }
        };
        a.into_iter().chain(b)
    }

    /// Adds every subformula of `self`, including `self`, to `out`.
    pub fn collect_subformulas<'a>(&'a self, out: &mut BTreeSet<&'a Formula>) {
        if out.insert(self) {
            for c in self.children() {
                c.collect_subformulas(out);
            }
        }
    }

    pub(crate) fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            _ => {
                for c in self.children() {
                    c.collect_atoms(out);
                }
            }
        }
    }

    pub(crate) fn prec(&self) -> Prec {
        match self {
            Formula::Atom(_) | Formula::Verum | Formula::Falsum => Prec::Leaf,
            Formula::Not(_) => Prec::Not,
            Formula::And(..) => Prec::And,
            Formula::Or(..) => Prec::Or,
            Formula::Implies(..) => Prec::Implies,
            Formula::Iff(..) => Prec::Iff,
        }
    }
}

impl core::ops::Not for Formula {
    type Output = Formula;

    fn not(self) -> Formula {
        Formula::negation(self)
    }
}

impl core::ops::BitAnd for Formula {
    type Output = Formula;

    fn bitand(self, rhs: Formula) -> Formula {
        Formula::conjunction(self, rhs)
    }
}

impl core::ops::BitOr for Formula {
    type Output = Formula;

    fn bitor(self, rhs: Formula) -> Formula {
        Formula::disjunction(self, rhs)
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

// `&`, `|` and `<->` associate to the left, `->` to the right. A child
// needs parentheses when it binds looser than its parent, or equally
// loose on the side the operator does not associate towards.
fn write_binary(
    f: &mut fmt::Formatter<'_>,
    op: &str,
    prec: Prec,
    right_assoc: bool,
    l: &Formula,
    r: &Formula,
) -> fmt::Result {
    let (lp, rp) = (l.prec(), r.prec());
    let left_parens = lp < prec || (right_assoc && lp == prec);
    let right_parens = rp < prec || (!right_assoc && rp == prec);
    write_child(f, l, left_parens)?;
    write!(f, " {op} ")?;
    write_child(f, r, right_parens)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Verum => f.write_str("true"),
            Formula::Falsum => f.write_str("false"),
            Formula::Not(c) => {
                f.write_str("~")?;
                write_child(f, c, c.prec() < Prec::Not)
            }
            Formula::And(l, r) => write_binary(f, "&", Prec::And, false, l, r),
            Formula::Or(l, r) => write_binary(f, "|", Prec::Or, false, l, r),
            Formula::Implies(l, r) => write_binary(f, "->", Prec::Implies, true, l, r),
            Formula::Iff(l, r) => write_binary(f, "<->", Prec::Iff, false, l, r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn renders_minimal_parentheses() {
        assert_eq!((a("A") & a("B")).to_string(), "A & B");
        assert_eq!((!(a("A") & a("B"))).to_string(), "~(A & B)");
        assert_eq!(Formula::Verum.to_string(), "true");
        assert_eq!((!!a("B")).to_string(), "~~B");
        let rimp = Formula::implication(a("A"), Formula::implication(a("B"), a("C")));
        assert_eq!(rimp.to_string(), "A -> B -> C");
        let limp = Formula::implication(Formula::implication(a("A"), a("B")), a("C"));
        assert_eq!(limp.to_string(), "(A -> B) -> C");
        let rand = a("A") & (a("B") & a("C"));
        assert_eq!(rand.to_string(), "A & (B & C)");
        assert_eq!(((a("A") & a("B")) & a("C")).to_string(), "A & B & C");
        assert_eq!(((a("A") | a("B")) & a("C")).to_string(), "(A | B) & C");
        assert_eq!((a("A") & a("B") | a("C")).to_string(), "A & B | C");
    }

    #[test]
    fn conjoin_and_disjoin_of_nothing() {
        assert_eq!(Formula::conjoin([]), Formula::Verum);
        assert_eq!(Formula::disjoin([]), Formula::Falsum);
        assert_eq!(Formula::conjoin([a("A")]), a("A"));
    }

    #[test]
    fn subformulas_are_collected_once() {
        let f = (a("A") & a("B")) | a("A");
        let mut out = BTreeSet::new();
        f.collect_subformulas(&mut out);
        assert_eq!(out.len(), 4);
        assert_eq!(f.size(), 5);
        assert_eq!(f.depth(), 2);
    }
}
