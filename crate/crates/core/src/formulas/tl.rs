//! Temporal formulas with future and past operators.
//!
//! `F`, `G`, `P`, `H` are strict: `F φ` holds at `i` when `φ` holds at some
//! `j > i`, `G φ` when it holds at every `j > i`, and symmetrically for the
//! past. `φ U ψ` and `φ S ψ` are non-strict in their witness position.

use std::collections::BTreeSet;
use std::fmt;

use super::fo::paren;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TlFormula {
    True,
    False,
    Atom(String),
    And(Box<TlFormula>, Box<TlFormula>),
    Or(Box<TlFormula>, Box<TlFormula>),
    Not(Box<TlFormula>),
    X(Box<TlFormula>),
    Y(Box<TlFormula>),
    F(Box<TlFormula>),
    G(Box<TlFormula>),
    P(Box<TlFormula>),
    H(Box<TlFormula>),
    U(Box<TlFormula>, Box<TlFormula>),
    R(Box<TlFormula>, Box<TlFormula>),
    S(Box<TlFormula>, Box<TlFormula>),
    Q(Box<TlFormula>, Box<TlFormula>),
    /// `φ XU ψ`, sugar for `X(φ U ψ)`.
    XU(Box<TlFormula>, Box<TlFormula>),
    /// `φ YS ψ`, sugar for `Y(φ S ψ)`.
    YS(Box<TlFormula>, Box<TlFormula>),
}

/// Operator names, used for fragment checks and enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TlOp {
    True,
    False,
    Atom,
    And,
    Or,
    Not,
    X,
    Y,
    F,
    G,
    P,
    H,
    U,
    R,
    S,
    Q,
    XU,
    YS,
}

impl TlOp {
    pub fn arity(self) -> usize {
        match self {
            TlOp::True | TlOp::False | TlOp::Atom => 0,
            TlOp::Not | TlOp::X | TlOp::Y | TlOp::F | TlOp::G | TlOp::P | TlOp::H => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TlOp::True => "true",
            TlOp::False => "false",
            TlOp::Atom => "atom",
            TlOp::And => "&",
            TlOp::Or => "|",
            TlOp::Not => "!",
            TlOp::X => "X",
            TlOp::Y => "Y",
            TlOp::F => "F",
            TlOp::G => "G",
            TlOp::P => "P",
            TlOp::H => "H",
            TlOp::U => "U",
            TlOp::R => "R",
            TlOp::S => "S",
            TlOp::Q => "Q",
            TlOp::XU => "XU",
            TlOp::YS => "YS",
        }
    }
}

macro_rules! unary_ctor {
    ($($fn_name:ident => $variant:ident),*) => {
        $(
            pub fn $fn_name(a: TlFormula) -> Self {
                TlFormula::$variant(Box::new(a))
            }
        )*
    };
}

macro_rules! binary_ctor {
    ($($fn_name:ident => $variant:ident),*) => {
        $(
            pub fn $fn_name(a: TlFormula, b: TlFormula) -> Self {
                TlFormula::$variant(Box::new(a), Box::new(b))
            }
        )*
    };
}

impl TlFormula {
    pub fn atom(name: &str) -> Self {
        TlFormula::Atom(name.to_string())
    }

    unary_ctor!(not => Not, next => X, yesterday => Y, eventually => F, always => G,
        past => P, historically => H);
    binary_ctor!(and => And, or => Or, until => U, release => R, since => S,
        quasi => Q, next_until => XU, yesterday_since => YS);

    pub fn and_all(items: impl IntoIterator<Item = TlFormula>) -> Self {
        items.into_iter().reduce(TlFormula::and).unwrap_or(TlFormula::True)
    }

    pub fn or_all(items: impl IntoIterator<Item = TlFormula>) -> Self {
        items.into_iter().reduce(TlFormula::or).unwrap_or(TlFormula::False)
    }

    pub fn op(&self) -> TlOp {
        match self {
            TlFormula::True => TlOp::True,
            TlFormula::False => TlOp::False,
            TlFormula::Atom(_) => TlOp::Atom,
            TlFormula::And(..) => TlOp::And,
            TlFormula::Or(..) => TlOp::Or,
            TlFormula::Not(_) => TlOp::Not,
            TlFormula::X(_) => TlOp::X,
            TlFormula::Y(_) => TlOp::Y,
            TlFormula::F(_) => TlOp::F,
            TlFormula::G(_) => TlOp::G,
            TlFormula::P(_) => TlOp::P,
            TlFormula::H(_) => TlOp::H,
            TlFormula::U(..) => TlOp::U,
            TlFormula::R(..) => TlOp::R,
            TlFormula::S(..) => TlOp::S,
            TlFormula::Q(..) => TlOp::Q,
            TlFormula::XU(..) => TlOp::XU,
            TlFormula::YS(..) => TlOp::YS,
        }
    }

    /// Builds a node from an operator and its children. Atoms are built with
    /// [`TlFormula::atom`].
    pub fn from_op(op: TlOp, mut children: Vec<TlFormula>) -> Self {
        assert_eq!(children.len(), op.arity(), "wrong arity for {}", op.name());
        let b = children.pop().map(Box::new);
        let a = children.pop().map(Box::new);
        match op {
            TlOp::True => TlFormula::True,
            TlOp::False => TlFormula::False,
            TlOp::Atom => panic!("atoms carry a name; use TlFormula::atom"),
            TlOp::Not => TlFormula::Not(b.unwrap()),
            TlOp::X => TlFormula::X(b.unwrap()),
            TlOp::Y => TlFormula::Y(b.unwrap()),
            TlOp::F => TlFormula::F(b.unwrap()),
            TlOp::G => TlFormula::G(b.unwrap()),
            TlOp::P => TlFormula::P(b.unwrap()),
            TlOp::H => TlFormula::H(b.unwrap()),
            TlOp::And => TlFormula::And(a.unwrap(), b.unwrap()),
            TlOp::Or => TlFormula::Or(a.unwrap(), b.unwrap()),
            TlOp::U => TlFormula::U(a.unwrap(), b.unwrap()),
            TlOp::R => TlFormula::R(a.unwrap(), b.unwrap()),
            TlOp::S => TlFormula::S(a.unwrap(), b.unwrap()),
            TlOp::Q => TlFormula::Q(a.unwrap(), b.unwrap()),
            TlOp::XU => TlFormula::XU(a.unwrap(), b.unwrap()),
            TlOp::YS => TlFormula::YS(a.unwrap(), b.unwrap()),
        }
    }

    pub fn children(&self) -> Vec<&TlFormula> {
        match self {
            TlFormula::True | TlFormula::False | TlFormula::Atom(_) => vec![],
            TlFormula::Not(a)
            | TlFormula::X(a)
            | TlFormula::Y(a)
            | TlFormula::F(a)
            | TlFormula::G(a)
            | TlFormula::P(a)
            | TlFormula::H(a) => vec![a],
            TlFormula::And(a, b)
            | TlFormula::Or(a, b)
            | TlFormula::U(a, b)
            | TlFormula::R(a, b)
            | TlFormula::S(a, b)
            | TlFormula::Q(a, b)
            | TlFormula::XU(a, b)
            | TlFormula::YS(a, b) => vec![a, b],
        }
    }

    /// Rebuilds the node with each child mapped through `f`.
    pub fn map_children(&self, mut f: impl FnMut(&TlFormula) -> TlFormula) -> TlFormula {
        match self {
            TlFormula::True | TlFormula::False | TlFormula::Atom(_) => self.clone(),
            _ => TlFormula::from_op(self.op(), self.children().into_iter().map(&mut f).collect()),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn is_positive(&self) -> bool {
        !self.uses(TlOp::Not)
    }

    pub fn uses(&self, op: TlOp) -> bool {
        self.op() == op || self.children().iter().any(|c| c.uses(op))
    }

    pub fn ops(&self) -> BTreeSet<TlOp> {
        let mut out = BTreeSet::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut BTreeSet<TlOp>) {
        out.insert(self.op());
        for c in self.children() {
            c.collect_ops(out);
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let TlFormula::Atom(a) = self {
            out.insert(a.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Expands `XU` and `YS`; every other constructor, including `F`, `G`,
    /// `P`, `H`, is kept.
    pub fn desugar(&self) -> TlFormula {
        match self {
            TlFormula::XU(a, b) => TlFormula::next(TlFormula::until(a.desugar(), b.desugar())),
            TlFormula::YS(a, b) => TlFormula::yesterday(TlFormula::since(a.desugar(), b.desugar())),
            _ => self.map_children(|c| c.desugar()),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            TlFormula::Or(..) => 1,
            TlFormula::And(..) => 2,
            TlFormula::U(..)
            | TlFormula::R(..)
            | TlFormula::S(..)
            | TlFormula::Q(..)
            | TlFormula::XU(..)
            | TlFormula::YS(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        paren(f, self.prec() < min, |f| match self {
            TlFormula::True => f.write_str("true"),
            TlFormula::False => f.write_str("false"),
            TlFormula::Atom(a) => f.write_str(a),
            TlFormula::And(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" & ")?;
                b.fmt_prec(f, 3)
            }
            TlFormula::Or(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 2)
            }
            TlFormula::Not(a) => {
                f.write_str("!")?;
                a.fmt_prec(f, 4)
            }
            TlFormula::X(a)
            | TlFormula::Y(a)
            | TlFormula::F(a)
            | TlFormula::G(a)
            | TlFormula::P(a)
            | TlFormula::H(a) => {
                write!(f, "{} ", self.op().name())?;
                a.fmt_prec(f, 4)
            }
            TlFormula::U(a, b)
            | TlFormula::R(a, b)
            | TlFormula::S(a, b)
            | TlFormula::Q(a, b)
            | TlFormula::XU(a, b)
            | TlFormula::YS(a, b) => {
                // Right-associative: only the left operand needs a tighter bound.
                a.fmt_prec(f, 4)?;
                write!(f, " {} ", self.op().name())?;
                b.fmt_prec(f, 3)
            }
        })
    }
}

impl fmt::Display for TlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> TlFormula {
        TlFormula::atom("a")
    }
    fn b() -> TlFormula {
        TlFormula::atom("b")
    }

    #[test]
    fn desugar_examples() {
        assert_eq!(
            TlFormula::next_until(a(), b()).desugar(),
            TlFormula::next(TlFormula::until(a(), b()))
        );
        assert_eq!(
            TlFormula::yesterday_since(a(), b()).desugar(),
            TlFormula::yesterday(TlFormula::since(a(), b()))
        );
        let fa = TlFormula::eventually(a());
        assert_eq!(fa.desugar(), fa);
        let nested = TlFormula::always(TlFormula::next_until(a(), TlFormula::yesterday_since(b(), a())));
        assert_eq!(nested.desugar().desugar(), nested.desugar());
    }

    #[test]
    fn size_and_positivity() {
        let f = TlFormula::and(TlFormula::always(a()), TlFormula::next(TlFormula::eventually(b())));
        assert_eq!(f.size(), 6);
        assert!(f.is_positive());
        assert!(!TlFormula::not(a()).is_positive());
    }

    #[test]
    fn rendering_is_minimal_but_unambiguous() {
        let f = TlFormula::until(TlFormula::until(a(), b()), a());
        assert_eq!(f.to_string(), "(a U b) U a");
        let g = TlFormula::until(a(), TlFormula::until(b(), a()));
        assert_eq!(g.to_string(), "a U b U a");
        let h = TlFormula::next(TlFormula::or(a(), b()));
        assert_eq!(h.to_string(), "X (a | b)");
    }
}
