//! First-order formulas over words with unary letter predicates and binary
//! position predicates.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A first-order variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Quantifier-free single-position expression used as a between guard.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Guard {
    True,
    False,
    Pred(String),
    Not(Box<Guard>),
    And(Box<Guard>, Box<Guard>),
    Or(Box<Guard>, Box<Guard>),
}

impl Guard {
    pub fn is_positive(&self) -> bool {
        match self {
            Guard::True | Guard::False | Guard::Pred(_) => true,
            Guard::Not(_) => false,
            Guard::And(a, b) | Guard::Or(a, b) => a.is_positive() && b.is_positive(),
        }
    }

    pub fn predicates(&self, out: &mut BTreeSet<String>) {
        match self {
            Guard::True | Guard::False => {}
            Guard::Pred(p) => {
                out.insert(p.clone());
            }
            Guard::Not(g) => g.predicates(out),
            Guard::And(a, b) | Guard::Or(a, b) => {
                a.predicates(out);
                b.predicates(out);
            }
        }
    }

    /// Evaluates the guard given a membership test for predicate names.
    pub fn eval_with(&self, holds: &impl Fn(&str) -> bool) -> bool {
        match self {
            Guard::True => true,
            Guard::False => false,
            Guard::Pred(p) => holds(p),
            Guard::Not(g) => !g.eval_with(holds),
            Guard::And(a, b) => a.eval_with(holds) && b.eval_with(holds),
            Guard::Or(a, b) => a.eval_with(holds) || b.eval_with(holds),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Guard::True => f.write_str("true"),
            Guard::False => f.write_str("false"),
            Guard::Pred(p) => f.write_str(p),
            Guard::Not(g) => {
                f.write_str("!")?;
                g.fmt_prec(f, 3)
            }
            Guard::And(a, b) => paren(f, prec > 2, |f| {
                a.fmt_prec(f, 2)?;
                f.write_str(" & ")?;
                b.fmt_prec(f, 3)
            }),
            Guard::Or(a, b) => paren(f, prec > 1, |f| {
                a.fmt_prec(f, 1)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 2)
            }),
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Binary position predicates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BinaryPredicate {
    Eq,
    Neq,
    Le,
    Lt,
    Succ,
    NotSucc,
    /// Holds iff some position strictly between the two arguments satisfies
    /// the guard (symmetric in its arguments).
    Between(Guard),
}

impl BinaryPredicate {
    pub fn kind(&self) -> BinaryKind {
        match self {
            BinaryPredicate::Eq => BinaryKind::Eq,
            BinaryPredicate::Neq => BinaryKind::Neq,
            BinaryPredicate::Le => BinaryKind::Le,
            BinaryPredicate::Lt => BinaryKind::Lt,
            BinaryPredicate::Succ => BinaryKind::Succ,
            BinaryPredicate::NotSucc => BinaryKind::NotSucc,
            BinaryPredicate::Between(_) => BinaryKind::Between,
        }
    }

    /// Truth value of the order predicates on concrete positions.
    /// Between predicates need the word and are not handled here.
    pub fn holds_on(&self, i: usize, j: usize) -> Option<bool> {
        Some(match self {
            BinaryPredicate::Eq => i == j,
            BinaryPredicate::Neq => i != j,
            BinaryPredicate::Le => i <= j,
            BinaryPredicate::Lt => i < j,
            BinaryPredicate::Succ => j == i + 1,
            BinaryPredicate::NotSucc => j != i + 1,
            BinaryPredicate::Between(_) => return None,
        })
    }

    /// The predicate defining the complement relation with the same argument
    /// order, when it is itself an order predicate: `¬(x<y) ≡ y≤x` etc.
    /// Returned as `(predicate, swap_arguments)`.
    pub fn negated(&self) -> Option<(BinaryPredicate, bool)> {
        Some(match self {
            BinaryPredicate::Eq => (BinaryPredicate::Neq, false),
            BinaryPredicate::Neq => (BinaryPredicate::Eq, false),
            BinaryPredicate::Le => (BinaryPredicate::Lt, true),
            BinaryPredicate::Lt => (BinaryPredicate::Le, true),
            BinaryPredicate::Succ => (BinaryPredicate::NotSucc, false),
            BinaryPredicate::NotSucc => (BinaryPredicate::Succ, false),
            BinaryPredicate::Between(_) => return None,
        })
    }
}

/// Kinds of binary predicates, used to describe signatures.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BinaryKind {
    Eq,
    Neq,
    Le,
    Lt,
    Succ,
    NotSucc,
    /// Between predicates with arbitrary Boolean guards.
    Between,
    /// Between predicates whose guards are negation-free.
    BetweenPositive,
}

/// The set of binary predicates a formula may use. Equality and disequality
/// are always available.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    kinds: BTreeSet<BinaryKind>,
}

impl Signature {
    pub fn new(kinds: impl IntoIterator<Item = BinaryKind>) -> Self {
        let mut kinds: BTreeSet<BinaryKind> = kinds.into_iter().collect();
        kinds.insert(BinaryKind::Eq);
        kinds.insert(BinaryKind::Neq);
        Signature { kinds }
    }

    /// `{≤, <, succ, ¬succ}`.
    pub fn b0() -> Self {
        Self::new([BinaryKind::Le, BinaryKind::Lt, BinaryKind::Succ, BinaryKind::NotSucc])
    }

    /// `{≤, <}`.
    pub fn less() -> Self {
        Self::new([BinaryKind::Le, BinaryKind::Lt])
    }

    /// `{=, ≠, succ, ¬succ}`.
    pub fn succ() -> Self {
        Self::new([BinaryKind::Succ, BinaryKind::NotSucc])
    }

    /// `𝔅₀` together with all between predicates.
    pub fn b0_between() -> Self {
        let mut s = Self::b0();
        s.kinds.insert(BinaryKind::Between);
        s
    }

    /// `𝔅₀` together with the negation-free between predicates.
    pub fn b0_between_positive() -> Self {
        let mut s = Self::b0();
        s.kinds.insert(BinaryKind::BetweenPositive);
        s
    }

    pub fn kinds(&self) -> impl Iterator<Item = BinaryKind> + '_ {
        self.kinds.iter().copied()
    }

    pub fn has(&self, kind: BinaryKind) -> bool {
        self.kinds.contains(&kind)
    }

    pub fn permits(&self, pred: &BinaryPredicate) -> bool {
        match pred {
            BinaryPredicate::Between(g) => {
                self.has(BinaryKind::Between) || (self.has(BinaryKind::BetweenPositive) && g.is_positive())
            }
            other => self.has(other.kind()),
        }
    }

    pub fn is_subset_of(&self, other: &Signature) -> bool {
        self.kinds.iter().all(|k| {
            other.has(*k) || (*k == BinaryKind::BetweenPositive && other.has(BinaryKind::Between))
        })
    }

    /// Parses names such as `b0`, `lt`, `succ`, `b0+be`, `b0+be+`, `eq`.
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name.trim() {
            "b0" | "B0" => Self::b0(),
            "lt" | "less" | "<" => Self::less(),
            "succ" => Self::succ(),
            "b0+be" => Self::b0_between(),
            "b0+be+" => Self::b0_between_positive(),
            "eq" => Self::new([]),
            _ => return None,
        })
    }
}

/// A first-order formula.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FoFormula {
    True,
    False,
    Atom { pred: String, var: Var },
    Bin { pred: BinaryPredicate, left: Var, right: Var },
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Exists(Var, Box<FoFormula>),
    Forall(Var, Box<FoFormula>),
    Not(Box<FoFormula>),
}

impl FoFormula {
    pub fn atom(pred: &str, var: &Var) -> Self {
        FoFormula::Atom { pred: pred.to_string(), var: var.clone() }
    }

    pub fn bin(pred: BinaryPredicate, left: &Var, right: &Var) -> Self {
        FoFormula::Bin { pred, left: left.clone(), right: right.clone() }
    }

    pub fn and(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &Var, body: FoFormula) -> Self {
        FoFormula::Exists(v.clone(), Box::new(body))
    }

    pub fn forall(v: &Var, body: FoFormula) -> Self {
        FoFormula::Forall(v.clone(), Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: FoFormula) -> Self {
        FoFormula::Not(Box::new(a))
    }

    /// Left-nested conjunction; `⊤` for an empty list.
    pub fn and_all(items: impl IntoIterator<Item = FoFormula>) -> Self {
        items.into_iter().reduce(FoFormula::and).unwrap_or(FoFormula::True)
    }

    /// Left-nested disjunction; `⊥` for an empty list.
    pub fn or_all(items: impl IntoIterator<Item = FoFormula>) -> Self {
        items.into_iter().reduce(FoFormula::or).unwrap_or(FoFormula::False)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            FoFormula::True | FoFormula::False | FoFormula::Atom { .. } | FoFormula::Bin { .. } => 1,
            FoFormula::And(a, b) | FoFormula::Or(a, b) => 1 + a.size() + b.size(),
            FoFormula::Exists(_, a) | FoFormula::Forall(_, a) | FoFormula::Not(a) => 1 + a.size(),
        }
    }

    /// True iff no `¬` node occurs (between guards are not inspected).
    pub fn is_positive(&self) -> bool {
        match self {
            FoFormula::True | FoFormula::False | FoFormula::Atom { .. } | FoFormula::Bin { .. } => true,
            FoFormula::And(a, b) | FoFormula::Or(a, b) => a.is_positive() && b.is_positive(),
            FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => a.is_positive(),
            FoFormula::Not(_) => false,
        }
    }

    /// All variable names occurring in the formula, bound or free.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            FoFormula::True | FoFormula::False => {}
            FoFormula::Atom { var, .. } => {
                out.insert(var.clone());
            }
            FoFormula::Bin { left, right, .. } => {
                out.insert(left.clone());
                out.insert(right.clone());
            }
            FoFormula::And(a, b) | FoFormula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            FoFormula::Exists(v, a) | FoFormula::Forall(v, a) => {
                out.insert(v.clone());
                a.collect_vars(out);
            }
            FoFormula::Not(a) => a.collect_vars(out),
        }
    }

    /// Number of distinct variable names (reuse counted once).
    pub fn distinct_vars(&self) -> usize {
        self.vars().len()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            FoFormula::True | FoFormula::False => BTreeSet::new(),
            FoFormula::Atom { var, .. } => [var.clone()].into(),
            FoFormula::Bin { left, right, .. } => [left.clone(), right.clone()].into(),
            FoFormula::And(a, b) | FoFormula::Or(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            FoFormula::Exists(v, a) | FoFormula::Forall(v, a) => {
                let mut s = a.free_vars();
                s.remove(v);
                s
            }
            FoFormula::Not(a) => a.free_vars(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Maximal quantifier nesting depth; `¬ψ` has the rank of `ψ`.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            FoFormula::True | FoFormula::False | FoFormula::Atom { .. } | FoFormula::Bin { .. } => 0,
            FoFormula::And(a, b) | FoFormula::Or(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => 1 + a.quantifier_rank(),
            FoFormula::Not(a) => a.quantifier_rank(),
        }
    }

    /// Unary predicate names used, including inside between guards.
    pub fn unary_predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            FoFormula::Atom { pred, .. } => {
                out.insert(pred.clone());
            }
            FoFormula::Bin { pred: BinaryPredicate::Between(g), .. } => g.predicates(&mut out),
            _ => {}
        });
        out
    }

    /// Binary predicates used.
    pub fn binary_predicates(&self) -> Vec<BinaryPredicate> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let FoFormula::Bin { pred, .. } = f {
                if !out.contains(pred) {
                    out.push(pred.clone());
                }
            }
        });
        out
    }

    pub fn uses_only(&self, sig: &Signature) -> bool {
        self.binary_predicates().iter().all(|p| sig.permits(p))
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a FoFormula)) {
        f(self);
        match self {
            FoFormula::And(a, b) | FoFormula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            FoFormula::Exists(_, a) | FoFormula::Forall(_, a) | FoFormula::Not(a) => a.visit(f),
            _ => {}
        }
    }

    /// Renames free occurrences of `from` to `to`. The caller must ensure
    /// `to` is not captured by a binder inside the formula.
    pub fn rename_free(&self, from: &Var, to: &Var) -> FoFormula {
        let r = |v: &Var| if v == from { to.clone() } else { v.clone() };
        match self {
            FoFormula::True => FoFormula::True,
            FoFormula::False => FoFormula::False,
            FoFormula::Atom { pred, var } => FoFormula::Atom { pred: pred.clone(), var: r(var) },
            FoFormula::Bin { pred, left, right } => {
                FoFormula::Bin { pred: pred.clone(), left: r(left), right: r(right) }
            }
            FoFormula::And(a, b) => FoFormula::and(a.rename_free(from, to), b.rename_free(from, to)),
            FoFormula::Or(a, b) => FoFormula::or(a.rename_free(from, to), b.rename_free(from, to)),
            FoFormula::Exists(v, _) | FoFormula::Forall(v, _) if v == from => self.clone(),
            FoFormula::Exists(v, a) => FoFormula::exists(v, a.rename_free(from, to)),
            FoFormula::Forall(v, a) => FoFormula::forall(v, a.rename_free(from, to)),
            FoFormula::Not(a) => FoFormula::not(a.rename_free(from, to)),
        }
    }

    /// Pushes negations to the atoms. Order predicates are complemented
    /// (`¬(x<y)` becomes `y≤x`, `¬succ` becomes `¬succ` atom, ...), `¬¬φ`
    /// collapses, and only unary atoms and between atoms keep a `¬`.
    pub fn negation_normal_form(&self) -> FoFormula {
        self.nnf(false)
    }

    fn nnf(&self, negate: bool) -> FoFormula {
        match (self, negate) {
            (FoFormula::True, false) | (FoFormula::False, true) => FoFormula::True,
            (FoFormula::False, false) | (FoFormula::True, true) => FoFormula::False,
            (FoFormula::Atom { .. }, false) => self.clone(),
            (FoFormula::Atom { .. }, true) => FoFormula::not(self.clone()),
            (FoFormula::Bin { .. }, false) => self.clone(),
            (FoFormula::Bin { pred, left, right }, true) => match pred.negated() {
                Some((p, false)) => FoFormula::bin(p, left, right),
                Some((p, true)) => FoFormula::bin(p, right, left),
                None => FoFormula::not(self.clone()),
            },
            (FoFormula::And(a, b), false) => FoFormula::and(a.nnf(false), b.nnf(false)),
            (FoFormula::And(a, b), true) => FoFormula::or(a.nnf(true), b.nnf(true)),
            (FoFormula::Or(a, b), false) => FoFormula::or(a.nnf(false), b.nnf(false)),
            (FoFormula::Or(a, b), true) => FoFormula::and(a.nnf(true), b.nnf(true)),
            (FoFormula::Exists(v, a), false) => FoFormula::exists(v, a.nnf(false)),
            (FoFormula::Exists(v, a), true) => FoFormula::forall(v, a.nnf(true)),
            (FoFormula::Forall(v, a), false) => FoFormula::forall(v, a.nnf(false)),
            (FoFormula::Forall(v, a), true) => FoFormula::exists(v, a.nnf(true)),
            (FoFormula::Not(a), n) => a.nnf(!n),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            FoFormula::Or(..) => 1,
            FoFormula::And(..) => 2,
            FoFormula::Exists(..) | FoFormula::Forall(..) => 0,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        // Quantifiers extend as far right as possible, so they are wrapped
        // whenever they appear as an operand.
        let needs = self.prec() < min;
        paren(f, needs, |f| match self {
            FoFormula::True => f.write_str("true"),
            FoFormula::False => f.write_str("false"),
            FoFormula::Atom { pred, var } => write!(f, "{pred}({var})"),
            FoFormula::Bin { pred, left, right } => match pred {
                BinaryPredicate::Eq => write!(f, "{left}={right}"),
                BinaryPredicate::Neq => write!(f, "{left}!={right}"),
                BinaryPredicate::Le => write!(f, "{left}<={right}"),
                BinaryPredicate::Lt => write!(f, "{left}<{right}"),
                BinaryPredicate::Succ => write!(f, "S({left},{right})"),
                BinaryPredicate::NotSucc => write!(f, "!S({left},{right})"),
                BinaryPredicate::Between(g) => write!(f, "btw[{g}]({left},{right})"),
            },
            FoFormula::And(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" & ")?;
                b.fmt_prec(f, 3)
            }
            FoFormula::Or(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 2)
            }
            FoFormula::Exists(v, a) => {
                write!(f, "exists {v}. ")?;
                a.fmt_prec(f, 0)
            }
            FoFormula::Forall(v, a) => {
                write!(f, "forall {v}. ")?;
                a.fmt_prec(f, 0)
            }
            FoFormula::Not(a) => {
                f.write_str("!")?;
                // `!S(x,y)` is the ¬succ atom, so a negated succ atom is
                // always parenthesised.
                let atomic_ok = !matches!(**a, FoFormula::Bin { pred: BinaryPredicate::Succ, .. });
                if atomic_ok && a.prec() >= 4 {
                    a.fmt_prec(f, 4)
                } else {
                    paren(f, true, |f| a.fmt_prec(f, 0))
                }
            }
        })
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

pub(crate) fn paren(
    f: &mut fmt::Formatter<'_>,
    wrap: bool,
    body: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if wrap {
        f.write_str("(")?;
        body(f)?;
        f.write_str(")")
    } else {
        body(f)
    }
}
