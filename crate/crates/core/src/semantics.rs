//! Evaluation of FO formulas on words with valuations, temporal formulas at
//! positions, and brute-force language comparison.
//!
//! Formulas are compiled against a predicate set first: unary atoms become
//! bit masks and variables become slots. The `eval_*` functions compile on
//! every call; hot loops should build an [`FoEvaluator`] / [`TlEvaluator`] once.

use std::collections::BTreeMap;
use std::fmt;

use crate::formulas::{BinaryPredicate, FoFormula, Guard, TlFormula, Var};
use crate::words::{enumerate_words, Letter, PredicateSet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("free variable {0} has no value")]
    UnboundVariable(String),
    #[error("variable {var} is mapped to position {pos}, outside a word of length {len}")]
    OutOfBounds { var: String, pos: usize, len: usize },
    #[error("position {pos} is outside a word of length {len}")]
    PositionOutOfBounds { pos: usize, len: usize },
    #[error("predicate {0} is not in the predicate set")]
    UnknownPredicate(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Partial assignment of variables to positions.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Valuation(BTreeMap<Var, usize>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(BTreeMap::new())
    }

    pub fn with(mut self, var: &str, pos: usize) -> Self {
        self.0.insert(Var::new(var), pos);
        self
    }

    pub fn set(&mut self, var: &Var, pos: usize) {
        self.0.insert(var.clone(), pos);
    }

    pub fn get(&self, var: &Var) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, usize)> {
        self.0.iter().map(|(v, p)| (v, *p))
    }
}

pub(crate) fn predicate_mask(preds: &PredicateSet, name: &str) -> Result<u16, SemanticsError> {
    preds
        .index_of(name)
        .map(|i| 1u16 << i)
        .ok_or_else(|| SemanticsError::UnknownPredicate(name.to_string()))
}

/// Truth table of a between guard, indexed by letter bits.
pub(crate) fn guard_table(g: &Guard, preds: &PredicateSet) -> Result<Vec<bool>, SemanticsError> {
    let mut names = std::collections::BTreeSet::new();
    g.predicates(&mut names);
    for n in &names {
        predicate_mask(preds, n)?;
    }
    Ok(preds
        .letters()
        .map(|l| g.eval_with(&|p: &str| l.contains(preds.index_of(p).expect("checked above"))))
        .collect())
}

#[derive(Clone, Debug)]
enum FoNode {
    True,
    False,
    Atom { mask: u16, slot: usize },
    Order { pred: OrderKind, l: usize, r: usize },
    Between { table: usize, l: usize, r: usize },
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
    Exists(usize, usize),
    Forall(usize, usize),
}

#[derive(Clone, Copy, Debug)]
enum OrderKind {
    Eq,
    Neq,
    Le,
    Lt,
    Succ,
    NotSucc,
}

/// An FO formula compiled against a predicate set.
#[derive(Clone, Debug)]
pub struct FoEvaluator {
    nodes: Vec<FoNode>,
    guards: Vec<Vec<bool>>,
    root: usize,
    slots: Vec<Var>,
    free: Vec<usize>,
    preds: PredicateSet,
}

impl FoEvaluator {
    pub fn new(phi: &FoFormula, preds: &PredicateSet) -> Result<Self, SemanticsError> {
        let slots: Vec<Var> = phi.vars().into_iter().collect();
        let free_vars = phi.free_vars();
        let free = slots.iter().enumerate().filter(|(_, v)| free_vars.contains(v)).map(|(i, _)| i).collect();
        let mut ev = FoEvaluator { nodes: Vec::new(), guards: Vec::new(), root: 0, slots, free, preds: preds.clone() };
        ev.root = ev.compile(phi)?;
        Ok(ev)
    }

    fn slot(&self, v: &Var) -> usize {
        self.slots.binary_search(v).expect("every variable has a slot")
    }

    fn compile(&mut self, phi: &FoFormula) -> Result<usize, SemanticsError> {
        let node = match phi {
            FoFormula::True => FoNode::True,
            FoFormula::False => FoNode::False,
            FoFormula::Atom { pred, var } => {
                FoNode::Atom { mask: predicate_mask(&self.preds, pred)?, slot: self.slot(var) }
            }
            FoFormula::Bin { pred, left, right } => {
                let (l, r) = (self.slot(left), self.slot(right));
                let kind = match pred {
                    BinaryPredicate::Eq => OrderKind::Eq,
                    BinaryPredicate::Neq => OrderKind::Neq,
                    BinaryPredicate::Le => OrderKind::Le,
                    BinaryPredicate::Lt => OrderKind::Lt,
                    BinaryPredicate::Succ => OrderKind::Succ,
                    BinaryPredicate::NotSucc => OrderKind::NotSucc,
                    BinaryPredicate::Between(g) => {
                        let table = guard_table(g, &self.preds)?;
                        self.guards.push(table);
                        let node = FoNode::Between { table: self.guards.len() - 1, l, r };
                        self.nodes.push(node);
                        return Ok(self.nodes.len() - 1);
                    }
                };
                FoNode::Order { pred: kind, l, r }
            }
            FoFormula::And(a, b) => {
                let (a, b) = (self.compile(a)?, self.compile(b)?);
                FoNode::And(a, b)
            }
            FoFormula::Or(a, b) => {
                let (a, b) = (self.compile(a)?, self.compile(b)?);
                FoNode::Or(a, b)
            }
            FoFormula::Not(a) => FoNode::Not(self.compile(a)?),
            FoFormula::Exists(v, a) => FoNode::Exists(self.slot(v), self.compile(a)?),
            FoFormula::Forall(v, a) => FoNode::Forall(self.slot(v), self.compile(a)?),
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    /// Free variables in the order expected by [`FoEvaluator::eval`].
    pub fn free_vars(&self) -> Vec<Var> {
        self.free.iter().map(|&s| self.slots[s].clone()).collect()
    }

    pub fn predicates(&self) -> &PredicateSet {
        &self.preds
    }

    /// Evaluates with the free variables (in [`FoEvaluator::free_vars`] order)
    /// at `positions`. Positions are not bounds-checked.
    pub fn eval(&self, word: &[Letter], positions: &[usize]) -> bool {
        let mut env = vec![0usize; self.slots.len()];
        for (&slot, &p) in self.free.iter().zip(positions) {
            env[slot] = p;
        }
        self.eval_node(self.root, word, &mut env)
    }

    fn eval_node(&self, n: usize, w: &[Letter], env: &mut [usize]) -> bool {
        match self.nodes[n] {
            FoNode::True => true,
            FoNode::False => false,
            FoNode::Atom { mask, slot } => w[env[slot]].bits() & mask != 0,
            FoNode::Order { pred, l, r } => {
                let (i, j) = (env[l], env[r]);
                match pred {
                    OrderKind::Eq => i == j,
                    OrderKind::Neq => i != j,
                    OrderKind::Le => i <= j,
                    OrderKind::Lt => i < j,
                    OrderKind::Succ => j == i + 1,
                    OrderKind::NotSucc => j != i + 1,
                }
            }
            FoNode::Between { table, l, r } => {
                let (lo, hi) = (env[l].min(env[r]), env[l].max(env[r]));
                let t = &self.guards[table];
                (lo + 1..hi).any(|k| t[w[k].index()])
            }
            FoNode::And(a, b) => self.eval_node(a, w, env) && self.eval_node(b, w, env),
            FoNode::Or(a, b) => self.eval_node(a, w, env) || self.eval_node(b, w, env),
            FoNode::Not(a) => !self.eval_node(a, w, env),
            FoNode::Exists(slot, body) => {
                let saved = env[slot];
                let mut res = false;
                for p in 0..w.len() {
                    env[slot] = p;
                    if self.eval_node(body, w, env) {
                        res = true;
                        break;
                    }
                }
                env[slot] = saved;
                res
            }
            FoNode::Forall(slot, body) => {
                let saved = env[slot];
                let mut res = true;
                for p in 0..w.len() {
                    env[slot] = p;
                    if !self.eval_node(body, w, env) {
                        res = false;
                        break;
                    }
                }
                env[slot] = saved;
                res
            }
        }
    }

    /// Checked evaluation under a named valuation.
    pub fn eval_with(&self, word: &Word, nu: &Valuation) -> Result<bool, SemanticsError> {
        if word.predicates() != &self.preds {
            return Err(WordError::PredicateMismatch {
                left: self.preds.to_string(),
                right: word.predicates().to_string(),
            }
            .into());
        }
        let mut positions = Vec::with_capacity(self.free.len());
        for v in self.free_vars() {
            let p = nu.get(&v).ok_or_else(|| SemanticsError::UnboundVariable(v.to_string()))?;
            if p >= word.len() {
                return Err(SemanticsError::OutOfBounds { var: v.to_string(), pos: p, len: word.len() });
            }
            positions.push(p);
        }
        Ok(self.eval(word.letters(), &positions))
    }
}

/// `(u, ν) ⊨ φ`. Unary atoms test inclusion: `a(x)` holds iff `a ∈ u[ν(x)]`.
pub fn eval_fo(u: &Word, nu: &Valuation, phi: &FoFormula) -> Result<bool, SemanticsError> {
    FoEvaluator::new(phi, u.predicates())?.eval_with(u, nu)
}

#[derive(Clone, Copy, Debug)]
enum TlNode {
    True,
    False,
    Atom(u16),
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
    X(usize),
    Y(usize),
    F(usize),
    G(usize),
    P(usize),
    H(usize),
    U(usize, usize),
    R(usize, usize),
    S(usize, usize),
    Q(usize, usize),
    XU(usize, usize),
    YS(usize, usize),
}

/// A temporal formula compiled against a predicate set; evaluates all
/// positions of a word at once.
#[derive(Clone, Debug)]
pub struct TlEvaluator {
    /// Children precede parents; the root is last.
    nodes: Vec<TlNode>,
    preds: PredicateSet,
}

impl TlEvaluator {
    pub fn new(phi: &TlFormula, preds: &PredicateSet) -> Result<Self, SemanticsError> {
        let mut ev = TlEvaluator { nodes: Vec::new(), preds: preds.clone() };
        ev.compile(phi)?;
        Ok(ev)
    }

    fn compile(&mut self, phi: &TlFormula) -> Result<usize, SemanticsError> {
        let kids: Vec<usize> = phi.children().into_iter().map(|c| self.compile(c)).collect::<Result<_, _>>()?;
        let k = |i: usize| kids[i];
        let node = match phi {
            TlFormula::True => TlNode::True,
            TlFormula::False => TlNode::False,
            TlFormula::Atom(a) => TlNode::Atom(predicate_mask(&self.preds, a)?),
            TlFormula::And(..) => TlNode::And(k(0), k(1)),
            TlFormula::Or(..) => TlNode::Or(k(0), k(1)),
            TlFormula::Not(_) => TlNode::Not(k(0)),
            TlFormula::X(_) => TlNode::X(k(0)),
            TlFormula::Y(_) => TlNode::Y(k(0)),
            TlFormula::F(_) => TlNode::F(k(0)),
            TlFormula::G(_) => TlNode::G(k(0)),
            TlFormula::P(_) => TlNode::P(k(0)),
            TlFormula::H(_) => TlNode::H(k(0)),
            TlFormula::U(..) => TlNode::U(k(0), k(1)),
            TlFormula::R(..) => TlNode::R(k(0), k(1)),
            TlFormula::S(..) => TlNode::S(k(0), k(1)),
            TlFormula::Q(..) => TlNode::Q(k(0), k(1)),
            TlFormula::XU(..) => TlNode::XU(k(0), k(1)),
            TlFormula::YS(..) => TlNode::YS(k(0), k(1)),
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    /// Truth value at every position of `word` (empty for the empty word).
    pub fn eval_positions(&self, word: &[Letter]) -> Vec<bool> {
        let n = word.len();
        let mut t: Vec<Vec<bool>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut v = vec![false; n];
            match *node {
                TlNode::True => v.iter_mut().for_each(|b| *b = true),
                TlNode::False => {}
                TlNode::Atom(m) => {
                    for i in 0..n {
                        v[i] = word[i].bits() & m != 0;
                    }
                }
                TlNode::And(a, b) => {
                    for i in 0..n {
                        v[i] = t[a][i] && t[b][i];
                    }
                }
                TlNode::Or(a, b) => {
                    for i in 0..n {
                        v[i] = t[a][i] || t[b][i];
                    }
                }
                TlNode::Not(a) => {
                    for i in 0..n {
                        v[i] = !t[a][i];
                    }
                }
                TlNode::X(a) => {
                    for i in 0..n.saturating_sub(1) {
                        v[i] = t[a][i + 1];
                    }
                }
                TlNode::Y(a) => {
                    for i in 1..n {
                        v[i] = t[a][i - 1];
                    }
                }
                TlNode::F(a) => {
                    for i in (0..n.saturating_sub(1)).rev() {
                        v[i] = t[a][i + 1] || v[i + 1];
                    }
                }
                TlNode::G(a) => {
                    if n > 0 {
                        v[n - 1] = true;
                    }
                    for i in (0..n.saturating_sub(1)).rev() {
                        v[i] = t[a][i + 1] && v[i + 1];
                    }
                }
                TlNode::P(a) => {
                    for i in 1..n {
                        v[i] = t[a][i - 1] || v[i - 1];
                    }
                }
                TlNode::H(a) => {
                    if n > 0 {
                        v[0] = true;
                    }
                    for i in 1..n {
                        v[i] = t[a][i - 1] && v[i - 1];
                    }
                }
                TlNode::U(a, b) | TlNode::XU(a, b) => {
                    let mut u = vec![false; n];
                    for i in (0..n).rev() {
                        let later = i + 1 < n && u[i + 1];
                        u[i] = t[b][i] || (t[a][i] && later);
                    }
                    if let TlNode::XU(..) = node {
                        for i in 0..n.saturating_sub(1) {
                            v[i] = u[i + 1];
                        }
                    } else {
                        v = u;
                    }
                }
                TlNode::R(a, b) => {
                    // φ R ψ: ψ holds up to and including a position with φ, or forever.
                    for i in (0..n).rev() {
                        let later = i + 1 >= n || v[i + 1];
                        v[i] = t[b][i] && (t[a][i] || later);
                    }
                }
                TlNode::S(a, b) | TlNode::YS(a, b) => {
                    let mut s = vec![false; n];
                    for i in 0..n {
                        let earlier = i > 0 && s[i - 1];
                        s[i] = t[b][i] || (t[a][i] && earlier);
                    }
                    if let TlNode::YS(..) = node {
                        for i in 1..n {
                            v[i] = s[i - 1];
                        }
                    } else {
                        v = s;
                    }
                }
                TlNode::Q(a, b) => {
                    for i in 0..n {
                        let earlier = i == 0 || v[i - 1];
                        v[i] = t[b][i] && (t[a][i] || earlier);
                    }
                }
            }
            t.push(v);
        }
        t.pop().unwrap_or_default()
    }

    /// Value on the empty word under the fixed convention.
    pub fn eval_empty(&self) -> bool {
        let mut t: Vec<bool> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                TlNode::True => true,
                TlNode::False | TlNode::Atom(_) => false,
                TlNode::And(a, b) => t[a] && t[b],
                TlNode::Or(a, b) => t[a] || t[b],
                TlNode::Not(a) => !t[a],
                TlNode::X(_) | TlNode::F(_) | TlNode::U(..) | TlNode::XU(..) => false,
                TlNode::Y(_) | TlNode::P(_) | TlNode::S(..) | TlNode::YS(..) => false,
                TlNode::G(_) | TlNode::H(_) | TlNode::R(..) | TlNode::Q(..) => true,
            };
            t.push(v);
        }
        t.pop().unwrap_or(true)
    }

    /// `u ⊨ φ`: the value at position 0, or the empty-word convention.
    pub fn eval_word(&self, word: &[Letter]) -> bool {
        if word.is_empty() {
            self.eval_empty()
        } else {
            self.eval_positions(word)[0]
        }
    }
}

/// `u, i ⊨ φ`.
pub fn eval_tl_at(u: &Word, i: usize, phi: &TlFormula) -> Result<bool, SemanticsError> {
    if i >= u.len() {
        return Err(SemanticsError::PositionOutOfBounds { pos: i, len: u.len() });
    }
    Ok(TlEvaluator::new(phi, u.predicates())?.eval_positions(u.letters())[i])
}

/// `u ⊨ φ`, i.e. `u, 0 ⊨ φ` on non-empty words. On the empty word `⊤`, `G`,
/// `H`, `R`, `Q` are true, atoms, `⊥`, `X`, `Y`, `F`, `P`, `U`, `S` are false,
/// and the Boolean connectives are compositional.
pub fn eval_ltl(u: &Word, phi: &TlFormula) -> Result<bool, SemanticsError> {
    Ok(TlEvaluator::new(phi, u.predicates())?.eval_word(u.letters()))
}

/// Outcome of a bounded language comparison.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EquivResult {
    Equivalent,
    Counterexample(Word),
}

impl EquivResult {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivResult::Equivalent)
    }

    pub fn counterexample(&self) -> Option<&Word> {
        match self {
            EquivResult::Equivalent => None,
            EquivResult::Counterexample(w) => Some(w),
        }
    }
}

impl fmt::Display for EquivResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivResult::Equivalent => f.write_str("equivalent up to bound"),
            EquivResult::Counterexample(w) => write!(f, "counterexample {w}"),
        }
    }
}

/// Compares two word predicates on every word of length `≤ max_len` and
/// reports the first disagreement in enumeration order.
pub fn equiv_bruteforce(
    c1: impl Fn(&Word) -> bool,
    c2: impl Fn(&Word) -> bool,
    preds: &PredicateSet,
    max_len: usize,
    nonempty_only: bool,
    cap: u64,
) -> Result<EquivResult, WordError> {
    for w in enumerate_words(preds, max_len, cap)? {
        if nonempty_only && w.is_empty() {
            continue;
        }
        if c1(&w) != c2(&w) {
            return Ok(EquivResult::Counterexample(w));
        }
    }
    Ok(EquivResult::Equivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_fo, parse_tl, Signature};
    use crate::words::{parse_word, DEFAULT_MAX_WORDS};

    fn abc() -> PredicateSet {
        PredicateSet::parse("a,b,c").unwrap()
    }

    fn w(s: &str, p: &PredicateSet) -> Word {
        parse_word(s, p).unwrap()
    }

    /// Direct reading of the position clauses, independent of the evaluator.
    fn naive_at(u: &[Letter], i: usize, f: &TlFormula, p: &PredicateSet) -> bool {
        let n = u.len();
        let at = |j: usize, g: &TlFormula| naive_at(u, j, g, p);
        match f {
            TlFormula::True => true,
            TlFormula::False => false,
            TlFormula::Atom(a) => u[i].contains(p.index_of(a).unwrap()),
            TlFormula::And(a, b) => at(i, a) && at(i, b),
            TlFormula::Or(a, b) => at(i, a) || at(i, b),
            TlFormula::Not(a) => !at(i, a),
            TlFormula::X(a) => i + 1 < n && at(i + 1, a),
            TlFormula::Y(a) => i > 0 && at(i - 1, a),
            TlFormula::F(a) => (i + 1..n).any(|j| at(j, a)),
            TlFormula::G(a) => (i + 1..n).all(|j| at(j, a)),
            TlFormula::P(a) => (0..i).any(|j| at(j, a)),
            TlFormula::H(a) => (0..i).all(|j| at(j, a)),
            TlFormula::U(a, b) => (i..n).any(|j| at(j, b) && (i..j).all(|k| at(k, a))),
            TlFormula::R(a, b) => {
                (i..n).any(|j| at(j, a) && (i..=j).all(|k| at(k, b))) || (i..n).all(|k| at(k, b))
            }
            TlFormula::S(a, b) => (0..=i).any(|j| at(j, b) && (j + 1..=i).all(|k| at(k, a))),
            TlFormula::Q(a, b) => {
                (0..=i).any(|j| at(j, a) && (j..=i).all(|k| at(k, b))) || (0..=i).all(|k| at(k, b))
            }
            TlFormula::XU(a, b) => at(i, &TlFormula::next(TlFormula::until((**a).clone(), (**b).clone()))),
            TlFormula::YS(a, b) => at(i, &TlFormula::yesterday(TlFormula::since((**a).clone(), (**b).clone()))),
        }
    }

    #[test]
    fn fo_example_verdicts() {
        let p = abc();
        let phi = parse_fo("exists x. forall y. (x=y | !a(y))", &Signature::b0()).unwrap();
        assert!(!eval_fo(&w("{a}{a,b}", &p), &Valuation::new(), &phi).unwrap());
        assert!(eval_fo(&w("{a,b,c}{b}{}", &p), &Valuation::new(), &phi).unwrap());
        let all_a = parse_fo("forall y. a(y)", &Signature::b0()).unwrap();
        assert!(eval_fo(&Word::empty(p.clone()), &Valuation::new(), &all_a).unwrap());
    }

    #[test]
    fn fo_valuation_errors() {
        let p = abc();
        let f = parse_fo("a(x)", &Signature::b0()).unwrap();
        let u = w("{a}", &p);
        assert!(matches!(eval_fo(&u, &Valuation::new(), &f), Err(SemanticsError::UnboundVariable(_))));
        assert!(matches!(eval_fo(&u, &Valuation::new().with("x", 1), &f), Err(SemanticsError::OutOfBounds { .. })));
        assert!(eval_fo(&u, &Valuation::new().with("x", 0), &f).unwrap());
        let g = parse_fo("d(x)", &Signature::b0()).unwrap();
        assert!(matches!(eval_fo(&u, &Valuation::new().with("x", 0), &g), Err(SemanticsError::UnknownPredicate(_))));
    }

    #[test]
    fn between_is_strict_and_symmetric() {
        let p = abc();
        let f = parse_fo("btw[a & !b](x,y)", &Signature::b0_between()).unwrap();
        let u = w("{}{a}{a,b}{}", &p);
        let at = |i, j| eval_fo(&u, &Valuation::new().with("x", i).with("y", j), &f).unwrap();
        assert!(at(0, 2));
        assert!(at(2, 0));
        assert!(!at(0, 1));
        assert!(!at(1, 3));
        assert!(!at(1, 1));
    }

    #[test]
    fn tl_position_examples() {
        let p = PredicateSet::parse("a,b").unwrap();
        let u = w("{a}{b}", &p);
        let xb = parse_tl("X b").unwrap();
        assert!(eval_tl_at(&u, 0, &xb).unwrap());
        assert!(!eval_tl_at(&u, 1, &xb).unwrap());
        assert!(eval_tl_at(&w("{a}{a}{b}", &p), 0, &parse_tl("a U b").unwrap()).unwrap());
        assert!(matches!(eval_tl_at(&u, 2, &xb), Err(SemanticsError::PositionOutOfBounds { .. })));
    }

    #[test]
    fn ltl_empty_word_convention() {
        let p = PredicateSet::parse("a").unwrap();
        let e = Word::empty(p.clone());
        let at = |s: &str| eval_ltl(&e, &parse_tl(s).unwrap()).unwrap();
        assert!(eval_ltl(&w("{a}", &p), &parse_tl("a").unwrap()).unwrap());
        for s in ["true", "G a", "a R a", "H a", "a Q a", "!a", "G a & true"] {
            assert!(at(s), "{s}");
        }
        for s in ["false", "a", "X a", "F a", "a U a", "Y a", "P a", "a S a", "a XU a", "a YS a"] {
            assert!(!at(s), "{s}");
        }
    }

    #[test]
    fn evaluator_matches_naive_clauses() {
        use crate::formulas::{enumerate_tl, TlOp};
        let p = PredicateSet::parse("a,b").unwrap();
        let words: Vec<Word> = enumerate_words(&p, 3, DEFAULT_MAX_WORDS).unwrap().collect();
        let ops = [
            TlOp::Not,
            TlOp::X,
            TlOp::Y,
            TlOp::F,
            TlOp::G,
            TlOp::P,
            TlOp::H,
            TlOp::And,
            TlOp::U,
            TlOp::R,
            TlOp::S,
            TlOp::Q,
            TlOp::XU,
            TlOp::YS,
        ];
        enumerate_tl(&["a", "b"], &ops, 3, |f| {
            let ev = TlEvaluator::new(f, &p).unwrap();
            for u in &words {
                let got = ev.eval_positions(u.letters());
                for (i, g) in got.iter().enumerate() {
                    assert_eq!(*g, naive_at(u.letters(), i, f, &p), "{f} on {u} at {i}");
                }
            }
        });
    }

    #[test]
    fn release_and_q_dualities() {
        let p = PredicateSet::parse("a,b").unwrap();
        let words: Vec<Word> = enumerate_words(&p, 4, DEFAULT_MAX_WORDS).unwrap().filter(|u| !u.is_empty()).collect();
        let pairs = [
            ("a R b", "!(!a U !b)"),
            ("a Q b", "!(!a S !b)"),
            ("a XU b", "X (a U b)"),
            ("a YS b", "Y (a S b)"),
            ("F a", "true XU a"),
            ("P a", "true YS a"),
            ("G a", "!F !a"),
            ("H a", "!P !a"),
            ("a Q b", "(b S (b & a)) | (b & H b)"),
        ];
        for (l, r) in pairs {
            let (fl, fr) = (parse_tl(l).unwrap(), parse_tl(r).unwrap());
            for u in &words {
                for i in 0..u.len() {
                    assert_eq!(eval_tl_at(u, i, &fl).unwrap(), eval_tl_at(u, i, &fr).unwrap(), "{l} vs {r} on {u}@{i}");
                }
            }
        }
    }

    #[test]
    fn equiv_oracle_examples() {
        let p = PredicateSet::parse("a").unwrap();
        let ltl = |s: &str| {
            let f = parse_tl(s).unwrap();
            move |u: &Word| eval_ltl(u, &f).unwrap()
        };
        let r = equiv_bruteforce(ltl("F a"), ltl("true XU a"), &p, 4, false, DEFAULT_MAX_WORDS).unwrap();
        assert!(r.is_equivalent());
        // Strict F does not look at the current position.
        let r = equiv_bruteforce(ltl("F a"), ltl("true U a"), &p, 4, false, DEFAULT_MAX_WORDS).unwrap();
        assert_eq!(r.counterexample().unwrap().to_string(), "{a}");
        let r = equiv_bruteforce(ltl("a"), ltl("X a"), &p, 2, false, DEFAULT_MAX_WORDS).unwrap();
        assert_eq!(r.counterexample().unwrap().to_string(), "{a}");
        let r = equiv_bruteforce(ltl("a U X a"), ltl("a U X a"), &p, 5, false, DEFAULT_MAX_WORDS).unwrap();
        assert!(r.is_equivalent());
    }
}
