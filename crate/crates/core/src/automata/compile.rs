//! Automata for temporal and first-order formulas.
//!
//! Temporal formulas go through a tableau: a state is the truth assignment of
//! every subformula at the position just read. Past operators are computed
//! from the previous state, future operators are guessed and checked against
//! the next one, and the end of the word checks the remaining obligations.
//!
//! First-order formulas are compiled bottom-up over an extended alphabet in
//! which each bound variable owns one bit (its track) marking its position.
//! Automata for subformulas are only meaningful on words whose tracks each
//! carry exactly one mark; quantifiers intersect with that condition for the
//! track they remove, then project and determinize.

use std::collections::HashMap;

use super::raw::{subset_construction, RawDfa, RawNfa};
use super::{AutomataError, Dfa, Nfa, DEFAULT_MAX_STATES};
use crate::formulas::{BinaryPredicate, FoFormula, TlFormula, Var};
use crate::semantics::{guard_table, predicate_mask, TlEvaluator};
use crate::words::PredicateSet;

#[derive(Clone, Copy, Debug)]
enum Node {
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
}

impl Node {
    fn is_future(self) -> bool {
        matches!(self, Node::X(_) | Node::F(_) | Node::G(_) | Node::U(..) | Node::R(..))
    }
}

struct Tableau {
    nodes: Vec<Node>,
    future: Vec<usize>,
    words: usize,
}

type Bits = Vec<u64>;

#[inline]
fn get(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn put(b: &mut [u64], i: usize, v: bool) {
    if v {
        b[i / 64] |= 1 << (i % 64);
    }
}

impl Tableau {
    fn new(phi: &TlFormula, preds: &PredicateSet) -> Result<Self, AutomataError> {
        let mut t = Tableau { nodes: Vec::new(), future: Vec::new(), words: 0 };
        let mut memo = HashMap::new();
        t.add(&phi.desugar(), preds, &mut memo)?;
        t.future = (0..t.nodes.len()).filter(|&i| t.nodes[i].is_future()).collect();
        t.words = t.nodes.len().div_ceil(64);
        Ok(t)
    }

    fn add(
        &mut self,
        phi: &TlFormula,
        preds: &PredicateSet,
        memo: &mut HashMap<TlFormula, usize>,
    ) -> Result<usize, AutomataError> {
        if let Some(&i) = memo.get(phi) {
            return Ok(i);
        }
        let kids: Vec<usize> =
            phi.children().into_iter().map(|c| self.add(c, preds, memo)).collect::<Result<_, _>>()?;
        let k = |i: usize| kids[i];
        let node = match phi {
            TlFormula::True => Node::True,
            TlFormula::False => Node::False,
            TlFormula::Atom(a) => {
                Node::Atom(predicate_mask(preds, a).map_err(|_| AutomataError::UnknownPredicate(a.clone()))?)
            }
            TlFormula::And(..) => Node::And(k(0), k(1)),
            TlFormula::Or(..) => Node::Or(k(0), k(1)),
            TlFormula::Not(_) => Node::Not(k(0)),
            TlFormula::X(_) => Node::X(k(0)),
            TlFormula::Y(_) => Node::Y(k(0)),
            TlFormula::F(_) => Node::F(k(0)),
            TlFormula::G(_) => Node::G(k(0)),
            TlFormula::P(_) => Node::P(k(0)),
            TlFormula::H(_) => Node::H(k(0)),
            TlFormula::U(..) => Node::U(k(0), k(1)),
            TlFormula::R(..) => Node::R(k(0), k(1)),
            TlFormula::S(..) => Node::S(k(0), k(1)),
            TlFormula::Q(..) => Node::Q(k(0), k(1)),
            TlFormula::XU(..) | TlFormula::YS(..) => unreachable!("desugared"),
        };
        self.nodes.push(node);
        memo.insert(phi.clone(), self.nodes.len() - 1);
        Ok(self.nodes.len() - 1)
    }

    /// Assignment at a position with letter `bits`, given the previous
    /// position's assignment and a guess for the future nodes.
    fn assign(&self, prev: Option<&[u64]>, bits: u16, guess: u64) -> Bits {
        let mut cur = vec![0u64; self.words];
        let mut g = 0;
        let was = |i: usize| prev.map(|p| get(p, i));
        for (i, &node) in self.nodes.iter().enumerate() {
            let c = |j: usize| get(&cur, j);
            let v = match node {
                Node::True => true,
                Node::False => false,
                Node::Atom(m) => bits & m != 0,
                Node::And(a, b) => c(a) && c(b),
                Node::Or(a, b) => c(a) || c(b),
                Node::Not(a) => !c(a),
                Node::Y(a) => was(a).unwrap_or(false),
                Node::P(a) => prev.is_some_and(|p| get(p, a) || get(p, i)),
                Node::H(a) => prev.is_none_or(|p| get(p, a) && get(p, i)),
                Node::S(a, b) => c(b) || (c(a) && was(i).unwrap_or(false)),
                Node::Q(a, b) => c(b) && (c(a) || was(i).unwrap_or(true)),
                _ => {
                    g += 1;
                    guess >> (g - 1) & 1 == 1
                }
            };
            put(&mut cur, i, v);
        }
        cur
    }

    /// Future obligations of `a` are met by the next assignment `b`.
    fn consistent(&self, a: &[u64], b: &[u64]) -> bool {
        self.future.iter().all(|&i| {
            let want = match self.nodes[i] {
                Node::X(x) => get(b, x),
                Node::F(x) => get(b, x) || get(b, i),
                Node::G(x) => get(b, x) && get(b, i),
                Node::U(x, y) => get(a, y) || (get(a, x) && get(b, i)),
                Node::R(x, y) => get(a, y) && (get(a, x) || get(b, i)),
                _ => unreachable!(),
            };
            get(a, i) == want
        })
    }

    /// Future obligations of `a` hold at the last position.
    fn final_ok(&self, a: &[u64]) -> bool {
        self.future.iter().all(|&i| {
            let want = match self.nodes[i] {
                Node::X(_) | Node::F(_) => false,
                Node::G(_) => true,
                Node::U(_, y) | Node::R(_, y) => get(a, y),
                _ => unreachable!(),
            };
            get(a, i) == want
        })
    }
}

pub fn compile_tl(phi: &TlFormula, preds: &PredicateSet) -> Result<Nfa, AutomataError> {
    compile_tl_capped(phi, preds, DEFAULT_MAX_STATES)
}

/// Tableau automaton for `φ` read at the first position. State 0 is the
/// start state; every other state is an assignment.
pub fn compile_tl_capped(phi: &TlFormula, preds: &PredicateSet, cap: usize) -> Result<Nfa, AutomataError> {
    let t = Tableau::new(phi, preds)?;
    if t.future.len() > 24 {
        return Err(AutomataError::ResourceCap { what: "future subformulas", count: t.future.len(), cap: 24 });
    }
    let root = t.nodes.len() - 1;
    let empty_ok = TlEvaluator::new(phi, preds).map_err(|e| AutomataError::UnknownPredicate(e.to_string()))?.eval_empty();
    let nsym = preds.alphabet_size();
    let guesses = 1u64 << t.future.len();

    let mut index: HashMap<Bits, u32> = HashMap::new();
    let mut states: Vec<Bits> = vec![Vec::new()];
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); nsym];
    let mut intern = |b: Bits, states: &mut Vec<Bits>, succ: &mut Vec<Vec<u32>>| -> Result<u32, AutomataError> {
        if let Some(&id) = index.get(&b) {
            return Ok(id);
        }
        let id = states.len() as u32;
        index.insert(b.clone(), id);
        states.push(b);
        succ.extend(std::iter::repeat_with(Vec::new).take(nsym));
        if states.len() > cap {
            return Err(AutomataError::ResourceCap { what: "tableau states", count: states.len(), cap });
        }
        Ok(id)
    };
    let mut i = 0;
    while i < states.len() {
        for s in 0..nsym {
            let mut targets = Vec::new();
            for g in 0..guesses {
                let next = if i == 0 {
                    let b = t.assign(None, s as u16, g);
                    if !get(&b, root) {
                        continue;
                    }
                    b
                } else {
                    let b = t.assign(Some(&states[i]), s as u16, g);
                    if !t.consistent(&states[i], &b) {
                        continue;
                    }
                    b
                };
                targets.push(intern(next, &mut states, &mut succ)?);
            }
            targets.sort_unstable();
            targets.dedup();
            succ[i * nsym + s] = targets;
        }
        i += 1;
    }
    let accepting = states.iter().enumerate().map(|(i, b)| if i == 0 { empty_ok } else { t.final_ok(b) }).collect();
    Ok(Nfa::from_raw(preds, RawNfa { nsym, initial: vec![0], accepting, succ }))
}

pub fn compile_fo(phi: &FoFormula, preds: &PredicateSet) -> Result<Dfa, AutomataError> {
    compile_fo_capped(phi, preds, DEFAULT_MAX_STATES)
}

/// Minimal DFA of the sentence `φ`.
pub fn compile_fo_capped(phi: &FoFormula, preds: &PredicateSet, cap: usize) -> Result<Dfa, AutomataError> {
    let free = phi.free_vars();
    if !free.is_empty() {
        let names: Vec<&str> = free.iter().map(|v| v.name()).collect();
        return Err(AutomataError::FreeVariables(names.join(", ")));
    }
    let mut c = FoCompiler { preds, nbits: preds.len(), scope: Vec::new(), cap };
    let raw = c.build(phi)?;
    Ok(Dfa::from_raw(preds, raw))
}

struct FoCompiler<'a> {
    preds: &'a PredicateSet,
    nbits: usize,
    scope: Vec<Var>,
    cap: usize,
}

/// Relative placement of two marked positions, as seen by the atom DFAs.
#[derive(Clone, Copy)]
enum Placement {
    Same,
    LeftFirst { adjacent: bool, guard: bool },
    RightFirst { adjacent: bool, guard: bool },
}

impl FoCompiler<'_> {
    fn nsym(&self) -> usize {
        1 << (self.nbits + self.scope.len())
    }

    fn track(&self, v: &Var) -> usize {
        self.scope.iter().rposition(|s| s == v).expect("closed formula")
    }

    fn marks(&self, sym: usize, track: usize) -> bool {
        sym >> (self.nbits + track) & 1 == 1
    }

    fn letter(&self, sym: usize) -> usize {
        sym & ((1 << self.nbits) - 1)
    }

    fn build(&mut self, phi: &FoFormula) -> Result<RawDfa, AutomataError> {
        let nsym = self.nsym();
        if self.nbits + self.scope.len() > 20 {
            return Err(AutomataError::ResourceCap { what: "alphabet bits", count: self.nbits + self.scope.len(), cap: 20 });
        }
        let out = match phi {
            FoFormula::True => RawDfa::constant(nsym, true),
            FoFormula::False => RawDfa::constant(nsym, false),
            FoFormula::Atom { pred, var } => {
                let mask = predicate_mask(self.preds, pred).map_err(|_| AutomataError::UnknownPredicate(pred.clone()))?;
                let t = self.track(var);
                // 0 waiting, 1 accept, 2 reject
                let mut delta = Vec::with_capacity(3 * nsym);
                for q in 0..3u32 {
                    for s in 0..nsym {
                        delta.push(match q {
                            0 if self.marks(s, t) => {
                                if self.letter(s) as u16 & mask != 0 {
                                    1
                                } else {
                                    2
                                }
                            }
                            _ => q,
                        });
                    }
                }
                RawDfa { nsym, initial: 0, accepting: vec![false, true, false], delta }
            }
            FoFormula::Bin { pred, left, right } => self.binary(pred, left, right)?,
            FoFormula::And(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                a.product(&b, |x, y| x && y, self.cap)?.minimize()
            }
            FoFormula::Or(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                a.product(&b, |x, y| x || y, self.cap)?.minimize()
            }
            FoFormula::Not(a) => self.build(a)?.complement(),
            FoFormula::Exists(v, body) => self.quantify(v, body, false)?,
            FoFormula::Forall(v, body) => self.quantify(v, body, true)?,
        };
        Ok(out)
    }

    fn quantify(&mut self, v: &Var, body: &FoFormula, universal: bool) -> Result<RawDfa, AutomataError> {
        self.scope.push(v.clone());
        let t = self.scope.len() - 1;
        let inner = self.build(body);
        let nsym = self.nsym();
        self.scope.pop();
        let mut inner = inner?;
        if universal {
            inner = inner.complement();
        }
        // 0 unmarked so far, 1 marked once, 2 marked twice
        let mut once = Vec::with_capacity(3 * nsym);
        for q in 0..3u32 {
            for s in 0..nsym {
                let m = s >> (self.nbits + t) & 1 == 1;
                once.push(match (q, m) {
                    (0, true) => 1,
                    (1, true) | (2, _) => 2,
                    _ => q,
                });
            }
        }
        let once = RawDfa { nsym, initial: 0, accepting: vec![false, true, false], delta: once };
        let valid = inner.product(&once, |a, b| a && b, self.cap)?;
        let half = nsym / 2;
        let projected = subset_construction(
            half,
            vec![valid.initial],
            |q| valid.accepting[q as usize],
            |q, s, out| {
                out.push(valid.step(q, s));
                out.push(valid.step(q, s + half));
            },
            self.cap,
        )?
        .minimize();
        Ok(if universal { projected.complement() } else { projected })
    }

    fn binary(&self, pred: &BinaryPredicate, left: &Var, right: &Var) -> Result<RawDfa, AutomataError> {
        let nsym = self.nsym();
        let (tl, tr) = (self.track(left), self.track(right));
        let guard: Option<Vec<bool>> = match pred {
            BinaryPredicate::Between(g) => Some(guard_table(g, self.preds).map_err(|e| match e {
                crate::SemanticsError::UnknownPredicate(p) => AutomataError::UnknownPredicate(p),
                other => AutomataError::UnknownPredicate(other.to_string()),
            })?),
            _ => None,
        };
        let truth = |p: Placement| -> bool {
            match (&guard, p) {
                (Some(_), Placement::Same) => false,
                (Some(_), Placement::LeftFirst { guard, .. } | Placement::RightFirst { guard, .. }) => guard,
                (None, p) => {
                    let (i, j) = match p {
                        Placement::Same => (0, 0),
                        Placement::LeftFirst { adjacent, .. } => (0, if adjacent { 1 } else { 2 }),
                        Placement::RightFirst { adjacent, .. } => (if adjacent { 1 } else { 2 }, 0),
                    };
                    pred.holds_on(i, j).expect("order predicate")
                }
            }
        };
        if tl == tr {
            return Ok(RawDfa::constant(nsym, truth(Placement::Same)));
        }
        // 0 start; 1,2,3 left seen (just now / far without guard / far with
        // guard); 4,5,6 the same for right; 7 accept; 8 reject.
        let verdict = |p: Placement| if truth(p) { 7 } else { 8 };
        let mut delta = Vec::with_capacity(9 * nsym);
        for q in 0..9u32 {
            for s in 0..nsym {
                let (ml, mr) = (self.marks(s, tl), self.marks(s, tr));
                let g = guard.as_ref().is_some_and(|t| t[self.letter(s)]);
                let far = |base: u32, seen: bool| if seen || g { base + 2 } else { base + 1 };
                delta.push(match q {
                    0 => match (ml, mr) {
                        (true, true) => verdict(Placement::Same),
                        (true, false) => 1,
                        (false, true) => 4,
                        (false, false) => 0,
                    },
                    1..=3 if mr => verdict(Placement::LeftFirst { adjacent: q == 1, guard: q == 3 }),
                    1..=3 => far(1, q == 3),
                    4..=6 if ml => verdict(Placement::RightFirst { adjacent: q == 4, guard: q == 6 }),
                    4..=6 => far(4, q == 6),
                    _ => q,
                });
            }
        }
        let mut accepting = vec![false; 9];
        accepting[7] = true;
        Ok(RawDfa { nsym, initial: 0, accepting, delta })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_fo, parse_tl, Signature};
    use crate::semantics::{eval_fo, FoEvaluator, Valuation};
    use crate::words::{enumerate_words, Word};

    fn abc() -> PredicateSet {
        PredicateSet::parse("a,b,c").unwrap()
    }

    #[test]
    fn tl_examples() {
        let p = PredicateSet::parse("a,b").unwrap();
        let n = compile_tl(&parse_tl("F a").unwrap(), &p).unwrap();
        let w = |s: &str| Word::parse(s, &p).unwrap();
        assert!(n.accepts(&w("{b}{a}")).unwrap());
        assert!(!n.accepts(&w("{b}{b}")).unwrap());
        assert!(!n.accepts(&w("{a}")).unwrap());
        let g = compile_tl(&parse_tl("G a").unwrap(), &p).unwrap();
        assert!(g.accepts(&w("")).unwrap());
        assert!(g.accepts(&w("{}")).unwrap());
    }

    #[test]
    fn fo_matches_tl_on_eventually() {
        let p = PredicateSet::parse("a,b").unwrap();
        let f = compile_fo(&parse_fo("exists x. exists y. x<y & a(y)", &Signature::b0()).unwrap(), &p).unwrap();
        let t = compile_tl(&parse_tl("F a").unwrap(), &p).unwrap().determinize().unwrap();
        assert!(f.is_equiv(&t).unwrap());
        let e = compile_fo(&parse_fo("exists x. a(x)", &Signature::b0()).unwrap(), &p).unwrap();
        let t = compile_tl(&parse_tl("a | F a").unwrap(), &p).unwrap().determinize().unwrap();
        assert!(e.is_equiv(&t).unwrap());
    }

    #[test]
    fn fo_example_verdicts() {
        // Non-empty words with at most one letter containing a.
        let p = abc();
        let phi = parse_fo("exists x. forall y. (x=y | !a(y))", &Signature::b0()).unwrap();
        let d = compile_fo(&phi, &p).unwrap();
        assert!(!d.accepts(&Word::parse("{a}{a,b}", &p).unwrap()).unwrap());
        assert!(d.accepts(&Word::parse("{a,b,c}{b}{}", &p).unwrap()).unwrap());
        for w in enumerate_words(&p, 3, 10_000).unwrap() {
            assert_eq!(d.accepts(&w).unwrap(), eval_fo(&w, &Valuation::new(), &phi).unwrap(), "{w}");
        }
    }

    #[test]
    fn fo_between_and_shadowing() {
        let p = abc();
        let sig = Signature::b0_between();
        for s in [
            "exists x. exists y. btw[a & !b](x,y)",
            "exists x. (a(x) & exists x. b(x))",
            "forall x. exists y. (S(x,y) | y<=x & !S(y,x))",
            "exists x. exists y. (x<y & !S(x,y) & forall x. (!btw[c](x,y) | a(x)))",
        ] {
            let phi = parse_fo(s, &sig).unwrap();
            let d = compile_fo(&phi, &p).unwrap();
            let ev = FoEvaluator::new(&phi, &p).unwrap();
            for w in enumerate_words(&p, 4, 10_000).unwrap() {
                assert_eq!(d.accepts(&w).unwrap(), ev.eval(w.letters(), &[]), "{s} on {w}");
            }
        }
    }

    #[test]
    fn fo_errors() {
        let p = abc();
        let open = parse_fo("a(x)", &Signature::b0()).unwrap();
        assert!(matches!(compile_fo(&open, &p), Err(AutomataError::FreeVariables(_))));
        let unknown = parse_fo("exists x. d(x)", &Signature::b0()).unwrap();
        assert!(matches!(compile_fo(&unknown, &p), Err(AutomataError::UnknownPredicate(_))));
        let deep = parse_fo("exists x. exists y. exists z. x<y & y<z", &Signature::b0()).unwrap();
        assert!(matches!(compile_fo_capped(&deep, &p, 3), Err(AutomataError::ResourceCap { .. })));
    }
}
