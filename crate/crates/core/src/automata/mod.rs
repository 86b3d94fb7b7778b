//! Finite automata over powerset alphabets.
//!
//! The alphabet of an automaton over a predicate set `Σ` is the full
//! powerset of `Σ`; transitions are labelled with [`Letter`]s.

mod closure;
mod compile;
mod raw;

use std::fmt;

use thiserror::Error;

use crate::words::{parse_word, Letter, PredicateSet, Word, WordError};

pub use closure::{
    downward_closure, dual_closure, is_monotone_automaton, monotone_closure, upward_closure_dfa, Monotonicity,
};
pub use compile::{compile_fo, compile_fo_capped, compile_tl, compile_tl_capped};
pub(crate) use raw::{RawDfa, RawNfa};

/// Default cap on the number of states any single construction may create.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("{what}: {count} exceeds the cap of {cap}")]
    ResourceCap { what: &'static str, count: usize, cap: usize },
    #[error("formula has free variables: {0}")]
    FreeVariables(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a complete DFA: {0}")]
    NotDeterministic(String),
    #[error("state {state} out of range (automaton has {states} states)")]
    StateOutOfRange { state: usize, states: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

fn same_preds(a: &PredicateSet, b: &PredicateSet) -> Result<(), AutomataError> {
    if a == b {
        Ok(())
    } else {
        Err(WordError::PredicateMismatch { left: a.to_string(), right: b.to_string() }.into())
    }
}

fn word_of(preds: &PredicateSet, syms: Vec<usize>) -> Word {
    Word::new(preds.clone(), syms.into_iter().map(|s| Letter::from_bits(s as u16)).collect())
}

fn symbols(word: &[Letter]) -> impl Iterator<Item = usize> + '_ {
    word.iter().map(|l| l.index())
}

/// A nondeterministic automaton.
#[derive(Clone, PartialEq, Eq)]
pub struct Nfa {
    preds: PredicateSet,
    raw: RawNfa,
}

impl Nfa {
    /// An automaton with `states` states, no initial or accepting state and
    /// no transitions.
    pub fn new(preds: &PredicateSet, states: usize) -> Self {
        let nsym = preds.alphabet_size();
        Nfa {
            preds: preds.clone(),
            raw: RawNfa { nsym, initial: Vec::new(), accepting: vec![false; states], succ: vec![Vec::new(); states * nsym] },
        }
    }

    pub(crate) fn from_raw(preds: &PredicateSet, raw: RawNfa) -> Self {
        debug_assert_eq!(raw.nsym, preds.alphabet_size());
        Nfa { preds: preds.clone(), raw }
    }

    pub fn predicates(&self) -> &PredicateSet {
        &self.preds
    }

    pub fn state_count(&self) -> usize {
        self.raw.states()
    }

    pub fn add_state(&mut self) -> usize {
        self.raw.accepting.push(false);
        self.raw.succ.extend(std::iter::repeat_with(Vec::new).take(self.raw.nsym));
        self.raw.states() - 1
    }

    fn check_state(&self, q: usize) -> Result<(), AutomataError> {
        if q < self.state_count() {
            Ok(())
        } else {
            Err(AutomataError::StateOutOfRange { state: q, states: self.state_count() })
        }
    }

    pub fn add_initial(&mut self, q: usize) -> Result<(), AutomataError> {
        self.check_state(q)?;
        if !self.raw.initial.contains(&(q as u32)) {
            self.raw.initial.push(q as u32);
            self.raw.initial.sort_unstable();
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) -> Result<(), AutomataError> {
        self.check_state(q)?;
        self.raw.accepting[q] = accepting;
        Ok(())
    }

    pub fn add_transition(&mut self, from: usize, letter: Letter, to: usize) -> Result<(), AutomataError> {
        self.check_state(from)?;
        self.check_state(to)?;
        let cell = &mut self.raw.succ[from * self.raw.nsym + letter.index()];
        if let Err(pos) = cell.binary_search(&(to as u32)) {
            cell.insert(pos, to as u32);
        }
        Ok(())
    }

    /// Adds `from --ℓ--> to` for every letter `ℓ` accepted by `filter`.
    pub fn add_transitions(&mut self, from: usize, filter: impl Fn(Letter) -> bool, to: usize) -> Result<(), AutomataError> {
        for l in self.preds.letters().filter(|&l| filter(l)).collect::<Vec<_>>() {
            self.add_transition(from, l, to)?;
        }
        Ok(())
    }

    pub fn initial(&self) -> impl Iterator<Item = usize> + '_ {
        self.raw.initial.iter().map(|&q| q as usize)
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.raw.accepting[q]
    }

    pub fn successors(&self, q: usize, letter: Letter) -> impl Iterator<Item = usize> + '_ {
        self.raw.successors(q as u32, letter.index()).iter().map(|&d| d as usize)
    }

    /// All transitions, ordered by source state, letter and target.
    pub fn transitions(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for q in 0..self.state_count() {
            for l in self.preds.letters() {
                out.extend(self.successors(q, l).map(|d| (q, l, d)));
            }
        }
        out
    }

    pub fn accepts_letters(&self, word: &[Letter]) -> bool {
        self.raw.accepts(symbols(word))
    }

    pub fn accepts(&self, word: &Word) -> Result<bool, AutomataError> {
        same_preds(&self.preds, word.predicates())?;
        Ok(self.accepts_letters(word.letters()))
    }

    pub fn shortest_accepted(&self) -> Option<Word> {
        self.raw.shortest_accepted().map(|s| word_of(&self.preds, s))
    }

    pub fn is_empty(&self) -> bool {
        self.raw.shortest_accepted().is_none()
    }

    /// Disjoint union; the language is the union of both languages.
    pub fn union(&self, other: &Nfa) -> Result<Nfa, AutomataError> {
        same_preds(&self.preds, &other.preds)?;
        let shift = self.state_count() as u32;
        let mut raw = self.raw.clone();
        raw.initial.extend(other.raw.initial.iter().map(|&q| q + shift));
        raw.accepting.extend_from_slice(&other.raw.accepting);
        raw.succ.extend(other.raw.succ.iter().map(|ds| ds.iter().map(|&d| d + shift).collect::<Vec<_>>()));
        Ok(Nfa { preds: self.preds.clone(), raw })
    }

    pub fn determinize(&self) -> Result<Dfa, AutomataError> {
        self.determinize_capped(DEFAULT_MAX_STATES)
    }

    pub fn determinize_capped(&self, cap: usize) -> Result<Dfa, AutomataError> {
        Ok(Dfa { preds: self.preds.clone(), raw: self.raw.determinize(cap)? })
    }

    /// Reads the line format described on [`Dfa::parse`].
    pub fn parse(text: &str) -> Result<Nfa, AutomataError> {
        let mut states = None;
        let mut initial = Vec::new();
        let mut accepting = Vec::new();
        let mut preds = None;
        let mut trans = Vec::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            let err = |msg: String| AutomataError::Parse { line: line_no, msg };
            let (key, value) = line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
            let value = value.trim();
            let numbers = |v: &str| -> Result<Vec<usize>, AutomataError> {
                v.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| err(format!("expected a state number, got `{t}`"))))
                    .collect()
            };
            match key.trim() {
                "states" => states = Some(numbers(value)?.first().copied().ok_or_else(|| err("missing count".into()))?),
                "initial" => initial.extend(numbers(value)?),
                "accepting" => accepting.extend(numbers(value)?),
                "predicates" => preds = Some(PredicateSet::parse(value)?),
                "trans" => trans.push((line_no, value.to_string())),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let missing = |what: &str| AutomataError::Parse { line: 0, msg: format!("missing `{what}:` line") };
        let preds = preds.ok_or_else(|| missing("predicates"))?;
        let mut nfa = Nfa::new(&preds, states.ok_or_else(|| missing("states"))?);
        for q in initial {
            nfa.add_initial(q)?;
        }
        for q in accepting {
            nfa.set_accepting(q, true)?;
        }
        for (line, t) in trans {
            let err = |msg: &str| AutomataError::Parse { line, msg: msg.to_string() };
            let open = t.find(['{', 'T']).ok_or_else(|| err("expected `q {letter} q'`"))?;
            let close = if t[open..].starts_with('T') { open } else { t.find('}').ok_or_else(|| err("unterminated letter"))? };
            let from: usize = t[..open].trim().parse().map_err(|_| err("bad source state"))?;
            let to: usize = t[close + 1..].trim().parse().map_err(|_| err("bad target state"))?;
            let w = parse_word(&t[open..=close], &preds)?;
            if w.len() != 1 {
                return Err(err("expected exactly one letter"));
            }
            nfa.add_transition(from, w.letters()[0], to)?;
        }
        Ok(nfa)
    }
}

fn write_header(
    f: &mut fmt::Formatter<'_>,
    states: usize,
    initial: impl Iterator<Item = usize>,
    accepting: impl Iterator<Item = usize>,
    preds: &PredicateSet,
) -> fmt::Result {
    let join = |it: &mut dyn Iterator<Item = usize>| it.map(|q| q.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(f, "states: {states}")?;
    writeln!(f, "initial: {}", join(&mut { initial }))?;
    writeln!(f, "accepting: {}", join(&mut { accepting }))?;
    writeln!(f, "predicates: {}", preds.names().join(","))
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acc = (0..self.state_count()).filter(|&q| self.is_accepting(q));
        write_header(f, self.state_count(), self.initial(), acc, &self.preds)?;
        for (p, l, q) in self.transitions() {
            writeln!(f, "trans: {p} {} {q}", self.preds.render_letter(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A complete deterministic automaton.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    preds: PredicateSet,
    raw: RawDfa,
}

impl Dfa {
    /// Builds a DFA from its transition table: `delta[q][ℓ]` is the target of
    /// state `q` on the letter with bits `ℓ`.
    pub fn from_table(
        preds: &PredicateSet,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Dfa, AutomataError> {
        let n = accepting.len();
        let nsym = preds.alphabet_size();
        if delta.len() != n {
            return Err(AutomataError::NotDeterministic(format!("{} rows for {n} states", delta.len())));
        }
        let mut flat = Vec::with_capacity(n * nsym);
        for (q, row) in delta.iter().enumerate() {
            if row.len() != nsym {
                return Err(AutomataError::NotDeterministic(format!("state {q} has {} of {nsym} letters", row.len())));
            }
            for &d in row {
                if d >= n {
                    return Err(AutomataError::StateOutOfRange { state: d, states: n });
                }
                flat.push(d as u32);
            }
        }
        if initial >= n {
            return Err(AutomataError::StateOutOfRange { state: initial, states: n });
        }
        Ok(Dfa { preds: preds.clone(), raw: RawDfa { nsym, initial: initial as u32, accepting, delta: flat } })
    }

    pub(crate) fn from_raw(preds: &PredicateSet, raw: RawDfa) -> Self {
        debug_assert_eq!(raw.nsym, preds.alphabet_size());
        Dfa { preds: preds.clone(), raw }
    }

    /// The language of all words.
    pub fn universal(preds: &PredicateSet) -> Dfa {
        Dfa::from_raw(preds, RawDfa::constant(preds.alphabet_size(), true))
    }

    /// The empty language.
    pub fn empty(preds: &PredicateSet) -> Dfa {
        Dfa::from_raw(preds, RawDfa::constant(preds.alphabet_size(), false))
    }

    pub fn predicates(&self) -> &PredicateSet {
        &self.preds
    }

    pub fn state_count(&self) -> usize {
        self.raw.states()
    }

    pub fn initial(&self) -> usize {
        self.raw.initial as usize
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.raw.accepting[q]
    }

    pub fn step(&self, q: usize, letter: Letter) -> usize {
        self.raw.step(q as u32, letter.index()) as usize
    }

    /// State reached from `q` after reading `word`.
    pub fn run_from(&self, q: usize, word: &[Letter]) -> usize {
        word.iter().fold(q, |q, &l| self.step(q, l))
    }

    pub fn accepts_letters(&self, word: &[Letter]) -> bool {
        self.raw.accepting[self.raw.run(symbols(word)) as usize]
    }

    pub fn accepts(&self, word: &Word) -> Result<bool, AutomataError> {
        same_preds(&self.preds, word.predicates())?;
        Ok(self.accepts_letters(word.letters()))
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa::from_raw(&self.preds, self.raw.to_nfa())
    }

    pub fn complement(&self) -> Dfa {
        Dfa { preds: self.preds.clone(), raw: self.raw.complement() }
    }

    pub fn minimize(&self) -> Dfa {
        Dfa { preds: self.preds.clone(), raw: self.raw.minimize() }
    }

    /// Synchronous product accepting where `op` holds on the two verdicts.
    pub fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomataError> {
        same_preds(&self.preds, &other.preds)?;
        Ok(Dfa { preds: self.preds.clone(), raw: self.raw.product(&other.raw, op, DEFAULT_MAX_STATES)? })
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a && b)
    }

    pub fn shortest_accepted(&self) -> Option<Word> {
        self.raw.shortest_accepted().map(|s| word_of(&self.preds, s))
    }

    pub fn is_empty(&self) -> bool {
        self.raw.shortest_accepted().is_none()
    }

    /// A shortest word of `L(self) ∖ L(other)`, if any.
    pub fn inclusion_counterexample(&self, other: &Dfa) -> Result<Option<Word>, AutomataError> {
        Ok(self.product(other, |a, b| a && !b)?.shortest_accepted())
    }

    pub fn is_subset(&self, other: &Dfa) -> Result<bool, AutomataError> {
        Ok(self.inclusion_counterexample(other)?.is_none())
    }

    /// A shortest word in the symmetric difference, if any.
    pub fn equiv_counterexample(&self, other: &Dfa) -> Result<Option<Word>, AutomataError> {
        Ok(self.product(other, |a, b| a != b)?.shortest_accepted())
    }

    pub fn is_equiv(&self, other: &Dfa) -> Result<bool, AutomataError> {
        Ok(self.equiv_counterexample(other)?.is_none())
    }

    /// Reads the line format
    ///
    /// ```text
    /// states: 2
    /// initial: 0
    /// accepting: 1
    /// predicates: a,b
    /// trans: 0 {a} 1
    /// ```
    ///
    /// with one `trans:` line per transition. Lines starting with `//` are
    /// comments. A DFA needs exactly one initial state and exactly one
    /// transition per state and letter.
    pub fn parse(text: &str) -> Result<Dfa, AutomataError> {
        Nfa::parse(text)?.as_dfa()
    }
}

impl Nfa {
    /// The same automaton viewed as a DFA, when it is one.
    pub fn as_dfa(&self) -> Result<Dfa, AutomataError> {
        if self.raw.initial.len() != 1 {
            return Err(AutomataError::NotDeterministic(format!("{} initial states", self.raw.initial.len())));
        }
        let mut delta = Vec::with_capacity(self.raw.succ.len());
        for q in 0..self.state_count() {
            for l in self.preds.letters() {
                match self.raw.successors(q as u32, l.index()) {
                    [d] => delta.push(*d),
                    ds => {
                        return Err(AutomataError::NotDeterministic(format!(
                            "state {q} has {} transitions on {}",
                            ds.len(),
                            self.preds.render_letter(l)
                        )))
                    }
                }
            }
        }
        let raw = RawDfa { nsym: self.raw.nsym, initial: self.raw.initial[0], accepting: self.raw.accepting.clone(), delta };
        Ok(Dfa { preds: self.preds.clone(), raw })
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acc = (0..self.state_count()).filter(|&q| self.is_accepting(q));
        write_header(f, self.state_count(), std::iter::once(self.initial()), acc, &self.preds)?;
        for q in 0..self.state_count() {
            for l in self.preds.letters() {
                writeln!(f, "trans: {q} {} {}", self.preds.render_letter(l), self.step(q, l))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn determinize(nfa: &Nfa) -> Result<Dfa, AutomataError> {
    nfa.determinize()
}

pub fn minimize(dfa: &Dfa) -> Dfa {
    dfa.minimize()
}

pub fn complement(dfa: &Dfa) -> Dfa {
    dfa.complement()
}

pub fn product(a: &Dfa, b: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomataError> {
    a.product(b, op)
}

pub fn union(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomataError> {
    a.union(b)
}

pub fn intersection(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomataError> {
    a.intersection(b)
}

pub fn is_empty(dfa: &Dfa) -> bool {
    dfa.is_empty()
}

pub fn is_subset(a: &Dfa, b: &Dfa) -> Result<bool, AutomataError> {
    a.is_subset(b)
}

pub fn is_equiv(a: &Dfa, b: &Dfa) -> Result<bool, AutomataError> {
    a.is_equiv(b)
}
