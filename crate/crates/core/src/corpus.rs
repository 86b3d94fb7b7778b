//! The counter-example languages and their witness words.
//!
//! `K = ((abc)*)↑ ∪ A*⊤A*` over three predicates, its variant with
//! double-letter anchors accepted outright, and the one-predicate encoding
//! `[K]` where each letter of `{a,b,c}` and a separator `#` become fixed
//! binary codes.

use std::fmt;

use thiserror::Error;

use crate::automata::{AutomataError, Nfa};
use crate::formulas::{parse_fo, FoFormula, Signature};
use crate::words::{Letter, PredicateSet, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("expected {expected} predicates, got {found}")]
    WrongPredicateCount { expected: usize, found: usize },
    #[error("`{0}` is not a bracket code sequence")]
    Decode(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// The predicate set `{a, b, c}`.
pub fn abc() -> PredicateSet {
    PredicateSet::parse("a,b,c").expect("static predicate names")
}

/// The single-predicate set `{p}`: `0 = {}` and `1 = {p}`.
pub fn bracket_predicates() -> PredicateSet {
    PredicateSet::parse("p").expect("static predicate name")
}

fn check_three(preds: &PredicateSet) -> Result<(), CorpusError> {
    if preds.len() != 3 {
        return Err(CorpusError::WrongPredicateCount { expected: 3, found: preds.len() });
    }
    Ok(())
}

fn pair(i: usize, j: usize) -> Letter {
    Letter::from_bits((1 << i | 1 << j) as u16)
}

/// Adjacent double letters that fix their reading: `{ab}{ab}`, `{bc}{bc}`,
/// `{ca}{ca}`, `{ab}{ca}`, `{bc}{ab}`, `{ca}{bc}`. Predicates `0, 1, 2` play
/// the roles of `a, b, c`.
fn anchor_pairs() -> [(Letter, Letter); 6] {
    let (ab, bc, ca) = (pair(0, 1), pair(1, 2), pair(2, 0));
    [(ab, ab), (bc, bc), (ca, ca), (ab, ca), (bc, ab), (ca, bc)]
}

/// Adds `((abc)*)↑ ∪ A*⊤A*` to `n` and returns nothing; states are appended.
fn add_k(n: &mut Nfa) -> Result<(), AutomataError> {
    let base = n.state_count();
    for _ in 0..5 {
        n.add_state();
    }
    n.add_initial(base)?;
    n.set_accepting(base, true)?;
    for q in 0..3 {
        n.add_transitions(base + q, |l| l.contains(q), base + (q + 1) % 3)?;
    }
    let (before, after) = (base + 3, base + 4);
    n.add_initial(before)?;
    n.set_accepting(after, true)?;
    n.add_transitions(before, |_| true, before)?;
    n.add_transitions(before, |l| l.len() == 3, after)?;
    n.add_transitions(after, |_| true, after)?;
    Ok(())
}

/// `K = ((abc)*)↑ ∪ A*⊤A*`, the predicates in order playing `a, b, c`.
pub fn build_k(preds: &PredicateSet) -> Result<Nfa, CorpusError> {
    check_three(preds)?;
    let mut n = Nfa::new(preds, 0);
    add_k(&mut n)?;
    Ok(n)
}

/// Direct membership in `K`.
pub fn k_member(word: &[Letter]) -> bool {
    word.iter().any(|l| l.len() == 3) || (word.len() % 3 == 0 && word.iter().enumerate().all(|(i, l)| l.contains(i % 3)))
}

/// `K ∪ A*({ab}² ∪ {bc}² ∪ {ca}² ∪ {ab}{ca} ∪ {bc}{ab} ∪ {ca}{bc})A*`.
pub fn build_k_between(preds: &PredicateSet) -> Result<Nfa, CorpusError> {
    check_three(preds)?;
    let mut n = Nfa::new(preds, 0);
    add_k(&mut n)?;
    let before = n.add_state();
    let after = n.add_state();
    n.add_initial(before)?;
    n.set_accepting(after, true)?;
    n.add_transitions(before, |_| true, before)?;
    n.add_transitions(after, |_| true, after)?;
    for (first, second) in anchor_pairs() {
        let mid = n.add_state();
        n.add_transition(before, first, mid)?;
        n.add_transition(mid, second, after)?;
    }
    Ok(n)
}

/// Direct membership in the language of [`build_k_between`].
pub fn k_between_member(word: &[Letter]) -> bool {
    k_member(word) || word.windows(2).any(|w| anchor_pairs().contains(&(w[0], w[1])))
}

fn letters_of(preds: &PredicateSet, spec: &[&[&str]]) -> Vec<Letter> {
    spec.iter().map(|names| preds.letter(names.iter().copied()).expect("known predicate")).collect()
}

/// `u₀ = (abc)^n`.
pub fn gen_u0(n: usize) -> Word {
    let p = abc();
    let period = letters_of(&p, &[&["a"], &["b"], &["c"]]);
    Word::new(p, period.repeat(n))
}

/// `u₁ = ({a,b}{b,c}{c,a})^n {a,b}{b,c}`.
pub fn gen_u1(n: usize) -> Word {
    let p = abc();
    let mut letters = letters_of(&p, &[&["a", "b"], &["b", "c"], &["c", "a"]]).repeat(n);
    letters.extend(letters_of(&p, &[&["a", "b"], &["b", "c"]]));
    Word::new(p, letters)
}

const NAMES: [&str; 3] = ["a", "b", "c"];

fn next(s: usize) -> usize {
    (s + 1) % 3
}

fn prev(s: usize) -> usize {
    (s + 2) % 3
}

/// `v` is exactly the singleton `{s}`.
fn sing(v: &str, s: usize) -> String {
    format!("({}({v}) & !{}({v}) & !{}({v}))", NAMES[s], NAMES[next(s)], NAMES[prev(s)])
}

fn any_sing(v: &str) -> String {
    format!("({} | {} | {})", sing(v, 0), sing(v, 1), sing(v, 2))
}

/// `v` carries both `s` and `t`.
fn has(v: &str, s: usize, t: usize) -> String {
    format!("({}({v}) & {}({v}))", NAMES[s], NAMES[t])
}

fn first(v: &str, w: &str) -> String {
    format!("!(exists {w}. {w}<{v})")
}

fn last(v: &str, w: &str) -> String {
    format!("!(exists {w}. {v}<{w})")
}

/// Compatibility of two anchors with only double letters strictly between:
/// the doubles right after the left anchor and right before the right one
/// both use their upper component, or both their lower one.
/// `after_left` / `before_right` state that the neighbour carries the two
/// given predicates.
fn compatible(s: usize, t: usize, after_left: &dyn Fn(usize, usize) -> String, before_right: &dyn Fn(usize, usize) -> String) -> String {
    let upper = format!("({} & {})", after_left(next(s), next(next(s))), before_right(prev(t), t));
    let lower = format!("({} & {})", after_left(s, next(s)), before_right(prev(prev(t)), prev(t)));
    format!("{upper} | {lower}")
}

/// An `FO²[𝔅₀ ∪ 𝔅e]` sentence over `{a,b,c}` for the language of
/// [`build_k_between`].
///
/// Outside the accepted factors, words are checked anchor to anchor: for
/// every two singleton letters with only double letters in between, the
/// reading of those doubles must be consistent. Word boundaries act as a
/// virtual `c` before the first position and a virtual `a` after the last.
pub fn fo2_between_formula() -> FoFormula {
    let text = fo2_between_text();
    parse_fo(&text, &Signature::b0_between()).expect("well-formed formula")
}

fn fo2_between_text() -> String {
    let top = "(a(x) & b(x) & c(x))".to_string();
    let pairs: Vec<String> = [(0, 1, 0, 1), (1, 2, 1, 2), (2, 0, 2, 0), (0, 1, 2, 0), (1, 2, 0, 1), (2, 0, 1, 2)]
        .iter()
        .map(|&(s, t, u, v)| format!("({} & {})", has("x", s, t), has("y", u, v)))
        .collect();
    let bad = format!("(exists x. ({top} | exists y. (S(x,y) & ({}))))", pairs.join(" | "));

    let no_empty = "(forall x. (a(x) | b(x) | c(x)))".to_string();

    let rotations: Vec<String> = (0..3)
        .map(|r| {
            format!(
                "({}(x) & exists y. (S(x,y) & {}(y) & exists x. (S(y,x) & {}(x))))",
                NAMES[r],
                NAMES[next(r)],
                NAMES[next(next(r))]
            )
        })
        .collect();
    let windows = format!("(forall x. (!(exists y. (S(x,y) & exists x. S(y,x))) | {}))", rotations.join(" | "));

    let no_sing_between: String = (0..3)
        .map(|d| format!("!btw[{} & !{} & !{}](x,y)", NAMES[d], NAMES[next(d)], NAMES[prev(d)]))
        .collect::<Vec<_>>()
        .join(" & ");
    let after_x = |i: usize, j: usize| format!("(exists y. (S(x,y) & {}))", has("y", i, j));
    let before_y = |i: usize, j: usize| format!("(exists x. (S(x,y) & {}))", has("x", i, j));
    let at_start = |i: usize, j: usize| format!("(exists x. ({} & {}))", first("x", "y"), has("x", i, j));
    let at_end = |i: usize, j: usize| format!("(exists y. ({} & {}))", last("y", "x"), has("y", i, j));

    let mut parts = vec![no_empty, windows];
    for s in 0..3 {
        for t in 0..3 {
            let mut psi = compatible(s, t, &after_x, &before_y);
            if t == next(s) {
                psi = format!("{psi} | S(x,y)");
            }
            parts.push(format!(
                "(forall x. forall y. (!({} & {} & x<y & {}) | {}))",
                sing("x", s),
                sing("y", t),
                no_sing_between,
                psi
            ));
        }
    }
    // Virtual c before the first position.
    for t in 0..3 {
        let mut psi = compatible(2, t, &at_start, &before_y);
        if t == 0 {
            psi = format!("{psi} | {}", first("y", "x"));
        }
        parts.push(format!(
            "(forall y. (!({} & !(exists x. (x<y & {}))) | {}))",
            sing("y", t),
            any_sing("x"),
            psi
        ));
    }
    // Virtual a after the last position.
    for s in 0..3 {
        let mut psi = compatible(s, 0, &after_x, &at_end);
        if s == 2 {
            psi = format!("{psi} | {}", last("x", "y"));
        }
        parts.push(format!(
            "(forall x. (!({} & !(exists y. (x<y & {}))) | {}))",
            sing("x", s),
            any_sing("y"),
            psi
        ));
    }
    // No singleton at all: the doubles run from boundary to boundary.
    let at_end_x = |i: usize, j: usize| format!("(exists x. ({} & {}))", last("x", "y"), has("x", i, j));
    parts.push(format!(
        "((exists x. {}) | !(exists x. true) | {})",
        any_sing("x"),
        compatible(2, 0, &at_start, &at_end_x)
    ));
    format!("{bad} | ({})", parts.join(" & "))
}

/// The abstract symbols of the one-predicate encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketSymbol {
    A,
    B,
    C,
    Hash,
    AB,
    BC,
    CA,
}

impl BracketSymbol {
    pub const ALL: [BracketSymbol; 7] = [
        BracketSymbol::A,
        BracketSymbol::B,
        BracketSymbol::C,
        BracketSymbol::Hash,
        BracketSymbol::AB,
        BracketSymbol::BC,
        BracketSymbol::CA,
    ];

    pub fn code(self) -> &'static str {
        match self {
            BracketSymbol::A => "001",
            BracketSymbol::B => "010",
            BracketSymbol::C => "100",
            BracketSymbol::Hash => "100001",
            BracketSymbol::AB => "011",
            BracketSymbol::BC => "110",
            BracketSymbol::CA => "101",
        }
    }

    fn name(self) -> &'static str {
        match self {
            BracketSymbol::A => "a",
            BracketSymbol::B => "b",
            BracketSymbol::C => "c",
            BracketSymbol::Hash => "#",
            BracketSymbol::AB => "ab",
            BracketSymbol::BC => "bc",
            BracketSymbol::CA => "ca",
        }
    }

    /// The symbol for a singleton or double letter over `{a,b,c}`.
    pub fn from_letter(l: Letter) -> Option<BracketSymbol> {
        Some(match l.bits() {
            0b001 => BracketSymbol::A,
            0b010 => BracketSymbol::B,
            0b100 => BracketSymbol::C,
            0b011 => BracketSymbol::AB,
            0b110 => BracketSymbol::BC,
            0b101 => BracketSymbol::CA,
            _ => return None,
        })
    }
}

impl fmt::Display for BracketSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.name())
    }
}

/// Concatenates the codes, `0 = {}` and `1 = {p}`.
pub fn encode_brackets(symbols: &[BracketSymbol]) -> Word {
    let letters = symbols
        .iter()
        .flat_map(|s| s.code().bytes())
        .map(|b| Letter::from_bits((b == b'1') as u16))
        .collect();
    Word::new(bracket_predicates(), letters)
}

/// Encodes a word over `{a,b,c}` as `[u₀][#][u₁][#]…`.
pub fn encode_word(word: &Word) -> Result<Word, CorpusError> {
    let mut symbols = Vec::with_capacity(2 * word.len());
    for &l in word.letters() {
        let s = BracketSymbol::from_letter(l).ok_or_else(|| CorpusError::Decode(word.predicates().render_letter(l)))?;
        symbols.push(s);
        symbols.push(BracketSymbol::Hash);
    }
    Ok(encode_brackets(&symbols))
}

/// Reads an alternating letter-code / separator sequence back.
pub fn decode_brackets(word: &Word) -> Result<Vec<BracketSymbol>, CorpusError> {
    let bits: String = word.letters().iter().map(|l| if l.is_empty() { '0' } else { '1' }).collect();
    let mut out = Vec::new();
    let mut rest = bits.as_str();
    while !rest.is_empty() {
        let want_hash = out.len() % 2 == 1;
        let sym = BracketSymbol::ALL
            .into_iter()
            .filter(|s| (*s == BracketSymbol::Hash) == want_hash)
            .find(|s| rest.starts_with(s.code()))
            .ok_or_else(|| CorpusError::Decode(bits.clone()))?;
        rest = &rest[sym.code().len()..];
        out.push(sym);
    }
    Ok(out)
}

/// Renders a word over `{p}` as a 0/1 string.
pub fn bits(word: &Word) -> String {
    word.letters().iter().map(|l| if l.is_empty() { '0' } else { '1' }).collect()
}

pub fn bracket_u0_symbols(n: usize) -> Vec<BracketSymbol> {
    use BracketSymbol::*;
    [A, Hash, B, Hash, C, Hash].repeat(n)
}

pub fn bracket_u1_symbols(n: usize) -> Vec<BracketSymbol> {
    use BracketSymbol::*;
    let mut s = [AB, Hash, BC, Hash, CA, Hash].repeat(n);
    s.extend([AB, Hash]);
    s
}

/// `[u₀] = ([a][#][b][#][c][#])^n`.
pub fn gen_bracket_u0(n: usize) -> Word {
    encode_brackets(&bracket_u0_symbols(n))
}

/// `[u₁] = ([ab][#][bc][#][ca][#])^n [ab][#]`.
pub fn gen_bracket_u1(n: usize) -> Word {
    encode_brackets(&bracket_u1_symbols(n))
}

fn bracket_period() -> Vec<bool> {
    bits(&gen_bracket_u0(1)).bytes().map(|b| b == b'1').collect()
}

/// `[K] = (([a][#][b][#][c][#])*)↑ ∪ A*1(A⁴∖0⁴)1A* ∪ A*1⁵A*`.
pub fn build_bracket_k() -> Result<Nfa, CorpusError> {
    let p = bracket_predicates();
    let one = |l: Letter| !l.is_empty();
    let mut n = Nfa::new(&p, 0);
    let period = bracket_period();
    let base = n.state_count();
    for _ in 0..period.len() {
        n.add_state();
    }
    n.add_initial(base)?;
    n.set_accepting(base, true)?;
    for (i, &bit) in period.iter().enumerate() {
        n.add_transitions(base + i, |l| !bit || one(l), base + (i + 1) % period.len())?;
    }
    let before = n.add_state();
    let after = n.add_state();
    n.add_initial(before)?;
    n.set_accepting(after, true)?;
    n.add_transitions(before, |_| true, before)?;
    n.add_transitions(after, |_| true, after)?;
    // 1 (A⁴∖0⁴) 1: states (read, seen a 1).
    let window: Vec<[usize; 2]> = (0..=4).map(|_| [n.add_state(), n.add_state()]).collect();
    n.add_transitions(before, one, window[0][0])?;
    for i in 0..4 {
        for seen in 0..2 {
            n.add_transitions(window[i][seen], |l| l.is_empty(), window[i + 1][seen])?;
            n.add_transitions(window[i][seen], one, window[i + 1][1])?;
        }
    }
    n.add_transitions(window[4][1], one, after)?;
    // 1⁵.
    let mut q = before;
    for _ in 0..4 {
        let r = n.add_state();
        n.add_transitions(q, one, r)?;
        q = r;
    }
    n.add_transitions(q, one, after)?;
    Ok(n)
}

/// Direct membership in `[K]`.
pub fn bracket_k_member(word: &[Letter]) -> bool {
    let b: Vec<bool> = word.iter().map(|l| !l.is_empty()).collect();
    let period = bracket_period();
    let upward = b.len() % period.len() == 0 && b.iter().enumerate().all(|(i, &x)| x || !period[i % period.len()]);
    let window = b.windows(6).any(|w| w[0] && w[5] && w[1..5].iter().any(|&x| x));
    let five = b.windows(5).any(|w| w.iter().all(|&x| x));
    upward || window || five
}
