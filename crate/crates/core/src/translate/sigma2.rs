//! Closure formulas for polynomial languages `A₀* s₀ A₁* … s_t A_{t+1}*`.
//!
//! Text form: a monomial alternates letter sets and single letters, starting
//! and ending with a set. A set is `(letters)*` with letters in the word
//! grammar, or `A*` for the whole alphabet; `()*` is the empty set. A single
//! letter is `{..}` or `T`. Monomials are joined with `+`; `empty` is the
//! empty union; `;` may separate items. Example over `a,b,c`:
//! `({a})* {b} ({c})* + A* {a,b,c} A*`.

use std::fmt;

use crate::formulas::{BinaryPredicate as B, FoFormula, Var};
use crate::words::{parse_word, PredicateSet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolynomialError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `A₀* s₀ A₁* … s_{t} A_{t+1}*`; `sets.len() == marks.len() + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub sets: Vec<Vec<crate::words::Letter>>,
    pub marks: Vec<crate::words::Letter>,
}

impl Monomial {
    pub fn new(sets: Vec<Vec<crate::words::Letter>>, marks: Vec<crate::words::Letter>) -> Self {
        assert_eq!(sets.len(), marks.len() + 1, "a monomial alternates sets and marks");
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort();
                s.dedup();
                s
            })
            .collect();
        Monomial { sets, marks }
    }

    /// Direct membership test by simulating the stages left to right.
    pub fn matches(&self, word: &[crate::words::Letter]) -> bool {
        let t = self.marks.len();
        let mut stages = vec![false; t + 1];
        stages[0] = true;
        for &l in word {
            let mut next = vec![false; t + 1];
            for k in 0..=t {
                if !stages[k] {
                    continue;
                }
                if self.sets[k].contains(&l) {
                    next[k] = true;
                }
                if k < t && self.marks[k] == l {
                    next[k + 1] = true;
                }
            }
            stages = next;
        }
        stages[t]
    }
}

/// A finite union of monomials over one predicate set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    pub preds: PredicateSet,
    pub monomials: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(preds: PredicateSet, monomials: Vec<Monomial>) -> Self {
        Polynomial { preds, monomials }
    }

    pub fn single(preds: PredicateSet, m: Monomial) -> Self {
        Polynomial { preds, monomials: vec![m] }
    }

    pub fn empty(preds: PredicateSet) -> Self {
        Polynomial { preds, monomials: vec![] }
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.monomials.iter().any(|m| m.matches(word.letters()))
    }

    pub fn parse(text: &str, preds: &PredicateSet) -> Result<Self, PolynomialError> {
        let trimmed = text.trim();
        if trimmed == "empty" || trimmed == "∅" {
            return Ok(Polynomial::empty(preds.clone()));
        }
        let mut monomials = Vec::new();
        let mut offset = 0;
        for part in text.split('+') {
            monomials.push(parse_monomial(part, offset, preds)?);
            offset += part.len() + 1;
        }
        Ok(Polynomial { preds: preds.clone(), monomials })
    }
}

fn parse_monomial(text: &str, base: usize, preds: &PredicateSet) -> Result<Monomial, PolynomialError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut sets = Vec::new();
    let mut marks = Vec::new();
    let err = |pos: usize, msg: &str| PolynomialError::Syntax { pos: base + pos, msg: msg.to_string() };
    loop {
        while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b';') {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let want_set = sets.len() == marks.len();
        match bytes[i] {
            b'A' if want_set => {
                if bytes.get(i + 1) != Some(&b'*') {
                    return Err(err(i + 1, "expected `*` after A"));
                }
                sets.push(preds.letters().collect());
                i += 2;
            }
            b'(' if want_set => {
                let close = text[i..].find(')').ok_or_else(|| err(i, "unterminated set"))? + i;
                let w = parse_word(&text[i + 1..close], preds).map_err(|e| match e {
                    WordError::Syntax { pos, msg } => err(i + 1 + pos, &msg),
                    other => other.into(),
                })?;
                if bytes.get(close + 1) != Some(&b'*') {
                    return Err(err(close + 1, "expected `*` after a letter set"));
                }
                sets.push(w.letters().to_vec());
                i = close + 2;
            }
            b'{' | b'T' if !want_set => {
                let end = if bytes[i] == b'T' {
                    i + 1
                } else {
                    text[i..].find('}').ok_or_else(|| err(i, "unterminated letter"))? + i + 1
                };
                let w = parse_word(&text[i..end], preds).map_err(|e| match e {
                    WordError::Syntax { pos, msg } => err(i + pos, &msg),
                    other => other.into(),
                })?;
                marks.push(w.letters()[0]);
                i = end;
            }
            _ if want_set => return Err(err(i, "expected a letter set `(..)*` or `A*`")),
            _ => return Err(err(i, "expected a single letter `{..}`")),
        }
    }
    if sets.len() != marks.len() + 1 {
        return Err(err(text.len(), "a monomial must end with a letter set"));
    }
    Ok(Monomial::new(sets, marks))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("empty");
        }
        let full = self.preds.alphabet_size();
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            for (i, set) in m.sets.iter().enumerate() {
                if i > 0 {
                    write!(f, " {} ", self.preds.render_letter(m.marks[i - 1]))?;
                }
                if set.len() == full {
                    f.write_str("A*")?;
                } else {
                    f.write_str("(")?;
                    for &l in set {
                        f.write_str(&self.preds.render_letter(l))?;
                    }
                    f.write_str(")*")?;
                }
            }
        }
        Ok(())
    }
}

/// Prefix-free pieces of a Σ₂ formula for one monomial.
struct Prenex {
    exists: Vec<Var>,
    forall: Vec<Var>,
    matrix: FoFormula,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Up,
    Down,
}

/// Unary description of a letter: `⋀_{p∈s} p(v)` going up, `⋀_{p∉s} ¬p(v)`
/// going down.
fn letter_test(preds: &PredicateSet, s: crate::words::Letter, v: &Var, dir: Direction) -> FoFormula {
    let names = preds.names();
    FoFormula::and_all((0..names.len()).filter_map(|i| match dir {
        Direction::Up if s.contains(i) => Some(FoFormula::atom(&names[i], v)),
        Direction::Down if !s.contains(i) => Some(FoFormula::not(FoFormula::atom(&names[i], v))),
        _ => None,
    }))
}

fn set_test(preds: &PredicateSet, set: &[crate::words::Letter], v: &Var, dir: Direction) -> FoFormula {
    FoFormula::or_all(set.iter().map(|&a| letter_test(preds, a, v, dir)))
}

fn monomial_prenex(preds: &PredicateSet, m: &Monomial, tag: &str, dir: Direction) -> Prenex {
    let t = m.marks.len();
    let xs: Vec<Var> = (0..t).map(|i| Var::new(&format!("x{tag}{i}"))).collect();
    let y = Var::new(&format!("y{tag}"));
    let mut parts = Vec::new();
    for i in 1..t {
        parts.push(FoFormula::bin(B::Lt, &xs[i - 1], &xs[i]));
    }
    for i in 0..t {
        parts.push(letter_test(preds, m.marks[i], &xs[i], dir));
    }
    for (i, set) in m.sets.iter().enumerate() {
        // y lies in the i-th gap unless y ≤ x_{i−1} or x_i ≤ y.
        let mut escape = Vec::new();
        if i > 0 {
            escape.push(FoFormula::bin(B::Le, &y, &xs[i - 1]));
        }
        if i < t {
            escape.push(FoFormula::bin(B::Le, &xs[i], &y));
        }
        escape.push(set_test(preds, set, &y, dir));
        parts.push(FoFormula::or_all(escape));
    }
    Prenex { exists: xs, forall: vec![y], matrix: FoFormula::and_all(parts) }
}

fn closure_formula(p: &Polynomial, dir: Direction) -> FoFormula {
    let single = p.monomials.len() == 1;
    let pieces: Vec<Prenex> = p
        .monomials
        .iter()
        .enumerate()
        .map(|(k, m)| monomial_prenex(&p.preds, m, &if single { String::new() } else { format!("{k}_") }, dir))
        .collect();
    // ∃x̄₁∀ȳ₁ M₁ ∨ ∃x̄₂∀ȳ₂ M₂ ≡ ∃x̄₁x̄₂ ∀ȳ₁ȳ₂ (M₁ ∨ M₂) once the variables are
    // apart; the ∃-merge needs a non-empty word when some block is empty.
    let matrix = FoFormula::or_all(pieces.iter().map(|pc| pc.matrix.clone()));
    let mut f = matrix;
    for v in pieces.iter().rev().flat_map(|pc| pc.forall.iter().rev()) {
        f = FoFormula::forall(v, f);
    }
    for v in pieces.iter().rev().flat_map(|pc| pc.exists.iter().rev()) {
        f = FoFormula::exists(v, f);
    }
    f
}

/// A Σ₂⁺ sentence defining the upward closure `L(P)↑`.
///
/// Exact on every word when all monomials have marks or none has; otherwise
/// exact on non-empty words.
pub fn sigma2p_upward_closure(p: &Polynomial) -> FoFormula {
    closure_formula(p, Direction::Up)
}

/// A Σ₂⁻ sentence defining the downward closure `L(P)↓`, with the same
/// exactness caveat as [`sigma2p_upward_closure`].
pub fn sigma2m_downward_closure(p: &Polynomial) -> FoFormula {
    closure_formula(p, Direction::Down)
}

/// A Π₂⁺ sentence defining the dual closure of `L`, where `pc` describes the
/// complement of `L`: the negation of [`sigma2m_downward_closure`] with the
/// negations pushed to the atoms.
pub fn pi2p_dual_closure(pc: &Polynomial) -> FoFormula {
    FoFormula::not(sigma2m_downward_closure(pc)).negation_normal_form()
}
