//! Predicate sets, letters, words and the pointwise inclusion order.
//!
//! A letter over a predicate set `Σ` is a subset of `Σ`, stored as a bit mask
//! indexed by the position of each predicate in the set. Words are finite
//! sequences of letters; the empty word is a legal value everywhere.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported predicate set.
pub const MAX_PREDICATES: usize = 16;

/// Default cap on the number of words an enumeration may produce.
pub const DEFAULT_MAX_WORDS: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("predicate sets differ: {{{left}}} vs {{{right}}}")]
    PredicateMismatch { left: String, right: String },
    #[error("duplicate predicate name `{0}`")]
    DuplicatePredicate(String),
    #[error("invalid predicate name `{0}`")]
    InvalidPredicate(String),
    #[error("at most {MAX_PREDICATES} predicates are supported, got {0}")]
    TooManyPredicates(usize),
    #[error("unknown predicate `{name}` at offset {pos}")]
    UnknownPredicate { name: String, pos: usize },
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("enumeration would produce {count} words, above the cap of {cap}")]
    ResourceCap { count: u128, cap: u64 },
}

/// An ordered set of unary predicate names.
///
/// Index order is fixed for the lifetime of the value and determines the bit
/// layout of every [`Letter`] built over it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PredicateSet(Arc<[String]>);

impl PredicateSet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_PREDICATES {
            return Err(WordError::TooManyPredicates(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) || name == "T" {
                return Err(WordError::InvalidPredicate(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(WordError::DuplicatePredicate(name.clone()));
            }
        }
        Ok(PredicateSet(names.into()))
    }

    /// Parses a comma-separated list such as `a,b,c`.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Self::new(Vec::<String>::new());
        }
        Self::new(text.split(',').map(|s| s.trim().to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Number of letters of the powerset alphabet, `2^|Σ|`.
    pub fn alphabet_size(&self) -> usize {
        1usize << self.len()
    }

    /// All letters in increasing bit-mask order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.alphabet_size()).map(|m| Letter(m as u16))
    }

    pub fn full_letter(&self) -> Letter {
        Letter(((1u32 << self.len()) - 1) as u16)
    }

    /// Letter with exactly the named predicates.
    pub fn letter<'a, I>(&self, names: I) -> Result<Letter, WordError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = 0u16;
        for name in names {
            let idx = self.index_of(name).ok_or_else(|| WordError::UnknownPredicate {
                name: name.to_string(),
                pos: 0,
            })?;
            mask |= 1 << idx;
        }
        Ok(Letter(mask))
    }

    pub fn render_letter(&self, letter: Letter) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for (i, name) in self.0.iter().enumerate() {
            if letter.contains(i) {
                if !first {
                    out.push(',');
                }
                out.push_str(name);
                first = false;
            }
        }
        out.push('}');
        out
    }

    fn check_same(&self, other: &PredicateSet) -> Result<(), WordError> {
        if self == other {
            Ok(())
        } else {
            Err(WordError::PredicateMismatch {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

impl fmt::Debug for PredicateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PredicateSet({})", self.0.join(","))
    }
}

impl fmt::Display for PredicateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A letter: the set of predicates holding at one position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Letter(u16);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn from_bits(bits: u16) -> Self {
        Letter(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, predicate: usize) -> bool {
        self.0 >> predicate & 1 == 1
    }

    pub fn with(self, predicate: usize) -> Letter {
        Letter(self.0 | 1 << predicate)
    }

    pub fn is_subset_of(self, other: Letter) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Every letter of the alphabet `⊇ self`, in increasing mask order.
    pub fn supersets(self, preds: &PredicateSet) -> impl Iterator<Item = Letter> {
        let me = self.0;
        preds.letters().filter(move |l| l.0 & me == me)
    }

    /// Every letter `⊆ self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Letter> {
        let me = self.0 as u32;
        (0..=me).filter(move |m| m & !me == 0).map(|m| Letter(m as u16))
    }
}

/// `s ≤ t` in the letter order, i.e. `s ⊆ t`.
pub fn letter_leq(s: Letter, t: Letter) -> bool {
    s.is_subset_of(t)
}

/// A finite word over the powerset alphabet of a predicate set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    preds: PredicateSet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(preds: PredicateSet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| (l.0 as usize) < preds.alphabet_size()));
        Word { preds, letters }
    }

    pub fn empty(preds: PredicateSet) -> Self {
        Word { preds, letters: Vec::new() }
    }

    pub fn predicates(&self) -> &PredicateSet {
        &self.preds
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.preds.check_same(&other.preds)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::new(self.preds.clone(), letters))
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word::new(self.preds.clone(), self.letters.repeat(n))
    }

    pub fn parse(text: &str, preds: &PredicateSet) -> Result<Word, WordError> {
        parse_word(text, preds)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for &l in &self.letters {
            f.write_str(&self.preds.render_letter(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// `u ≤ v`: same length and pointwise letter inclusion.
pub fn word_leq(u: &Word, v: &Word) -> Result<bool, WordError> {
    u.preds.check_same(&v.preds)?;
    Ok(letters_leq(&u.letters, &v.letters))
}

pub(crate) fn letters_leq(u: &[Letter], v: &[Letter]) -> bool {
    u.len() == v.len() && u.iter().zip(v).all(|(&s, &t)| letter_leq(s, t))
}

/// Parses the textual word grammar.
///
/// A word is a sequence of `{p,q,...}` letters. `T` stands for the full
/// letter, and when `|Σ| = 1` the digits `0` and `1` stand for `{}` and
/// `{p}`. Whitespace between letters is ignored; `ε` and the empty string
/// both denote the empty word.
pub fn parse_word(text: &str, preds: &PredicateSet) -> Result<Word, WordError> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'{' => {
                pos += 1;
                let mut mask = 0u16;
                let mut expect_name = true;
                let mut first = true;
                loop {
                    skip_ws(&mut pos);
                    if pos >= bytes.len() {
                        return Err(WordError::Syntax { pos, msg: "unterminated letter".into() });
                    }
                    if bytes[pos] == b'}' {
                        if expect_name && !first {
                            return Err(WordError::Syntax { pos, msg: "expected predicate name".into() });
                        }
                        pos += 1;
                        break;
                    }
                    if expect_name {
                        let start = pos;
                        while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                            pos += 1;
                        }
                        if start == pos {
                            return Err(WordError::Syntax { pos, msg: "expected predicate name".into() });
                        }
                        let name = &text[start..pos];
                        let idx = preds.index_of(name).ok_or_else(|| WordError::UnknownPredicate {
                            name: name.to_string(),
                            pos: start,
                        })?;
                        mask |= 1 << idx;
                        expect_name = false;
                        first = false;
                    } else if bytes[pos] == b',' {
                        pos += 1;
                        expect_name = true;
                    } else {
                        return Err(WordError::Syntax { pos, msg: "expected `,` or `}`".into() });
                    }
                }
                letters.push(Letter(mask));
            }
            b'T' => {
                letters.push(preds.full_letter());
                pos += 1;
            }
            b'0' | b'1' if preds.len() == 1 => {
                letters.push(Letter((bytes[pos] - b'0') as u16));
                pos += 1;
            }
            _ if text[pos..].starts_with('ε') => {
                pos += 'ε'.len_utf8();
            }
            _ => {
                return Err(WordError::Syntax { pos, msg: "expected `{`".into() });
            }
        }
    }
    Ok(Word::new(preds.clone(), letters))
}

/// Renders a word in canonical `{..}{..}` form; the empty word renders as
/// the empty string.
pub fn render_word(word: &Word) -> String {
    word.letters.iter().map(|&l| word.preds.render_letter(l)).collect()
}

/// Number of words of length at most `max_len`.
pub fn word_count(preds: &PredicateSet, max_len: usize) -> u128 {
    let a = preds.alphabet_size() as u128;
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(a);
    }
    total
}

/// Enumerates every word of length `≤ max_len` in length-then-lexicographic
/// order (letters compared by mask, first position most significant).
pub fn enumerate_words(
    preds: &PredicateSet,
    max_len: usize,
    cap: u64,
) -> Result<WordEnumerator, WordError> {
    let count = word_count(preds, max_len);
    if count > cap as u128 {
        return Err(WordError::ResourceCap { count, cap });
    }
    Ok(WordEnumerator {
        preds: preds.clone(),
        max_len,
        current: Some(Vec::new()),
    })
}

/// Iterator returned by [`enumerate_words`].
#[derive(Clone, Debug)]
pub struct WordEnumerator {
    preds: PredicateSet,
    max_len: usize,
    current: Option<Vec<Letter>>,
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        let out = Word::new(self.preds.clone(), cur.clone());
        let top = self.preds.alphabet_size() as u16 - 1;
        let mut next = cur;
        // odometer increment, last position least significant
        let mut i = next.len();
        loop {
            if i == 0 {
                if next.len() < self.max_len {
                    next = vec![Letter(0); next.len() + 1];
                    self.current = Some(next);
                }
                break;
            }
            i -= 1;
            if next[i].0 < top {
                next[i].0 += 1;
                self.current = Some(next);
                break;
            }
            next[i].0 = 0;
        }
        Some(out)
    }
}

/// All words `w ≥ u` (same length, pointwise supersets).
pub fn words_above(u: &Word) -> Vec<Word> {
    let choices: Vec<Vec<Letter>> = u.letters.iter().map(|l| l.supersets(&u.preds).collect()).collect();
    product(&choices).into_iter().map(|ls| Word::new(u.preds.clone(), ls)).collect()
}

/// All words `w ≤ u`.
pub fn words_below(u: &Word) -> Vec<Word> {
    let choices: Vec<Vec<Letter>> = u.letters.iter().map(|l| l.subsets().collect()).collect();
    product(&choices).into_iter().map(|ls| Word::new(u.preds.clone(), ls)).collect()
}

fn product(choices: &[Vec<Letter>]) -> Vec<Vec<Letter>> {
    let mut acc: Vec<Vec<Letter>> = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for &l in options {
                let mut w = prefix.clone();
                w.push(l);
                next.push(w);
            }
        }
        acc = next;
    }
    acc
}
