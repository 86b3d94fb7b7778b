//! Finite monoids recognizing languages over powerset alphabets.
//!
//! A [`FiniteMonoid`] carries a letter morphism `h` and an accepting subset;
//! it recognizes `h⁻¹(acc)`. Monoids built from automata keep their elements
//! as state transformations and multiply by composition, so no quadratic
//! table is stored; parsed monoids keep an explicit table.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::automata::{Dfa, Monotonicity};
use crate::words::{parse_word, Letter, PredicateSet, Word, WordError};

/// Default cap on the number of monoid elements.
pub const DEFAULT_MAX_ELEMENTS: usize = 10_000;

/// Largest monoid [`syntactic_order`] accepts; the relation is computed from
/// `|M|³` context bits.
pub const MAX_ORDER_ELEMENTS: usize = 1_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{what}: {count} exceeds the cap of {cap}")]
    ResourceCap { what: &'static str, count: usize, cap: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Table { mult: Vec<u32> },
    /// `maps[e * states + q]` is the image of `q` under element `e`; the
    /// product `f·g` applies `f` first.
    Transform { states: usize, maps: Vec<u32>, index: HashMap<Vec<u32>, u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    preds: PredicateSet,
    len: usize,
    identity: u32,
    accepting: Vec<bool>,
    /// Image of each letter, indexed by letter bits.
    h: Vec<u32>,
    repr: Repr,
}

impl FiniteMonoid {
    /// Builds a monoid from an explicit table, checking associativity and
    /// the identity laws.
    pub fn from_table(
        preds: &PredicateSet,
        mult: Vec<Vec<usize>>,
        identity: usize,
        accepting: Vec<bool>,
        h: Vec<usize>,
    ) -> Result<FiniteMonoid, AlgebraError> {
        let n = mult.len();
        let bad = |msg: String| Err(AlgebraError::NotAMonoid(msg));
        if n == 0 {
            return bad("no elements".into());
        }
        if accepting.len() != n {
            return bad(format!("{} acceptance flags for {n} elements", accepting.len()));
        }
        if h.len() != preds.alphabet_size() {
            return bad(format!("morphism defined on {} of {} letters", h.len(), preds.alphabet_size()));
        }
        if identity >= n || h.iter().any(|&e| e >= n) {
            return bad("element index out of range".into());
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n || row.iter().any(|&e| e >= n) {
                return bad(format!("row {i} is not a row of {n} elements"));
            }
            flat.extend(row.iter().map(|&e| e as u32));
        }
        let m = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            if m(identity, a) != a || m(a, identity) != a {
                return bad(format!("{identity} is not an identity for {a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return bad(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                    }
                }
            }
        }
        Ok(FiniteMonoid {
            preds: preds.clone(),
            len: n,
            identity: identity as u32,
            accepting,
            h: h.into_iter().map(|e| e as u32).collect(),
            repr: Repr::Table { mult: flat },
        })
    }

    pub fn predicates(&self) -> &PredicateSet {
        &self.preds
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn is_accepting(&self, e: usize) -> bool {
        self.accepting[e]
    }

    pub fn letter_image(&self, l: Letter) -> usize {
        self.h[l.index()] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table { mult } => mult[a * self.len + b] as usize,
            Repr::Transform { states, maps, index } => {
                let (fa, fb) = (&maps[a * states..(a + 1) * states], &maps[b * states..(b + 1) * states]);
                let prod: Vec<u32> = fa.iter().map(|&q| fb[q as usize]).collect();
                index[&prod] as usize
            }
        }
    }

    /// `h(w)`.
    pub fn eval(&self, word: &[Letter]) -> usize {
        word.iter().fold(self.identity(), |m, &l| self.mul(m, self.letter_image(l)))
    }

    pub fn recognizes(&self, word: &[Letter]) -> bool {
        self.accepting[self.eval(word)]
    }

    /// The full multiplication table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.len).map(|a| (0..self.len).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// A shortest word mapped to each element (breadth-first from the
    /// identity, letters in increasing order), or `None` for elements outside
    /// `h(A*)`.
    pub fn representatives(&self) -> Vec<Option<Vec<Letter>>> {
        let mut reps: Vec<Option<Vec<Letter>>> = vec![None; self.len];
        reps[self.identity()] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(e) = queue.pop_front() {
            for l in self.preds.letters() {
                let f = self.mul(e, self.letter_image(l));
                if reps[f].is_none() {
                    let mut w = reps[e].clone().expect("visited");
                    w.push(l);
                    reps[f] = Some(w);
                    queue.push_back(f);
                }
            }
        }
        reps
    }

    pub fn is_surjective(&self) -> bool {
        self.representatives().iter().all(Option::is_some)
    }

    /// The submonoid `h(A*)`, elements renumbered in breadth-first order.
    pub fn restrict(&self) -> FiniteMonoid {
        let reps = self.representatives();
        if reps.iter().all(Option::is_some) {
            return self.clone();
        }
        let mut order: Vec<usize> = (0..self.len).filter(|&e| reps[e].is_some()).collect();
        order.sort_by(|&a, &b| {
            let (wa, wb) = (reps[a].as_ref().unwrap(), reps[b].as_ref().unwrap());
            (wa.len(), wa.iter().map(|l| l.bits()).collect::<Vec<_>>())
                .cmp(&(wb.len(), wb.iter().map(|l| l.bits()).collect::<Vec<_>>()))
        });
        let mut new_id = vec![usize::MAX; self.len];
        for (i, &e) in order.iter().enumerate() {
            new_id[e] = i;
        }
        let mult = order.iter().map(|&a| order.iter().map(|&b| new_id[self.mul(a, b)]).collect()).collect();
        FiniteMonoid {
            preds: self.preds.clone(),
            len: order.len(),
            identity: new_id[self.identity()] as u32,
            accepting: order.iter().map(|&e| self.accepting[e]).collect(),
            h: self.h.iter().map(|&e| new_id[e as usize] as u32).collect(),
            repr: Repr::Table { mult: flat(mult) },
        }
    }

    /// Reads the line format
    ///
    /// ```text
    /// elements: 2
    /// identity: 0
    /// accepting: 1
    /// predicates: a
    /// mult:
    /// 0 1
    /// 1 1
    /// h: {} -> 0
    /// h: {a} -> 1
    /// ```
    ///
    /// Every letter needs an `h:` line.
    pub fn parse(text: &str) -> Result<FiniteMonoid, AlgebraError> {
        let mut elements = None;
        let mut identity = None;
        let mut accepting_list = Vec::new();
        let mut preds = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut h_lines = Vec::new();
        let mut in_table = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            let err = |msg: String| AlgebraError::Parse { line: line_no, msg };
            let nums = |v: &str| -> Result<Vec<usize>, AlgebraError> {
                v.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| err(format!("expected an element, got `{t}`"))))
                    .collect()
            };
            let Some((key, value)) = line.split_once(':') else {
                if in_table {
                    rows.push(nums(line)?);
                    continue;
                }
                return Err(err("expected `key: value`".into()));
            };
            in_table = false;
            let value = value.trim();
            match key.trim() {
                "elements" => elements = nums(value)?.first().copied(),
                "identity" => identity = nums(value)?.first().copied(),
                "accepting" => accepting_list = nums(value)?,
                "predicates" => preds = Some(PredicateSet::parse(value)?),
                "mult" => {
                    in_table = true;
                    if !value.is_empty() {
                        rows.push(nums(value)?);
                    }
                }
                "h" => h_lines.push((line_no, value.to_string())),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let missing = |k: &str| AlgebraError::Parse { line: 0, msg: format!("missing `{k}:` line") };
        let n = elements.ok_or_else(|| missing("elements"))?;
        let preds = preds.ok_or_else(|| missing("predicates"))?;
        if rows.len() != n {
            return Err(AlgebraError::Parse { line: 0, msg: format!("{} table rows for {n} elements", rows.len()) });
        }
        let mut accepting = vec![false; n];
        for e in accepting_list {
            *accepting.get_mut(e).ok_or_else(|| AlgebraError::NotAMonoid(format!("accepting element {e} out of range")))? =
                true;
        }
        let mut h: Vec<Option<usize>> = vec![None; preds.alphabet_size()];
        for (line, v) in h_lines {
            let err = |msg: &str| AlgebraError::Parse { line, msg: msg.to_string() };
            let (l, e) = v.split_once("->").ok_or_else(|| err("expected `{letter} -> element`"))?;
            let w = parse_word(l.trim(), &preds)?;
            if w.len() != 1 {
                return Err(err("expected exactly one letter"));
            }
            h[w.letters()[0].index()] = Some(e.trim().parse().map_err(|_| err("bad element"))?);
        }
        let h = h
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                e.ok_or_else(|| {
                    AlgebraError::Parse {
                        line: 0,
                        msg: format!("no image for {}", preds.render_letter(Letter::from_bits(i as u16))),
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteMonoid::from_table(&preds, rows, identity.ok_or_else(|| missing("identity"))?, accepting, h)
    }
}

fn flat(rows: Vec<Vec<usize>>) -> Vec<u32> {
    rows.into_iter().flatten().map(|e| e as u32).collect()
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acc: Vec<String> = (0..self.len).filter(|&e| self.accepting[e]).map(|e| e.to_string()).collect();
        writeln!(f, "elements: {}", self.len)?;
        writeln!(f, "identity: {}", self.identity)?;
        writeln!(f, "accepting: {}", acc.join(" "))?;
        writeln!(f, "predicates: {}", self.preds.names().join(","))?;
        writeln!(f, "mult:")?;
        for a in 0..self.len {
            let row: Vec<String> = (0..self.len).map(|b| self.mul(a, b).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        for l in self.preds.letters() {
            writeln!(f, "h: {} -> {}", self.preds.render_letter(l), self.letter_image(l))?;
        }
        Ok(())
    }
}

pub fn transition_monoid(d: &Dfa) -> Result<FiniteMonoid, AlgebraError> {
    transition_monoid_capped(d, DEFAULT_MAX_ELEMENTS)
}

/// Transformations of the states of `d` induced by words, found
/// breadth-first from the identity; element 0 is the identity.
pub fn transition_monoid_capped(d: &Dfa, cap: usize) -> Result<FiniteMonoid, AlgebraError> {
    let preds = d.predicates().clone();
    let n = d.state_count();
    let gens: Vec<Vec<u32>> =
        preds.letters().map(|l| (0..n).map(|q| d.step(q, l) as u32).collect()).collect();
    let mut maps: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(maps.clone(), 0)]);
    let mut i = 0;
    while i < index.len() {
        for g in &gens {
            let prod: Vec<u32> = maps[i * n..(i + 1) * n].iter().map(|&q| g[q as usize]).collect();
            if !index.contains_key(&prod) {
                let id = index.len() as u32;
                if id as usize >= cap {
                    return Err(AlgebraError::ResourceCap { what: "monoid elements", count: id as usize + 1, cap });
                }
                maps.extend_from_slice(&prod);
                index.insert(prod, id);
            }
        }
        i += 1;
    }
    let len = index.len();
    let accepting = (0..len).map(|e| d.is_accepting(maps[e * n + d.initial()] as usize)).collect();
    let h = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteMonoid { preds, len, identity: 0, accepting, h, repr: Repr::Transform { states: n, maps, index } })
}

pub fn syntactic_monoid(d: &Dfa) -> Result<FiniteMonoid, AlgebraError> {
    syntactic_monoid_capped(d, DEFAULT_MAX_ELEMENTS)
}

/// Transition monoid of the minimal DFA.
pub fn syntactic_monoid_capped(d: &Dfa, cap: usize) -> Result<FiniteMonoid, AlgebraError> {
    transition_monoid_capped(&d.minimize(), cap)
}

/// Right congruence of a surjective monoid: `y ~ y'` iff `y·n ∈ acc ⇔
/// y'·n ∈ acc` for all `n`, with the inclusion order between classes.
struct RightClasses {
    class: Vec<u32>,
    accepting: Vec<bool>,
    /// `next[c * letters + l]`
    next: Vec<u32>,
    letters: usize,
    /// `incl[c * k + d]`: every right context accepting `c` accepts `d`.
    incl: Vec<bool>,
}

impl RightClasses {
    fn new(m: &FiniteMonoid) -> Self {
        let letters: Vec<Letter> = m.preds.letters().collect();
        let succ: Vec<Vec<usize>> =
            (0..m.len).map(|e| letters.iter().map(|&l| m.mul(e, m.letter_image(l))).collect()).collect();
        let mut class: Vec<u32> = m.accepting.iter().map(|&a| a as u32).collect();
        let mut count = usize::MAX;
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let next: Vec<u32> = (0..m.len)
                .map(|e| {
                    let mut sig = vec![class[e]];
                    sig.extend(succ[e].iter().map(|&f| class[f]));
                    let fresh = ids.len() as u32;
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            class = next;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        let k = count;
        let mut rep = vec![usize::MAX; k];
        for e in (0..m.len).rev() {
            rep[class[e] as usize] = e;
        }
        let accepting: Vec<bool> = rep.iter().map(|&e| m.accepting[e]).collect();
        let nl = letters.len();
        let next: Vec<u32> = rep.iter().flat_map(|&e| succ[e].iter().map(|&f| class[f])).collect();
        let mut incl: Vec<bool> = (0..k * k).map(|i| !accepting[i / k] || accepting[i % k]).collect();
        loop {
            let mut changed = false;
            for c in 0..k {
                for d in 0..k {
                    if incl[c * k + d]
                        && (0..nl).any(|l| !incl[next[c * nl + l] as usize * k + next[d * nl + l] as usize])
                    {
                        incl[c * k + d] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        RightClasses { class, accepting, next, letters: nl, incl }
    }

    fn k(&self) -> usize {
        self.accepting.len()
    }

    fn included(&self, a: usize, b: usize) -> bool {
        let (c, d) = (self.class[a] as usize, self.class[b] as usize);
        self.incl[c * self.k() + d]
    }

    /// A shortest suffix accepted from the class of `a` and rejected from the
    /// class of `b`.
    fn separating_suffix(&self, a: usize, b: usize, letters: &[Letter]) -> Vec<Letter> {
        let k = self.k();
        let start = (self.class[a] as usize, self.class[b] as usize);
        let mut parent: HashMap<(usize, usize), ((usize, usize), usize)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![false; k * k];
        seen[start.0 * k + start.1] = true;
        while let Some((c, d)) = queue.pop_front() {
            if self.accepting[c] && !self.accepting[d] {
                let mut w = Vec::new();
                let mut cur = (c, d);
                while let Some(&(prev, l)) = parent.get(&cur) {
                    w.push(letters[l]);
                    cur = prev;
                }
                w.reverse();
                return w;
            }
            for l in 0..self.letters {
                let nx = (self.next[c * self.letters + l] as usize, self.next[d * self.letters + l] as usize);
                if !seen[nx.0 * k + nx.1] {
                    seen[nx.0 * k + nx.1] = true;
                    parent.insert(nx, ((c, d), l));
                    queue.push_back(nx);
                }
            }
        }
        unreachable!("pair was not included")
    }
}

/// Decides whether the recognized language is monotone: for all letters
/// `s ⊆ s'` and all `m, n`, `m·h(s)·n ∈ acc ⇒ m·h(s')·n ∈ acc`.
///
/// The monoid is first restricted to `h(A*)`. Right contexts `n` are grouped
/// by the right congruence, so each `(m, s, s')` costs one lookup. On failure
/// the witness is `u = x·s·z`, `v = x·s'·z` with `x` a shortest word for `m`
/// and `z` a shortest separating suffix.
pub fn is_monotone_monoid(m: &FiniteMonoid) -> Monotonicity {
    let m = m.restrict();
    let rc = RightClasses::new(&m);
    let letters: Vec<Letter> = m.preds.letters().collect();
    let reps = m.representatives();
    for &big in &letters {
        for small in big.subsets().filter(|&s| s != big) {
            let (hs, hb) = (m.letter_image(small), m.letter_image(big));
            for e in 0..m.len {
                let (a, b) = (m.mul(e, hs), m.mul(e, hb));
                if !rc.included(a, b) {
                    let x = reps[e].clone().expect("restricted");
                    let z = rc.separating_suffix(a, b, &letters);
                    let build = |l: Letter| {
                        let mut w = x.clone();
                        w.push(l);
                        w.extend_from_slice(&z);
                        Word::new(m.preds.clone(), w)
                    };
                    return Monotonicity::Violation { below: build(small), above: build(big) };
                }
            }
        }
    }
    Monotonicity::Monotone
}

/// The relation `m ≤ n` iff every two-sided context accepting `m` accepts
/// `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntacticOrder {
    len: usize,
    rel: Vec<bool>,
}

impl SyntacticOrder {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn leq(&self, m: usize, n: usize) -> bool {
        self.rel[m * self.len + n]
    }

    /// All pairs `(m, n)` with `m ≤ n`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len * self.len).filter(|&i| self.rel[i]).map(|i| (i / self.len, i % self.len)).collect()
    }
}

impl fmt::Display for SyntacticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, n) in self.pairs() {
            if m != n {
                writeln!(f, "{m} <= {n}")?;
            }
        }
        Ok(())
    }
}

/// Context sets as bitsets over pairs `(p, q)`, compared by inclusion.
pub fn syntactic_order(m: &FiniteMonoid) -> Result<SyntacticOrder, AlgebraError> {
    let n = m.len;
    if n > MAX_ORDER_ELEMENTS {
        return Err(AlgebraError::ResourceCap { what: "order elements", count: n, cap: MAX_ORDER_ELEMENTS });
    }
    let table = m.table();
    let words = (n * n).div_ceil(64);
    let mut ctx = vec![0u64; n * words];
    for e in 0..n {
        for p in 0..n {
            let pe = table[p][e];
            for q in 0..n {
                if m.accepting[table[pe][q]] {
                    let bit = p * n + q;
                    ctx[e * words + bit / 64] |= 1 << (bit % 64);
                }
            }
        }
    }
    let mut rel = vec![false; n * n];
    for a in 0..n {
        let ca = &ctx[a * words..(a + 1) * words];
        for b in 0..n {
            let cb = &ctx[b * words..(b + 1) * words];
            rel[a * n + b] = ca.iter().zip(cb).all(|(x, y)| x & !y == 0);
        }
    }
    Ok(SyntacticOrder { len: n, rel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::is_monotone_automaton;
    use crate::words::enumerate_words;

    fn unary() -> PredicateSet {
        PredicateSet::parse("a").unwrap()
    }

    /// Words over one predicate with an even number of `{a}` letters.
    fn even_a() -> Dfa {
        Dfa::from_table(&unary(), 0, vec![true, false], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// Words with some letter containing `a`.
    fn seen_a() -> Dfa {
        Dfa::from_table(&unary(), 0, vec![false, true], vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    /// Brute-force decision straight from the definition.
    fn naive_monotone(m: &FiniteMonoid) -> bool {
        let letters: Vec<Letter> = m.predicates().letters().collect();
        letters.iter().all(|&big| {
            big.subsets().all(|small| {
                (0..m.len()).all(|x| {
                    (0..m.len()).all(|y| {
                        let a = m.mul(m.mul(x, m.letter_image(small)), y);
                        let b = m.mul(m.mul(x, m.letter_image(big)), y);
                        !m.is_accepting(a) || m.is_accepting(b)
                    })
                })
            })
        })
    }

    #[test]
    fn small_monoids() {
        let triv = syntactic_monoid(&Dfa::universal(&unary())).unwrap();
        assert_eq!(triv.len(), 1);
        assert_eq!(syntactic_order(&triv).unwrap().pairs(), vec![(0, 0)]);
        let parity = syntactic_monoid(&even_a()).unwrap();
        assert_eq!(parity.len(), 2);
        assert!(!is_monotone_monoid(&parity).is_monotone());
        let seen = syntactic_monoid(&seen_a()).unwrap();
        assert_eq!(seen.len(), 2);
        let order = syntactic_order(&seen).unwrap();
        let (unseen, seen_e) = (seen.letter_image(Letter::EMPTY), seen.letter_image(Letter::from_bits(1)));
        assert!(order.leq(unseen, seen_e));
        assert!(!order.leq(seen_e, unseen));
        assert!(is_monotone_monoid(&seen).is_monotone());
    }

    #[test]
    fn text_round_trip_and_validation() {
        let seen = syntactic_monoid(&seen_a()).unwrap();
        let text = seen.to_string();
        let parsed = FiniteMonoid::parse(&text).unwrap();
        assert_eq!(parsed.table(), seen.table());
        assert_eq!(parsed.to_string(), text);
        let parity = text.replace("mult:\n0 1\n1 1", "mult:\n0 1\n1 0");
        assert!(!FiniteMonoid::parse(&parity).unwrap().is_accepting(0));
        let not_assoc = "elements: 2\nidentity: 0\naccepting: 1\npredicates: a\nmult:\n0 1\n1 2\nh: {} -> 0\nh: {a} -> 1";
        assert!(FiniteMonoid::parse(not_assoc).is_err());
        let no_identity = "elements: 2\nidentity: 0\naccepting:\npredicates: a\nmult:\n1 1\n1 1\nh: {} -> 0\nh: {a} -> 1";
        assert!(matches!(FiniteMonoid::parse(no_identity), Err(AlgebraError::NotAMonoid(_))));
    }

    #[test]
    fn restriction_and_witness() {
        // Three elements, the third unreachable from the letters.
        let text = "elements: 3\nidentity: 0\naccepting: 0\npredicates: a\nmult:\n0 1 2\n1 1 1\n2 1 2\nh: {} -> 0\nh: {a} -> 1";
        let m = FiniteMonoid::parse(text).unwrap();
        assert!(!m.is_surjective());
        assert_eq!(m.restrict().len(), 2);
        match is_monotone_monoid(&m) {
            Monotonicity::Violation { below, above } => {
                assert!(m.recognizes(below.letters()));
                assert!(!m.recognizes(above.letters()));
                assert_eq!(below.to_string(), "{}");
            }
            Monotonicity::Monotone => panic!("{{}}* is not monotone"),
        }
    }

    #[test]
    fn deciders_agree_on_small_dfas() {
        // Every complete DFA over one predicate with two states.
        let p = unary();
        for bits in 0..64u32 {
            let t = |i: u32| (bits >> i & 1) as usize;
            let d = Dfa::from_table(&p, 0, vec![t(0) == 1, t(1) == 1], vec![vec![t(2), t(3)], vec![t(4), t(5)]])
                .unwrap();
            let m = syntactic_monoid(&d).unwrap();
            let verdict = is_monotone_monoid(&m);
            assert_eq!(verdict.is_monotone(), naive_monotone(&m));
            assert_eq!(verdict.is_monotone(), is_monotone_automaton(&d).is_monotone());
            for w in enumerate_words(&p, 4, 100).unwrap() {
                assert_eq!(m.recognizes(w.letters()), d.accepts(&w).unwrap());
            }
        }
    }
}
