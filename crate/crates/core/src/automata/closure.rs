//! Upward, downward and dual closures, and the product test for
//! monotonicity.

use std::collections::VecDeque;

use super::{AutomataError, Dfa, Nfa, RawNfa};
use crate::words::{Letter, Word};

/// Outcome of a monotonicity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Monotone,
    /// `below ≤ above`, `below ∈ L` and `above ∉ L`.
    Violation { below: Word, above: Word },
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        matches!(self, Monotonicity::Monotone)
    }
}

fn relabel(n: &Nfa, targets: impl Fn(Letter) -> Vec<Letter>) -> Nfa {
    let preds = n.predicates().clone();
    let nsym = preds.alphabet_size();
    let mut succ = vec![Vec::new(); n.state_count() * nsym];
    for (p, l, q) in n.transitions() {
        for m in targets(l) {
            succ[p * nsym + m.index()].push(q as u32);
        }
    }
    for cell in &mut succ {
        cell.sort_unstable();
        cell.dedup();
    }
    let raw = RawNfa {
        nsym,
        initial: n.raw.initial.clone(),
        accepting: n.raw.accepting.clone(),
        succ,
    };
    Nfa::from_raw(&preds, raw)
}

/// Every transition `(p, a, q)` is copied to `(p, b, q)` for all `b ⊇ a`;
/// the language becomes `L↑`.
pub fn monotone_closure(n: &Nfa) -> Nfa {
    let preds = n.predicates().clone();
    relabel(n, |l| l.supersets(&preds).collect())
}

/// Mirror of [`monotone_closure`] with `b ⊆ a`; the language becomes `L↓`.
pub fn downward_closure(n: &Nfa) -> Nfa {
    relabel(n, |l| l.subsets().collect())
}

/// Minimal DFA of `L↑`.
pub fn upward_closure_dfa(d: &Dfa) -> Result<Dfa, AutomataError> {
    Ok(monotone_closure(&d.to_nfa()).determinize()?.minimize())
}

/// Minimal DFA of `((Lᶜ)↓)ᶜ`, the greatest monotone language inside `L`.
pub fn dual_closure(d: &Dfa) -> Result<Dfa, AutomataError> {
    let down = downward_closure(&d.complement().to_nfa()).determinize()?;
    Ok(down.complement().minimize())
}

/// Searches the product of `D` reading a word `u` with `D` reading a word
/// `v ≥ u` letter by letter, for a pair with `u ∈ L` and `v ∉ L`. The
/// witness comes from a shortest path, found breadth-first with letter pairs
/// in increasing order.
pub fn is_monotone_automaton(d: &Dfa) -> Monotonicity {
    let preds = d.predicates().clone();
    let n = d.state_count();
    let id = |p: usize, q: usize| p * n + q;
    let mut parent: Vec<Option<(usize, Letter, Letter)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let start = id(d.initial(), d.initial());
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let pairs: Vec<(Letter, Letter)> =
        preds.letters().flat_map(|b| b.subsets().map(move |a| (a, b))).collect();
    while let Some(cur) = queue.pop_front() {
        let (p, q) = (cur / n, cur % n);
        if d.is_accepting(p) && !d.is_accepting(q) {
            let (mut below, mut above) = (Vec::new(), Vec::new());
            let mut c = cur;
            while let Some((prev, a, b)) = parent[c] {
                below.push(a);
                above.push(b);
                c = prev;
            }
            below.reverse();
            above.reverse();
            return Monotonicity::Violation { below: Word::new(preds.clone(), below), above: Word::new(preds, above) };
        }
        for &(a, b) in &pairs {
            let next = id(d.step(p, a), d.step(q, b));
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((cur, a, b));
                queue.push_back(next);
            }
        }
    }
    Monotonicity::Monotone
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_words, words_above, words_below, PredicateSet};

    fn ab() -> PredicateSet {
        PredicateSet::parse("a,b").unwrap()
    }

    /// `{a}*` over `{a,b}`.
    fn a_star() -> Nfa {
        let p = ab();
        let mut n = Nfa::new(&p, 1);
        n.add_initial(0).unwrap();
        n.set_accepting(0, true).unwrap();
        n.add_transition(0, p.letter(["a"]).unwrap(), 0).unwrap();
        n
    }

    #[test]
    fn closures_match_brute_force() {
        let p = ab();
        let n = a_star();
        let up = monotone_closure(&n);
        let down = downward_closure(&n);
        let dual = dual_closure(&n.determinize().unwrap()).unwrap();
        let words: Vec<Word> = enumerate_words(&p, 4, 1000).unwrap().collect();
        let in_l = |w: &Word| n.accepts(w).unwrap();
        for w in &words {
            let below_in = words_below(w).iter().any(in_l);
            let above_in = words_above(w).iter().any(in_l);
            let above_all = words_above(w).iter().all(in_l);
            assert_eq!(up.accepts(w).unwrap(), below_in, "up {w}");
            assert_eq!(down.accepts(w).unwrap(), above_in, "down {w}");
            assert_eq!(dual.accepts(w).unwrap(), above_all, "dual {w}");
        }
        assert!(up.accepts(&Word::parse("{a,b}{a}", &p).unwrap()).unwrap());
        // Only ε has all its supersets in {a}*.
        assert_eq!(dual.state_count(), 2);
    }

    #[test]
    fn extremes() {
        let p = ab();
        let all = Dfa::universal(&p);
        assert!(dual_closure(&all).unwrap().is_equiv(&all).unwrap());
        assert!(upward_closure_dfa(&all).unwrap().is_equiv(&all).unwrap());
        let none = Dfa::empty(&p);
        assert!(upward_closure_dfa(&none).unwrap().is_empty());
        assert!(is_monotone_automaton(&none).is_monotone());
        assert!(is_monotone_automaton(&all).is_monotone());
    }

    #[test]
    fn violation_is_shortest_and_valid() {
        let d = a_star().determinize().unwrap();
        match is_monotone_automaton(&d) {
            Monotonicity::Violation { below, above } => {
                assert_eq!(below.to_string(), "{a}");
                assert_eq!(above.to_string(), "{a,b}");
            }
            Monotonicity::Monotone => panic!("{{a}}* is not monotone"),
        }
        assert!(is_monotone_automaton(&upward_closure_dfa(&d).unwrap()).is_monotone());
    }
}
