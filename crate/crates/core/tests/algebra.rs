mod common;

use std::collections::HashSet;

use poslog::algebra::{
    is_monotone_monoid, syntactic_monoid, syntactic_monoid_capped, syntactic_order, transition_monoid, FiniteMonoid,
};
use poslog::automata::{is_monotone_automaton, Dfa, Monotonicity};
use poslog::words::{enumerate_words, word_leq, Letter, PredicateSet};
use rand::Rng;

fn ab() -> PredicateSet {
    PredicateSet::parse("a,b").unwrap()
}

#[test]
fn parity_monoid_size_matches_distinct_transformations() {
    // (aa)* over one predicate: {} is a dead letter here, so three states.
    let p = PredicateSet::parse("a").unwrap();
    let d = Dfa::from_table(&p, 0, vec![true, false, false], vec![vec![2, 1], vec![2, 0], vec![2, 2]]).unwrap();
    let m = transition_monoid(&d).unwrap();
    // Brute force: distinct state maps of all words up to length 6.
    let mut maps = HashSet::new();
    for w in enumerate_words(&p, 6, 1000).unwrap() {
        maps.insert((0..3).map(|q| d.run_from(q, w.letters())).collect::<Vec<_>>());
    }
    assert_eq!(m.len(), maps.len());
    assert_eq!(m.len(), 3);
}

#[test]
fn seen_letter_language_has_two_elements() {
    let p = ab();
    // Contains a letter ⊇ {a}.
    let delta = vec![p.letters().map(|l| l.contains(0) as usize).collect(), vec![1; 4]];
    let d = Dfa::from_table(&p, 0, vec![false, true], delta).unwrap();
    let m = syntactic_monoid(&d).unwrap();
    assert_eq!(m.len(), 2);
    assert!(is_monotone_monoid(&m).is_monotone());
}

#[test]
fn recognition_on_random_words() {
    let p = ab();
    let mut rng = common::rng(23);
    let letters: Vec<Letter> = p.letters().collect();
    for _ in 0..100 {
        let d = common::random_dfa(&p, 6, &mut rng);
        let m = syntactic_monoid_capped(&d, 50_000).unwrap();
        for _ in 0..50 {
            let len = rng.gen_range(0..=5);
            let w: Vec<Letter> = (0..len).map(|_| letters[rng.gen_range(0..4)]).collect();
            assert_eq!(m.recognizes(&w), d.accepts_letters(&w));
        }
    }
}

/// `m ≤ n` straight from the definition: every context accepting `m`
/// accepts `n`.
fn naive_leq(m: &FiniteMonoid, a: usize, b: usize) -> bool {
    (0..m.len()).all(|p| (0..m.len()).all(|q| !m.is_accepting(m.mul(m.mul(p, a), q)) || m.is_accepting(m.mul(m.mul(p, b), q))))
}

#[test]
fn order_laws_on_small_syntactic_monoids() {
    let p = ab();
    let mut rng = common::rng(29);
    let mut checked = 0;
    while checked < 60 {
        let d = common::random_dfa(&p, 4, &mut rng);
        let m = syntactic_monoid(&d).unwrap();
        if m.len() > 20 {
            continue;
        }
        checked += 1;
        let o = syntactic_order(&m).unwrap();
        let n = m.len();
        for a in 0..n {
            assert!(o.leq(a, a));
            for b in 0..n {
                assert_eq!(o.leq(a, b), naive_leq(&m, a, b));
                if a != b {
                    assert!(!(o.leq(a, b) && o.leq(b, a)), "antisymmetry");
                }
                for c in 0..n {
                    if o.leq(a, b) && o.leq(b, c) {
                        assert!(o.leq(a, c));
                    }
                }
            }
        }
        for (a, b) in o.pairs() {
            for (c, e) in o.pairs() {
                assert!(o.leq(m.mul(a, c), m.mul(b, e)), "compatibility");
            }
        }
        if is_monotone_monoid(&m).is_monotone() {
            for big in p.letters() {
                for small in big.subsets() {
                    assert!(o.leq(m.letter_image(small), m.letter_image(big)));
                }
            }
        }
    }
}

#[test]
fn monoid_and_automaton_deciders_agree() {
    let p = ab();
    let mut rng = common::rng(31);
    for _ in 0..200 {
        let d = common::random_dfa(&p, 6, &mut rng);
        let m = syntactic_monoid_capped(&d, 50_000).unwrap();
        let by_monoid = is_monotone_monoid(&m);
        assert_eq!(by_monoid.is_monotone(), is_monotone_automaton(&d).is_monotone());
        if let Monotonicity::Violation { below, above } = by_monoid {
            assert!(word_leq(&below, &above).unwrap());
            assert!(d.accepts(&below).unwrap());
            assert!(!d.accepts(&above).unwrap());
        }
    }
}

#[test]
fn empty_language_monoid_is_monotone() {
    let m = syntactic_monoid(&Dfa::empty(&ab())).unwrap();
    assert_eq!(m.len(), 1);
    assert!(is_monotone_monoid(&m).is_monotone());
}
