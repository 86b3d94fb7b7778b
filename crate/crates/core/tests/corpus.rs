mod common;

use poslog::algebra::{is_monotone_monoid, syntactic_monoid};
use poslog::automata::is_monotone_automaton;
use poslog::corpus::{
    abc, bracket_k_member, bracket_predicates, build_bracket_k, build_k, build_k_between, encode_word,
    fo2_between_formula, gen_bracket_u0, gen_bracket_u1, gen_u0, gen_u1, k_between_member, k_member,
};
use poslog::formulas::{classify_fo, Fragment, FragmentId, Signature};
use poslog::semantics::FoEvaluator;
use poslog::words::{enumerate_words, Letter, Word};
use rand::Rng;

#[test]
fn between_formula_defines_the_language() {
    let p = abc();
    let phi = fo2_between_formula();
    assert!(classify_fo(&phi, &FragmentId::over(Fragment::Fo2, Signature::b0_between())));
    assert!(!classify_fo(&phi, &FragmentId::over(Fragment::Fo2, Signature::b0())));
    let ev = FoEvaluator::new(&phi, &p).unwrap();
    let dfa = build_k_between(&p).unwrap().determinize().unwrap();
    let mut accepted = 0;
    for u in enumerate_words(&p, 6, 1_000_000).unwrap() {
        let expect = k_between_member(u.letters());
        assert_eq!(dfa.accepts(&u).unwrap(), expect, "{u}");
        assert_eq!(ev.eval(u.letters(), &[]), expect, "{u}");
        accepted += expect as usize;
    }
    assert!(accepted > 1000, "{accepted}");
}

#[test]
fn between_formula_on_mutated_witnesses() {
    let p = abc();
    let ev = FoEvaluator::new(&fo2_between_formula(), &p).unwrap();
    let mut rng = common::rng(53);
    let mut flips = [0usize; 2];
    for n in 2..=6 {
        for base in [gen_u0(n), gen_u1(n)] {
            for _ in 0..200 {
                let mut letters = base.letters().to_vec();
                for _ in 0..rng.gen_range(1..=3) {
                    let i = rng.gen_range(0..letters.len());
                    letters[i] = Letter::from_bits(rng.gen_range(0..8));
                }
                let expect = k_between_member(&letters);
                assert_eq!(ev.eval(&letters, &[]), expect, "{}", Word::new(p.clone(), letters.clone()));
                flips[expect as usize] += 1;
            }
        }
    }
    assert!(flips[0] > 100 && flips[1] > 100, "{flips:?}");
}

#[test]
fn corpus_languages_are_monotone() {
    let p = abc();
    let k = build_k(&p).unwrap().determinize().unwrap().minimize();
    let kb = build_k_between(&p).unwrap().determinize().unwrap().minimize();
    let bk = build_bracket_k().unwrap().determinize().unwrap().minimize();
    for d in [&k, &kb, &bk] {
        assert!(is_monotone_automaton(d).is_monotone());
        assert!(is_monotone_monoid(&syntactic_monoid(d).unwrap()).is_monotone());
    }
    assert!(k.is_subset(&kb).unwrap());
    assert!(!kb.is_subset(&k).unwrap());
}

#[test]
fn witnesses_separate() {
    let k = build_k(&abc()).unwrap();
    let kb = build_k_between(&abc()).unwrap();
    let bk = build_bracket_k().unwrap();
    for n in 0..=3 {
        assert!(k.accepts(&gen_u0(n)).unwrap() && k_member(gen_u0(n).letters()));
        assert!(!k.accepts(&gen_u1(n)).unwrap() && !k_member(gen_u1(n).letters()));
        assert!(kb.accepts(&gen_u0(n)).unwrap());
        assert!(!kb.accepts(&gen_u1(n)).unwrap());
        assert!(bk.accepts(&gen_bracket_u0(n)).unwrap() && bracket_k_member(gen_bracket_u0(n).letters()));
        assert!(!bk.accepts(&gen_bracket_u1(n)).unwrap() && !bracket_k_member(gen_bracket_u1(n).letters()));
        // The letterwise encoding of u₁ (two trailing letters) is rejected too.
        assert!(!bk.accepts(&encode_word(&gen_u1(n)).unwrap()).unwrap());
    }
}

#[test]
fn bracket_automaton_matches_checker_on_long_words() {
    let q = bracket_predicates();
    let bk = build_bracket_k().unwrap().determinize().unwrap();
    let mut rng = common::rng(59);
    for _ in 0..2000 {
        let len = rng.gen_range(0..=60);
        let density = rng.gen_range(0.05..0.5);
        let letters: Vec<Letter> = (0..len).map(|_| Letter::from_bits(rng.gen_bool(density) as u16)).collect();
        assert_eq!(bk.accepts_letters(&letters), bracket_k_member(&letters), "{}", Word::new(q.clone(), letters.clone()));
    }
    for n in 0..4 {
        // Fattening zeros of [u₀] keeps it inside.
        let mut letters = gen_bracket_u0(n).letters().to_vec();
        for _ in 0..3 {
            if letters.is_empty() {
                break;
            }
            let i = rng.gen_range(0..letters.len());
            letters[i] = Letter::from_bits(1);
            assert!(bk.accepts_letters(&letters));
        }
    }
}
