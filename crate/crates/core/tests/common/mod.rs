//! Shared generators for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use poslog::automata::{Dfa, Nfa};
use poslog::formulas::{enumerate_fo, BinaryPredicate as B, FoEnumSpec, Signature, Var};
use poslog::games::{ef_winner, GameConfig, Winner};
use poslog::semantics::FoEvaluator;
use poslog::words::{enumerate_words, Letter, PredicateSet, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complete DFA with a uniform number of states in `1..=max_states` and
/// uniform transitions. Acceptance flags are fair coins, redrawn until both
/// values occur when there are at least two states.
pub fn random_dfa(preds: &PredicateSet, max_states: usize, rng: &mut impl Rng) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let accepting: Vec<bool> = loop {
        let acc: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if n == 1 || (acc.contains(&true) && acc.contains(&false)) {
            break acc;
        }
    };
    let delta = (0..n).map(|_| (0..preds.alphabet_size()).map(|_| rng.gen_range(0..n)).collect()).collect();
    Dfa::from_table(preds, 0, accepting, delta).unwrap()
}

/// An NFA with `1..=max_states` states, one initial state, each state
/// accepting with probability 1/2 and each transition present with
/// probability `density`.
pub fn random_nfa(preds: &PredicateSet, max_states: usize, density: f64, rng: &mut impl Rng) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut nfa = Nfa::new(preds, n);
    nfa.add_initial(0).unwrap();
    for q in 0..n {
        nfa.set_accepting(q, rng.gen_bool(0.5)).unwrap();
        for l in preds.letters() {
            for r in 0..n {
                if rng.gen_bool(density) {
                    nfa.add_transition(q, l, r).unwrap();
                }
            }
        }
    }
    nfa
}

pub fn letter(bits: u16) -> Letter {
    Letter::from_bits(bits)
}

/// Every positive formula of the given size separating a pair of valuated
/// words must be matched by a Spoiler win from that configuration.
pub fn soundness_sweep(sig: &Signature, bins: &[B], max_size: usize, max_len: usize) -> (usize, usize) {
    let p = PredicateSet::parse("a").unwrap();
    let ws: Vec<Word> = enumerate_words(&p, max_len, 100_000).unwrap().collect();
    let vars = [Var::new("x"), Var::new("y")];
    let spec = FoEnumSpec::standard(&["a"], &vars, bins, false);
    let mut games: HashMap<(usize, usize, Vec<Option<usize>>, Vec<Option<usize>>, usize), Winner> = HashMap::new();
    let (mut formulas, mut separations) = (0, 0);
    enumerate_fo(&spec, max_size, |phi| {
        if phi.quantifier_rank() > 2 {
            return;
        }
        formulas += 1;
        let ev = FoEvaluator::new(phi, &p).unwrap();
        let free = ev.free_vars();
        let tokens: Vec<usize> = free.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        let vals = |u: &Word| -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for _ in &free {
                out = out.into_iter().flat_map(|v| (0..u.len()).map(move |i| [v.clone(), vec![i]].concat())).collect();
            }
            out
        };
        let place = |v: &[usize]| {
            let mut nu = vec![None; 2];
            for (t, &i) in tokens.iter().zip(v) {
                nu[*t] = Some(i);
            }
            nu
        };
        let k = phi.quantifier_rank();
        for (i0, u0) in ws.iter().enumerate() {
            for v0 in vals(u0) {
                if !ev.eval(u0.letters(), &v0) {
                    continue;
                }
                for (i1, u1) in ws.iter().enumerate() {
                    for v1 in vals(u1) {
                        if ev.eval(u1.letters(), &v1) {
                            continue;
                        }
                        separations += 1;
                        let (nu0, nu1) = (place(&v0), place(&v1));
                        let w = *games.entry((i0, i1, nu0.clone(), nu1.clone(), k)).or_insert_with(|| {
                            let c = GameConfig::new(u0.clone(), u1.clone(), k, 2, sig.clone()).with_initial(nu0, nu1);
                            ef_winner(&c).unwrap().0
                        });
                        assert_eq!(w, Winner::Spoiler, "{phi} separates {u0} {v0:?} from {u1} {v1:?}");
                    }
                }
            }
        }
    });
    (formulas, separations)
}
