mod common;

use poslog::formulas::{BinaryPredicate as B, Guard, Signature};
use poslog::games::{ef_winner, GameConfig, Winner};
use poslog::words::{enumerate_words, word_leq, PredicateSet, Word};
use rand::Rng;

fn words(p: &PredicateSet, n: usize) -> Vec<Word> {
    enumerate_words(p, n, 100_000).unwrap().collect()
}

fn winner(u0: &Word, u1: &Word, k: usize, n: usize, sig: &Signature) -> Winner {
    ef_winner(&GameConfig::new(u0.clone(), u1.clone(), k, n, sig.clone())).unwrap().0
}

#[test]
fn copy_strategy() {
    let p = PredicateSet::parse("a,b").unwrap();
    for u in words(&p, 4) {
        for k in 0..=2 {
            for n in 0..=2 {
                assert_eq!(winner(&u, &u, k, n, &Signature::b0()), Winner::Duplicator, "{u} k={k} n={n}");
            }
        }
    }
}

#[test]
fn ordered_pairs_are_never_separated() {
    let p = PredicateSet::parse("a,b").unwrap();
    let ws = words(&p, 3);
    // With arbitrary between guards, (¬a)(x,y) can separate ordered pairs.
    let sigs = [Signature::b0(), Signature::less(), Signature::b0_between_positive()];
    let mut pairs = 0;
    for u0 in &ws {
        for u1 in &ws {
            if u0.len() != u1.len() || !word_leq(u0, u1).unwrap() {
                continue;
            }
            pairs += 1;
            for sig in &sigs {
                assert_eq!(winner(u0, u1, 2, 2, sig), Winner::Duplicator, "{u0} <= {u1}");
            }
        }
    }
    assert_eq!(pairs, 1 + 9 + 81 + 729);
}

#[test]
fn fewer_resources_keep_duplicator_winning() {
    let p = PredicateSet::parse("a,b").unwrap();
    let ws = words(&p, 4);
    let mut rng = common::rng(41);
    let mut wins = 0;
    for _ in 0..300 {
        let u0 = &ws[rng.gen_range(0..ws.len())];
        let u1 = &ws[rng.gen_range(0..ws.len())];
        let sig = if rng.gen_bool(0.5) { Signature::b0() } else { Signature::less() };
        let table: Vec<Vec<Winner>> =
            (0..=2).map(|k| (0..=2).map(|n| winner(u0, u1, k, n, &sig)).collect()).collect();
        for k in 0..=2 {
            for n in 0..=2 {
                if table[k][n] == Winner::Duplicator {
                    wins += 1;
                    for k2 in 0..=k {
                        for n2 in 0..=n {
                            assert_eq!(table[k2][n2], Winner::Duplicator, "{u0} vs {u1}");
                        }
                    }
                }
            }
        }
    }
    assert!(wins > 300, "{wins}");
}

#[test]
fn separating_formulas_give_spoiler_wins() {
    let bins = [B::Eq, B::Neq, B::Le, B::Lt, B::Succ, B::NotSucc];
    let (formulas, separations) = common::soundness_sweep(&Signature::b0(), &bins, 4, 3);
    assert!(formulas > 1000, "{formulas}");
    assert!(separations > 10_000, "{separations}");
}

#[test]
fn separating_between_formulas_give_spoiler_wins() {
    let a = Guard::Pred("a".into());
    let positive = [B::Lt, B::Succ, B::Between(a.clone()), B::Between(Guard::True)];
    let (_, separations) = common::soundness_sweep(&Signature::b0_between_positive(), &positive, 4, 3);
    assert!(separations > 10_000, "{separations}");
    let full = [B::Lt, B::Between(a.clone()), B::Between(Guard::Not(Box::new(a)))];
    let (_, separations) = common::soundness_sweep(&Signature::b0_between(), &full, 4, 3);
    assert!(separations > 10_000, "{separations}");
}
