//! Semantic checks of every translator against the evaluators, on all small
//! formulas and words.

use poslog::formulas::{
    classify_fo, classify_tl, enumerate_fo, enumerate_tl, BinaryPredicate as B, FoEnumSpec, Fragment,
    FragmentId, Signature, TlOp, Var,
};
use poslog::semantics::{FoEvaluator, TlEvaluator};
use poslog::translate::{
    fo2p_less_to_utlp, fo2p_to_utlp, ltlp_to_fo3p, ltlp_to_fo3p_at, monotone_rewrite, pivot_atoms,
    substitute_pivot_atoms, utlp_to_fo2p, utlp_to_fo2p_closed,
};
use poslog::words::{enumerate_words, PredicateSet, Word, DEFAULT_MAX_WORDS};

fn ab() -> PredicateSet {
    PredicateSet::parse("a,b").unwrap()
}

fn nonempty_words(p: &PredicateSet, n: usize) -> Vec<Word> {
    enumerate_words(p, n, DEFAULT_MAX_WORDS).unwrap().filter(|w| !w.is_empty()).collect()
}

const B0: [B; 6] = [B::Eq, B::Neq, B::Le, B::Lt, B::Succ, B::NotSucc];

#[test]
fn ltl_to_fo3_agrees_at_every_position() {
    let p = ab();
    let words = nonempty_words(&p, 4);
    let ops = [TlOp::X, TlOp::F, TlOp::G, TlOp::And, TlOp::Or, TlOp::U, TlOp::R, TlOp::XU];
    let x = Var::new("x");
    let mut n = 0;
    enumerate_tl(&["a", "b"], &ops, 5, |phi| {
        let open = FoEvaluator::new(&ltlp_to_fo3p_at(phi, &x).unwrap(), &p).unwrap();
        let closed = FoEvaluator::new(&ltlp_to_fo3p(phi).unwrap(), &p).unwrap();
        let tl = TlEvaluator::new(phi, &p).unwrap();
        for w in &words {
            let truth = tl.eval_positions(w.letters());
            assert_eq!(closed.eval(w.letters(), &[]), truth[0], "{phi} on {w}");
            for (i, &t) in truth.iter().enumerate() {
                assert_eq!(open.eval(w.letters(), &[i]), t, "{phi} on {w} at {i}");
            }
        }
        n += 1;
    });
    assert_eq!(n, 8804);
}

#[test]
fn utl_to_fo2_agrees_at_every_position() {
    let p = ab();
    let words = nonempty_words(&p, 4);
    let ops = [TlOp::X, TlOp::Y, TlOp::F, TlOp::G, TlOp::P, TlOp::H, TlOp::And, TlOp::Or];
    let fo2 = FragmentId::over(Fragment::Fo2Plus, Signature::b0());
    let less = FragmentId::over(Fragment::Fo2Plus, Signature::less());
    enumerate_tl(&["a", "b"], &ops, 4, |phi| {
        let f = utlp_to_fo2p(phi).unwrap();
        assert!(classify_fo(&f, &fo2), "{f}");
        if !phi.uses(TlOp::X) && !phi.uses(TlOp::Y) {
            assert!(classify_fo(&f, &less), "{f}");
        }
        let open = FoEvaluator::new(&f, &p).unwrap();
        let closed = FoEvaluator::new(&utlp_to_fo2p_closed(phi).unwrap(), &p).unwrap();
        let tl = TlEvaluator::new(phi, &p).unwrap();
        for w in &words {
            let truth = tl.eval_positions(w.letters());
            assert_eq!(closed.eval(w.letters(), &[]), truth[0]);
            for (i, &t) in truth.iter().enumerate() {
                let got = if open.free_vars().is_empty() {
                    open.eval(w.letters(), &[])
                } else {
                    open.eval(w.letters(), &[i])
                };
                assert_eq!(got, t, "{phi} / {f} on {w} at {i}");
            }
        }
    });
}

fn check_fo2_to_utl(binaries: &[B], max_size: usize, less: bool) -> usize {
    let p = ab();
    let words = nonempty_words(&p, 4);
    let vars = [Var::new("x"), Var::new("y")];
    let spec = FoEnumSpec::standard(&["a", "b"], &vars, binaries, true);
    let x = Var::new("x");
    let mut checked = 0;
    enumerate_fo(&spec, max_size, |phi| {
        let free = phi.free_vars();
        if free.iter().any(|v| v != &x) {
            return;
        }
        let out = if less { fo2p_less_to_utlp(phi) } else { fo2p_to_utlp(phi) }.unwrap();
        assert!(out.is_positive());
        assert!(classify_tl(&out, if less { Fragment::UtlPlusPfhg } else { Fragment::UtlPlus }), "{out}");
        let fo = FoEvaluator::new(phi, &p).unwrap();
        let tl = TlEvaluator::new(&out, &p).unwrap();
        for w in &words {
            let truth = tl.eval_positions(w.letters());
            for (i, &t) in truth.iter().enumerate() {
                let pos: &[usize] = if free.is_empty() { &[] } else { &[i] };
                assert_eq!(fo.eval(w.letters(), pos), t, "{phi} vs {out} on {w} at {i}");
            }
        }
        checked += 1;
    });
    checked
}

#[test]
fn fo2_to_utl_agrees_over_b0() {
    assert!(check_fo2_to_utl(&B0, 4, false) > 1000);
}

#[test]
fn fo2_to_utl_agrees_over_less() {
    assert!(check_fo2_to_utl(&[B::Eq, B::Neq, B::Le, B::Lt], 4, true) > 1000);
}

#[test]
fn fo2_to_utl_spot_examples() {
    use poslog::formulas::parse_fo;
    let p = ab();
    let words = nonempty_words(&p, 4);
    for s in [
        "exists y. x<y & a(y)",
        "forall y. y<=x | a(y)",
        "exists x. a(x) & forall y. x<y | b(y)",
        "forall y. (exists x. S(x,y) & b(x)) | !S(y,x) | a(y)",
        "a(x) & exists y. (S(x,y) & exists x. (x<y & b(x) & exists y. y<x & a(y)))",
    ] {
        let phi = parse_fo(s, &Signature::b0()).unwrap();
        let out = fo2p_to_utlp(&phi).unwrap();
        let fo = FoEvaluator::new(&phi, &p).unwrap();
        let tl = TlEvaluator::new(&out, &p).unwrap();
        for w in &words {
            for (i, t) in tl.eval_positions(w.letters()).into_iter().enumerate() {
                let pos: &[usize] = if phi.free_vars().is_empty() { &[] } else { &[i] };
                assert_eq!(fo.eval(w.letters(), pos), t, "{s} vs {out} on {w} at {i}");
            }
        }
    }
}

#[test]
fn monotone_rewrite_is_equivalent_and_chained() {
    let p = ab();
    let words = nonempty_words(&p, 3);
    let vars = [Var::new("x"), Var::new("y")];
    let spec = FoEnumSpec::standard(&["a", "b"], &vars, &B0, false);
    let x = Var::new("x");
    enumerate_fo(&spec, 4, |psi| {
        let rewritten = monotone_rewrite(psi, &x).unwrap();
        assert!(rewritten.is_positive());
        let free: Vec<Var> = FoEvaluator::new(psi, &p).unwrap().free_vars();
        let ev = FoEvaluator::new(psi, &p).unwrap();
        let rv = FoEvaluator::new(&rewritten, &p).unwrap();
        assert_eq!(rv.free_vars(), free, "{psi}");
        let n_atoms = pivot_atoms(psi, &x).len();
        let subs: Vec<FoEvaluator> = (0..1u64 << n_atoms)
            .map(|s| FoEvaluator::new(&substitute_pivot_atoms(psi, &x, s), &p).unwrap())
            .collect();
        for w in &words {
            let n = w.len();
            let valuations: Vec<Vec<usize>> = match free.len() {
                0 => vec![vec![]],
                1 => (0..n).map(|i| vec![i]).collect(),
                _ => (0..n).flat_map(|i| (0..n).map(move |j| vec![i, j])).collect(),
            };
            for val in &valuations {
                assert_eq!(ev.eval(w.letters(), val), rv.eval(w.letters(), val), "{psi} on {w}");
                for s in 0..subs.len() {
                    for t in 0..subs.len() {
                        if s & t == s {
                            let fs = &subs[s];
                            let ft = &subs[t];
                            // Slot order may shrink when x disappears; re-evaluate by name.
                            let vs = bind(fs, &free, val);
                            let vt = bind(ft, &free, val);
                            if fs.eval(w.letters(), &vs) {
                                assert!(ft.eval(w.letters(), &vt), "chain {psi} S={s:b} T={t:b} on {w}");
                            }
                        }
                    }
                }
            }
        }
    });
}

fn bind(ev: &FoEvaluator, names: &[Var], val: &[usize]) -> Vec<usize> {
    ev.free_vars().iter().map(|v| val[names.iter().position(|n| n == v).unwrap()]).collect()
}

#[test]
fn closures_of_unions_agree_on_nonempty_words() {
    use poslog::translate::{pi2p_dual_closure, sigma2m_downward_closure, sigma2p_upward_closure, Polynomial};
    use poslog::words::{words_above, words_below};
    let p = ab();
    let words = nonempty_words(&p, 4);
    for s in ["({b,a}{b})* + A* {a} A*", "()* {a} ({})* {b} A* + ({a}{})*", "A* {a,b} ()* + ({}{b})* {a} ({})*"] {
        let poly = Polynomial::parse(s, &p).unwrap();
        let up = FoEvaluator::new(&sigma2p_upward_closure(&poly), &p).unwrap();
        let down = FoEvaluator::new(&sigma2m_downward_closure(&poly), &p).unwrap();
        let dual = FoEvaluator::new(&pi2p_dual_closure(&poly), &p).unwrap();
        for w in &words {
            let (below, above) = (words_below(w), words_above(w));
            assert_eq!(up.eval(w.letters(), &[]), below.iter().any(|u| poly.contains(u)), "{s} on {w}");
            assert_eq!(down.eval(w.letters(), &[]), above.iter().any(|u| poly.contains(u)), "{s} on {w}");
            assert_eq!(dual.eval(w.letters(), &[]), !above.iter().any(|u| poly.contains(u)), "{s} on {w}");
        }
    }
}
