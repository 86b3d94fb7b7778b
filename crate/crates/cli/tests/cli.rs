use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn poslog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poslog")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("poslog-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn monotone_on_k_agrees() {
    let k = stdout(&poslog(&["corpus", "emit", "K"]));
    let nfa = temp("k.nfa", &k);
    let dfa = stdout(&poslog(&["compile", "--nfa", nfa.to_str().unwrap(), "--det"]));
    let dfa = temp("k.dfa", &dfa);
    let o = poslog(&["monotone", "--dfa", dfa.to_str().unwrap(), "--via", "both"]);
    assert_eq!(stdout(&o), "monotone: true (agree)\n");
    assert_eq!(code(&o), 0);
}

#[test]
fn non_monotone_prints_witness() {
    let o = poslog(&["monotone", "--fo", "exists x. !a(x)", "--via", "automata"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "monotone: false\naccepted: {}\nrejected: {a}\n");
}

#[test]
fn translate_eventually() {
    let o = poslog(&["translate", "--from", "ltl+", "--to", "fo3+", "F a"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "exists x. (forall y. x<=y) & (exists y. x<y & a(y))\n");
    let o = poslog(&["translate", "--from", "fo2+", "--to", "utl+", "exists x. a(x)"]);
    assert_eq!(code(&o), 0);
    let o = poslog(&["translate", "--from", "ltl+", "--to", "fo3+", "!a"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ef_solve_examples() {
    let o = poslog(&["ef", "solve", "--u0", "{a}", "--u1", "{}", "-k", "1", "-n", "1"]);
    assert_eq!(stdout(&o), "Spoiler\n");
    assert_eq!(code(&o), 0);
    let o = poslog(&["ef", "solve", "--u0", "{}", "--u1", "{a}", "-k", "2", "-n", "2", "--trace"]);
    assert!(stdout(&o).starts_with("Duplicator\nround 1:"));
    let o = poslog(&["ef", "solve", "--u0", "{a}{a}", "--u1", "{a}", "-k", "9", "-n", "3", "--max-states", "10"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ef_play_as_spoiler() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_poslog"))
        .args(["ef", "play", "--u0", "{a}", "--u1", "{}", "-k", "1", "-n", "1", "--as", "spoiler"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 0 0\n").unwrap();
    let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
    assert!(out.contains("value: Spoiler"), "{out}");
    assert!(out.contains("Duplicator has no legal reply"), "{out}");
}

#[test]
fn ef_play_as_duplicator() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_poslog"))
        .args(["ef", "play", "--u0", "{}", "--u1", "{a}{a}", "-k", "1", "-n", "1", "--as", "duplicator"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"7\n1\n").unwrap();
    let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
    assert!(out.contains("invalid position `7`"), "{out}");
    assert!(out.contains("Duplicator wins"), "{out}");
}

#[test]
fn eval_and_exit_codes() {
    let o = poslog(&["eval", "--tl", "a U b", "{a}{a}{b}"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("true\n", 0));
    let o = poslog(&["eval", "--tl", "X a", "{a}", "--at", "0"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("false\n", 1));
    let o = poslog(&["eval", "--fo", "a(x) & x<y", "{a}{}", "--nu", "x=0,y=1"]);
    assert_eq!(code(&o), 0);
    let o = poslog(&["eval", "--fo", "a(x", "{a}"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&poslog(&["no-such-command"])), 2);
}

#[test]
fn equiv_reports_counterexample() {
    let o = poslog(&["equiv", "tl:G a", "fo:forall x. a(x)", "--max-len", "4"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("counterexample: "));
    let o = poslog(&["equiv", "tl:a | X F a", "fo:exists x. a(x)", "--max-len", "4"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let o = poslog(&["equiv", "fo:exists x. a(x)", "fo:exists y. a(y) | false", "--max-len", "4"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("equivalent on all words of length <= 4\n", 0));
}

#[test]
fn closures_and_monoids() {
    let o = poslog(&["closure", "--fo", "exists x. !a(x)", "--up"]);
    assert_eq!(code(&o), 0);
    let up = temp("up.dfa", &stdout(&o));
    let o = poslog(&["monotone", "--dfa", up.to_str().unwrap()]);
    assert_eq!(stdout(&o), "monotone: true (agree)\n");
    let o = poslog(&["monoid", "build", "--corpus", "K"]);
    assert_eq!(code(&o), 0);
    let m = temp("k.monoid", &stdout(&o));
    let order = poslog(&["monoid", "order", "--monoid", m.to_str().unwrap()]);
    assert_eq!(code(&order), 0);
    assert!(stdout(&order).lines().all(|l| l.contains(" <= ")));
    let print = poslog(&["monoid", "print", "--monoid", m.to_str().unwrap()]);
    assert!(stdout(&print).contains("monotone: true"));
    assert!(stdout(&print).contains("0: ε identity accepting"));
}

#[test]
fn classify_lists_fragments() {
    let o = poslog(&["classify", "--fo", "exists x. forall y. (x=y | !a(y))"]);
    let s = stdout(&o);
    assert!(s.contains("fo2: true") && s.contains("fo2+: false") && s.contains("sigma2: true"), "{s}");
    let o = poslog(&["classify", "--tl", "F a & P b"]);
    assert!(stdout(&o).contains("utl+: true"));
}

#[test]
fn corpus_emit_and_determinism() {
    assert_eq!(stdout(&poslog(&["corpus", "emit", "bu1", "0"])), "011100001\n");
    assert_eq!(stdout(&poslog(&["corpus", "emit", "u1", "0"])), "{a,b}{b,c}\n");
    assert_eq!(stdout(&poslog(&["corpus", "emit", "bu0", "1"])).trim().len(), 27);
    for args in [&["corpus", "emit", "K-between"][..], &["monoid", "build", "--corpus", "K-between"][..]] {
        assert_eq!(stdout(&poslog(args)), stdout(&poslog(args)));
    }
    let f = stdout(&poslog(&["corpus", "emit", "K-between-formula"]));
    let o = poslog(&["equiv", &format!("fo:{}", f.trim()), "corpus:K-between", "--max-len", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
