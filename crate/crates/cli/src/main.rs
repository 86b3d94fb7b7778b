//! `poslog`: command-line front end.
//!
//! Exit status: 0 when the property holds (or the command simply succeeds),
//! 1 when it fails, with a witness printed, 2 on usage or resource errors.

mod lang;
mod play;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use poslog::algebra::{is_monotone_monoid, syntactic_monoid_capped, syntactic_order, FiniteMonoid, DEFAULT_MAX_ELEMENTS};
use poslog::automata::{
    downward_closure, dual_closure, is_monotone_automaton, upward_closure_dfa, Monotonicity,
};
use poslog::corpus::{
    abc, bits, build_bracket_k, build_k, build_k_between, fo2_between_formula, gen_bracket_u0, gen_bracket_u1, gen_u0,
    gen_u1,
};
use poslog::formulas::{classify_fo, classify_tl, Fragment, FragmentId};
use poslog::games::{ef_winner_capped, GameConfig, Move, DEFAULT_MAX_GAME_STATES};
use poslog::semantics::{equiv_bruteforce, eval_fo, eval_tl_at, EquivResult, Valuation};
use poslog::translate::{
    fo2p_less_to_utlp, fo2p_to_utlp, ltlp_to_fo3p, pi2p_dual_closure, sigma2m_downward_closure,
    sigma2p_upward_closure, utlp_to_fo2p, utlp_to_fo2p_closed, Polynomial,
};
use poslog::words::{parse_word, Word, DEFAULT_MAX_WORDS};

use lang::{max_states, LangArgs, PredArgs};

/// Any library or I/O error, reported with exit status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "poslog", version, about = "Positive logics on finite words")]
struct Cli {
    /// Cap on automaton states, monoid elements and game positions.
    #[arg(long, global = true)]
    max_states: Option<usize>,
    /// Cap on the number of enumerated words.
    #[arg(long, global = true)]
    max_words: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula on a word.
    #[command(group(ArgGroup::new("formula").required(true).args(["fo", "tl"])))]
    Eval {
        #[arg(long)]
        fo: Option<String>,
        #[arg(long)]
        tl: Option<String>,
        word: String,
        /// Position for temporal formulas (default: the first position).
        #[arg(long)]
        at: Option<usize>,
        /// Valuation for free variables, as `x=0,y=2`.
        #[arg(long, default_value = "")]
        nu: String,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// List the fragments a formula belongs to.
    #[command(group(ArgGroup::new("formula").required(true).args(["fo", "tl"])))]
    Classify {
        #[arg(long)]
        fo: Option<String>,
        #[arg(long)]
        tl: Option<String>,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Translate between positive fragments.
    Translate {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long, value_enum)]
        to: Target,
        input: String,
        /// Close the result of `utl+ -> fo2+` at the first position.
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Print an automaton for a language.
    Compile {
        #[command(flatten)]
        lang: LangArgs,
        /// Print the minimal deterministic automaton.
        #[arg(long)]
        det: bool,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Compare two languages on all words up to a length.
    Equiv {
        /// `fo:SENTENCE`, `tl:FORMULA`, `dfa:FILE`, `nfa:FILE` or `corpus:NAME`.
        left: String,
        right: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Decide whether a language is monotone.
    Monotone {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Upward, downward or dual closure of a language.
    #[command(group(ArgGroup::new("kind").required(true).args(["up", "down", "dual"])))]
    Closure {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long)]
        up: bool,
        #[arg(long)]
        down: bool,
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Syntactic monoids and orders.
    Monoid {
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// The positive Ehrenfeucht–Fraïssé game.
    Ef {
        #[command(subcommand)]
        action: EfAction,
    },
    /// Built-in counter-example languages and words.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum MonoidAction {
    /// Print the syntactic monoid of a language.
    Build {
        #[command(flatten)]
        lang: LangArgs,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Print the syntactic order of a monoid file.
    Order {
        #[arg(long)]
        monoid: PathBuf,
    },
    /// Print the elements of a monoid file with representative words.
    Print {
        #[arg(long)]
        monoid: PathBuf,
    },
}

#[derive(clap::Args, Debug)]
pub struct GameArgs {
    #[arg(long)]
    u0: String,
    #[arg(long)]
    u1: String,
    /// Rounds.
    #[arg(short)]
    k: usize,
    /// Tokens.
    #[arg(short)]
    n: usize,
    /// Comma-separated predicate names; inferred from the words when absent.
    #[arg(long)]
    preds: Option<String>,
    /// Binary signature: b0, lt, succ, b0+be, b0+be+, eq.
    #[arg(long, default_value = "b0")]
    signature: String,
}

#[derive(Subcommand, Debug)]
enum EfAction {
    /// Compute the winner.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        /// Print a line of play following both strategies.
        #[arg(long)]
        trace: bool,
    },
    /// Play against the computed strategy, reading moves from stdin.
    Play {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long = "as", value_enum)]
        role: play::Role,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Print a built-in automaton, word or formula.
    Emit {
        #[arg(value_enum)]
        item: CorpusItem,
        #[arg(default_value_t = 1)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CorpusItem {
    #[value(name = "K")]
    K,
    #[value(name = "K-between")]
    KBetween,
    #[value(name = "K-between-formula")]
    KBetweenFormula,
    #[value(name = "bracketK")]
    BracketK,
    U0,
    U1,
    Bu0,
    Bu1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    #[value(name = "ltl+")]
    LtlPlus,
    #[value(name = "utl+")]
    UtlPlus,
    #[value(name = "fo2+")]
    Fo2Plus,
    /// A polynomial `A0* s0 A1* ... ` describing a language.
    Poly,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    #[value(name = "fo3+")]
    Fo3Plus,
    #[value(name = "fo2+")]
    Fo2Plus,
    #[value(name = "utl+")]
    UtlPlus,
    /// UTL⁺ with only F, G, P, H (input over `{=,≠,≤,<}`).
    #[value(name = "utl+[pfhg]")]
    UtlPlusPfhg,
    /// Upward closure.
    #[value(name = "sigma2+")]
    Sigma2Plus,
    /// Downward closure.
    #[value(name = "sigma2-")]
    Sigma2Minus,
    /// Dual closure of the complement of the polynomial's language.
    #[value(name = "pi2+")]
    Pi2Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Via {
    Monoid,
    Automata,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Holds) => ExitCode::from(0),
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let states = max_states(cli.max_states);
    let words = cli.max_words.unwrap_or(DEFAULT_MAX_WORDS);
    match cli.command {
        Command::Eval { fo, tl, word, at, nu, preds } => eval(fo, tl, &word, at, &nu, &preds),
        Command::Classify { fo, tl, preds } => classify(fo, tl, &preds),
        Command::Translate { from, to, input, closed, preds } => translate(from, to, &input, closed, &preds),
        Command::Compile { lang, det, preds } => {
            let l = lang.load(&preds, states)?;
            match (&l.nfa, det) {
                (Some(n), false) => print!("{n}"),
                _ => print!("{}", l.dfa.minimize()),
            }
            Ok(Outcome::Holds)
        }
        Command::Equiv { left, right, max_len, preds } => equiv(&left, &right, max_len, &preds, states, words),
        Command::Monotone { lang, via, preds } => {
            let l = lang.load(&preds, states)?;
            monotone(&l.dfa, via, cli.max_states.unwrap_or(DEFAULT_MAX_ELEMENTS))
        }
        Command::Closure { lang, up, down, dual: _, preds } => {
            let l = lang.load(&preds, states)?;
            let nfa = l.nfa.unwrap_or_else(|| l.dfa.to_nfa());
            let out = if up {
                upward_closure_dfa(&l.dfa)?
            } else if down {
                downward_closure(&nfa).determinize_capped(states)?.minimize()
            } else {
                dual_closure(&l.dfa)?
            };
            print!("{out}");
            Ok(Outcome::Holds)
        }
        Command::Monoid { action } => monoid(action, cli.max_states.unwrap_or(DEFAULT_MAX_ELEMENTS), states),
        Command::Ef { action } => {
            let cap = cli.max_states.map_or(DEFAULT_MAX_GAME_STATES, |c| c as u128);
            match action {
                EfAction::Solve { game, trace } => ef_solve(&game, trace, cap),
                EfAction::Play { game, role } => {
                    let config = game_config(&game)?;
                    play::play(&config, role, cap, &mut std::io::stdin().lock(), &mut std::io::stdout())
                        .map(|_| Outcome::Holds)
                }
            }
        }
        Command::Corpus { action: CorpusAction::Emit { item, n } } => emit(item, n),
    }
}

fn parse_nu(text: &str) -> Result<Valuation, CliError> {
    let mut nu = Valuation::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (v, p) = part.split_once('=').ok_or_else(|| CliError(format!("bad valuation entry `{part}`")))?;
        let p: usize = p.trim().parse().map_err(|_| CliError(format!("bad position in `{part}`")))?;
        nu = nu.with(v.trim(), p);
    }
    Ok(nu)
}

fn eval(
    fo: Option<String>,
    tl: Option<String>,
    word: &str,
    at: Option<usize>,
    nu: &str,
    preds: &PredArgs,
) -> Result<Outcome, CliError> {
    let holds = if let Some(text) = fo {
        let (phi, mut p) = preds.fo(&text)?;
        if preds.preds.is_none() {
            p = preds.resolve(phi.unary_predicates().into_iter().chain(p_names(preds, word)?))?;
        }
        eval_fo(&parse_word(word, &p)?, &parse_nu(nu)?, &phi)?
    } else {
        let text = tl.expect("clap requires a formula");
        let (phi, mut p) = preds.tl(&text)?;
        if preds.preds.is_none() {
            p = preds.resolve(phi.atoms().into_iter().chain(p_names(preds, word)?))?;
        }
        let u = parse_word(word, &p)?;
        match at {
            Some(i) => eval_tl_at(&u, i, &phi)?,
            None => poslog::semantics::TlEvaluator::new(&phi, &p)?.eval_word(u.letters()),
        }
    };
    println!("{holds}");
    Ok(Outcome::from_bool(holds))
}

fn p_names(preds: &PredArgs, word: &str) -> Result<Vec<String>, CliError> {
    if !word.contains('{') {
        return Ok(Vec::new());
    }
    Ok(preds.from_words([word])?.names().to_vec())
}

fn classify(fo: Option<String>, tl: Option<String>, preds: &PredArgs) -> Result<Outcome, CliError> {
    if let Some(text) = fo {
        let (phi, _) = preds.fo(&text)?;
        let sig = preds.signature()?;
        for f in Fragment::ALL.into_iter().filter(|f| !f.is_temporal()) {
            println!("{f}: {}", classify_fo(&phi, &FragmentId::over(f, sig.clone())));
        }
    } else {
        let (phi, _) = preds.tl(&tl.expect("clap requires a formula"))?;
        for f in Fragment::ALL.into_iter().filter(|f| f.is_temporal()) {
            println!("{f}: {}", classify_tl(&phi, f));
        }
    }
    Ok(Outcome::Holds)
}

fn translate(from: Source, to: Target, input: &str, closed: bool, preds: &PredArgs) -> Result<Outcome, CliError> {
    let unsupported = || CliError(format!("no translation from {from:?} to {to:?}"));
    let out = match from {
        Source::LtlPlus => match to {
            Target::Fo3Plus => ltlp_to_fo3p(&preds.tl(input)?.0)?.to_string(),
            _ => return Err(unsupported()),
        },
        Source::UtlPlus => match to {
            Target::Fo2Plus if closed => utlp_to_fo2p_closed(&preds.tl(input)?.0)?.to_string(),
            Target::Fo2Plus => utlp_to_fo2p(&preds.tl(input)?.0)?.to_string(),
            _ => return Err(unsupported()),
        },
        Source::Fo2Plus => match to {
            Target::UtlPlus => fo2p_to_utlp(&preds.fo(input)?.0)?.to_string(),
            Target::UtlPlusPfhg => fo2p_less_to_utlp(&preds.fo(input)?.0)?.to_string(),
            _ => return Err(unsupported()),
        },
        Source::Poly => {
            let p = preds.from_words([input])?;
            let poly = Polynomial::parse(input, &p)?;
            match to {
                Target::Sigma2Plus => sigma2p_upward_closure(&poly).to_string(),
                Target::Sigma2Minus => sigma2m_downward_closure(&poly).to_string(),
                Target::Pi2Plus => pi2p_dual_closure(&poly).to_string(),
                _ => return Err(unsupported()),
            }
        }
    };
    println!("{out}");
    Ok(Outcome::Holds)
}

fn equiv(left: &str, right: &str, max_len: usize, preds: &PredArgs, states: usize, words: u64) -> Result<Outcome, CliError> {
    let (l, r) = (lang::LangArgs::from_spec(left)?, lang::LangArgs::from_spec(right)?);
    let names: Vec<String> = l.names(preds)?.into_iter().chain(r.names(preds)?).collect();
    let forced = PredArgs { preds: Some(preds.resolve(names)?.names().join(",")), signature: preds.signature.clone() };
    let (a, b) = (l.load(&forced, states)?, r.load(&forced, states)?);
    let p = a.dfa.predicates().clone();
    if &p != b.dfa.predicates() {
        return Err(CliError("the two languages use different predicates".into()));
    }
    match equiv_bruteforce(|w| (a.member)(w), |w| (b.member)(w), &p, max_len, false, words)? {
        EquivResult::Equivalent => {
            println!("equivalent on all words of length <= {max_len}");
            Ok(Outcome::Holds)
        }
        EquivResult::Counterexample(w) => {
            println!("counterexample: {w}");
            println!("left: {}", (a.member)(&w));
            println!("right: {}", (b.member)(&w));
            Ok(Outcome::Fails)
        }
    }
}

fn print_violation(v: &Monotonicity) {
    if let Monotonicity::Violation { below, above } = v {
        println!("accepted: {below}");
        println!("rejected: {above}");
    }
}

fn monotone(dfa: &poslog::automata::Dfa, via: Via, elements: usize) -> Result<Outcome, CliError> {
    let by_automaton = (via != Via::Monoid).then(|| is_monotone_automaton(dfa));
    let by_monoid = match via {
        Via::Automata => None,
        _ => Some(is_monotone_monoid(&syntactic_monoid_capped(dfa, elements)?)),
    };
    match (by_automaton, by_monoid) {
        (Some(a), Some(m)) => {
            if a.is_monotone() != m.is_monotone() {
                println!("monotone: disagree (automata {}, monoid {})", a.is_monotone(), m.is_monotone());
                print_violation(&a);
                print_violation(&m);
                return Err(CliError("deciders disagree".into()));
            }
            println!("monotone: {} (agree)", a.is_monotone());
            print_violation(&a);
            Ok(Outcome::from_bool(a.is_monotone()))
        }
        (Some(v), None) | (None, Some(v)) => {
            println!("monotone: {}", v.is_monotone());
            print_violation(&v);
            Ok(Outcome::from_bool(v.is_monotone()))
        }
        (None, None) => unreachable!(),
    }
}

fn read_monoid(path: &PathBuf) -> Result<FiniteMonoid, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(FiniteMonoid::parse(&text)?)
}

fn monoid(action: MonoidAction, elements: usize, states: usize) -> Result<Outcome, CliError> {
    match action {
        MonoidAction::Build { lang, preds } => {
            let l = lang.load(&preds, states)?;
            print!("{}", syntactic_monoid_capped(&l.dfa, elements)?);
        }
        MonoidAction::Order { monoid } => {
            print!("{}", syntactic_order(&read_monoid(&monoid)?)?);
        }
        MonoidAction::Print { monoid } => {
            let m = read_monoid(&monoid)?;
            let p = m.predicates().clone();
            println!("elements: {}", m.len());
            for (e, rep) in m.representatives().into_iter().enumerate() {
                let rep = rep.map_or("-".to_string(), |w| Word::new(p.clone(), w).to_string());
                let acc = if m.is_accepting(e) { " accepting" } else { "" };
                let id = if e == m.identity() { " identity" } else { "" };
                println!("{e}: {rep}{id}{acc}");
            }
            println!("monotone: {}", is_monotone_monoid(&m).is_monotone());
        }
    }
    Ok(Outcome::Holds)
}

pub fn game_config(g: &GameArgs) -> Result<GameConfig, CliError> {
    let pa = PredArgs { preds: g.preds.clone(), signature: g.signature.clone() };
    let p = pa.from_words([g.u0.as_str(), g.u1.as_str()])?;
    let (u0, u1) = (parse_word(&g.u0, &p)?, parse_word(&g.u1, &p)?);
    Ok(GameConfig::new(u0, u1, g.k, g.n, pa.signature()?))
}

pub fn describe_move(mv: Move) -> String {
    format!("token {} on u{}[{}]", mv.token, mv.side, mv.pos)
}

fn ef_solve(g: &GameArgs, trace: bool, cap: u128) -> Result<Outcome, CliError> {
    let config = game_config(g)?;
    let (winner, mut strategy) = ef_winner_capped(&config, cap)?;
    println!("{winner}");
    if trace {
        for (i, round) in strategy.principal_line().iter().enumerate() {
            let reply = match round.reply {
                Some(r) => format!("u{}[{r}]", 1 - round.spoiler.side),
                None => "no legal reply".to_string(),
            };
            println!("round {}: Spoiler {}; Duplicator {reply}", i + 1, describe_move(round.spoiler));
        }
    }
    Ok(Outcome::Holds)
}

fn emit(item: CorpusItem, n: usize) -> Result<Outcome, CliError> {
    match item {
        CorpusItem::K => print!("{}", build_k(&abc())?),
        CorpusItem::KBetween => print!("{}", build_k_between(&abc())?),
        CorpusItem::KBetweenFormula => println!("{}", fo2_between_formula()),
        CorpusItem::BracketK => print!("{}", build_bracket_k()?),
        CorpusItem::U0 => println!("{}", gen_u0(n)),
        CorpusItem::U1 => println!("{}", gen_u1(n)),
        CorpusItem::Bu0 => println!("{}", bits(&gen_bracket_u0(n))),
        CorpusItem::Bu1 => println!("{}", bits(&gen_bracket_u1(n))),
    }
    Ok(Outcome::Holds)
}
