//! Language sources shared by several subcommands.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use poslog::automata::{compile_fo_capped, compile_tl_capped, Dfa, Nfa, DEFAULT_MAX_STATES};
use poslog::corpus::{abc, build_bracket_k, build_k, build_k_between};
use poslog::formulas::{parse_fo, parse_tl, FoFormula, Signature, TlFormula};
use poslog::semantics::{FoEvaluator, TlEvaluator};
use poslog::words::{PredicateSet, Word};

use crate::CliError;

#[derive(Args, Debug, Clone)]
#[group(id = "language", required = true, multiple = false)]
pub struct LangArgs {
    /// Deterministic automaton file.
    #[arg(long, group = "language")]
    pub dfa: Option<PathBuf>,
    /// Nondeterministic automaton file.
    #[arg(long, group = "language")]
    pub nfa: Option<PathBuf>,
    /// Closed first-order sentence.
    #[arg(long, group = "language")]
    pub fo: Option<String>,
    /// Temporal formula, evaluated at the first position.
    #[arg(long, group = "language")]
    pub tl: Option<String>,
    /// Built-in language: K, K-between or bracketK.
    #[arg(long, group = "language")]
    pub corpus: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PredArgs {
    /// Comma-separated predicate names; inferred from the input when absent.
    #[arg(long)]
    pub preds: Option<String>,
    /// Binary signature for first-order input: b0, lt, succ, b0+be, b0+be+, eq.
    #[arg(long, default_value = "b0+be")]
    pub signature: String,
}

impl PredArgs {
    pub fn signature(&self) -> Result<Signature, CliError> {
        Signature::parse(&self.signature).ok_or_else(|| CliError(format!("unknown signature `{}`", self.signature)))
    }

    /// The explicit predicate set, or the names in `found` (`p` if none).
    pub fn resolve(&self, found: impl IntoIterator<Item = String>) -> Result<PredicateSet, CliError> {
        if let Some(p) = &self.preds {
            return Ok(PredicateSet::parse(p)?);
        }
        let mut names: Vec<String> = found.into_iter().collect();
        names.sort();
        names.dedup();
        if names.is_empty() {
            names.push("p".into());
        }
        Ok(PredicateSet::new(names)?)
    }

    pub fn fo(&self, text: &str) -> Result<(FoFormula, PredicateSet), CliError> {
        let phi = parse_fo(text, &self.signature()?)?;
        let preds = self.resolve(phi.unary_predicates())?;
        Ok((phi, preds))
    }

    pub fn tl(&self, text: &str) -> Result<(TlFormula, PredicateSet), CliError> {
        let phi = parse_tl(text)?;
        let preds = self.resolve(phi.atoms())?;
        Ok((phi, preds))
    }

    /// Predicate names used inside `{…}` letters.
    pub fn from_words<'a>(&self, words: impl IntoIterator<Item = &'a str>) -> Result<PredicateSet, CliError> {
        let mut found = Vec::new();
        for w in words {
            let mut rest = w;
            while let Some(open) = rest.find('{') {
                let close = rest[open..].find('}').map_or(rest.len(), |c| open + c);
                found.extend(rest[open + 1..close].split(',').map(str::trim).filter(|n| !n.is_empty()).map(String::from));
                rest = &rest[(close + 1).min(rest.len())..];
            }
        }
        self.resolve(found)
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// A language as an automaton, plus a direct membership test when the
/// source is a formula.
pub struct Language {
    pub dfa: Dfa,
    pub nfa: Option<Nfa>,
    pub member: Box<dyn Fn(&Word) -> bool>,
}

impl LangArgs {
    /// Parses `fo:…`, `tl:…`, `dfa:PATH`, `nfa:PATH` or `corpus:NAME`.
    pub fn from_spec(spec: &str) -> Result<LangArgs, CliError> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| CliError(format!("`{spec}` should start with fo:, tl:, dfa:, nfa: or corpus:")))?;
        let mut l = LangArgs { dfa: None, nfa: None, fo: None, tl: None, corpus: None };
        match kind {
            "fo" => l.fo = Some(rest.into()),
            "tl" => l.tl = Some(rest.into()),
            "dfa" => l.dfa = Some(rest.into()),
            "nfa" => l.nfa = Some(rest.into()),
            "corpus" => l.corpus = Some(rest.into()),
            other => return Err(CliError(format!("unknown language kind `{other}`"))),
        }
        Ok(l)
    }

    /// Predicate names the source mentions or declares.
    pub fn names(&self, preds: &PredArgs) -> Result<Vec<String>, CliError> {
        Ok(if let Some(text) = &self.fo {
            parse_fo(text, &preds.signature()?)?.unary_predicates().into_iter().collect()
        } else if let Some(text) = &self.tl {
            parse_tl(text)?.atoms().into_iter().collect()
        } else if let Some(path) = &self.dfa {
            Dfa::parse(&read(path)?)?.predicates().names().to_vec()
        } else if let Some(path) = &self.nfa {
            Nfa::parse(&read(path)?)?.predicates().names().to_vec()
        } else {
            match self.corpus.as_deref() {
                Some("bracketK") => vec!["p".into()],
                _ => abc().names().to_vec(),
            }
        })
    }

    pub fn load(&self, preds: &PredArgs, max_states: usize) -> Result<Language, CliError> {
        if let Some(path) = &self.dfa {
            let dfa = Dfa::parse(&read(path)?)?;
            return Ok(from_dfa(dfa, None));
        }
        if let Some(path) = &self.nfa {
            let nfa = Nfa::parse(&read(path)?)?;
            let dfa = nfa.determinize_capped(max_states)?;
            return Ok(from_dfa(dfa, Some(nfa)));
        }
        if let Some(name) = &self.corpus {
            let nfa = match name.as_str() {
                "K" => build_k(&abc())?,
                "K-between" => build_k_between(&abc())?,
                "bracketK" => build_bracket_k()?,
                other => return Err(CliError(format!("unknown corpus language `{other}`"))),
            };
            let dfa = nfa.determinize_capped(max_states)?.minimize();
            return Ok(from_dfa(dfa, Some(nfa)));
        }
        if let Some(text) = &self.fo {
            let (phi, p) = preds.fo(text)?;
            if !phi.is_closed() {
                return Err(CliError(format!("{phi} has free variables")));
            }
            let dfa = compile_fo_capped(&phi, &p, max_states)?;
            let ev = FoEvaluator::new(&phi, &p)?;
            return Ok(Language { dfa, nfa: None, member: Box::new(move |w| ev.eval(w.letters(), &[])) });
        }
        if let Some(text) = &self.tl {
            let (phi, p) = preds.tl(text)?;
            let nfa = compile_tl_capped(&phi, &p, max_states)?;
            let dfa = nfa.determinize_capped(max_states)?.minimize();
            let ev = TlEvaluator::new(&phi, &p)?;
            return Ok(Language { dfa, nfa: Some(nfa), member: Box::new(move |w| ev.eval_word(w.letters())) });
        }
        unreachable!("clap enforces one language source")
    }
}

fn from_dfa(dfa: Dfa, nfa: Option<Nfa>) -> Language {
    let d = dfa.clone();
    Language { dfa, nfa, member: Box::new(move |w| d.accepts_letters(w.letters())) }
}

pub fn max_states(flag: Option<usize>) -> usize {
    flag.unwrap_or(DEFAULT_MAX_STATES)
}
