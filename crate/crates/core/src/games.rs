//! The positive Ehrenfeucht–Fraïssé game `EF_k^{n+}[𝔅](u₀, u₁)`.
//!
//! Spoiler picks a word `u_δ`, a token and a position; Duplicator moves the
//! same token on the other word. After each round every atom true on `u₀`
//! under the placement must be true on `u₁`. For the order and successor
//! predicates, which come with their negations, this is agreement in both
//! directions. Duplicator wins by surviving `k` rounds.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::formulas::{BinaryKind, FoFormula, Signature};
use crate::semantics::{FoEvaluator, SemanticsError};
use crate::words::{Letter, Word, WordError};

/// Default cap on `(|u₀|+1)^n · (|u₁|+1)^n · (k+1)`.
pub const DEFAULT_MAX_GAME_STATES: u128 = 100_000_000;

/// Longest word the state encoding supports.
pub const MAX_GAME_WORD: usize = 254;

/// Most tokens the state encoding supports.
pub const MAX_TOKENS: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("game state space {count} exceeds the cap of {cap}")]
    ResourceCap { count: u128, cap: u128 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("formula is outside the game's fragment: {0}")]
    Fragment(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winner {
    Spoiler,
    Duplicator,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Spoiler => "Spoiler",
            Winner::Duplicator => "Duplicator",
        })
    }
}

/// Token placements on both words, `None` for tokens not yet placed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub nu0: Vec<Option<usize>>,
    pub nu1: Vec<Option<usize>>,
    pub rounds_left: usize,
}

/// A Spoiler move: token `token` onto position `pos` of `u_side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub side: usize,
    pub token: usize,
    pub pos: usize,
}

#[derive(Clone, Debug)]
pub struct GameConfig {
    pub u0: Word,
    pub u1: Word,
    pub rounds: usize,
    pub tokens: usize,
    pub signature: Signature,
    pub nu0: Vec<Option<usize>>,
    pub nu1: Vec<Option<usize>>,
}

impl GameConfig {
    /// A game with no tokens placed.
    pub fn new(u0: Word, u1: Word, rounds: usize, tokens: usize, signature: Signature) -> Self {
        GameConfig { u0, u1, rounds, tokens, signature, nu0: vec![None; tokens], nu1: vec![None; tokens] }
    }

    pub fn with_initial(mut self, nu0: Vec<Option<usize>>, nu1: Vec<Option<usize>>) -> Self {
        self.nu0 = nu0;
        self.nu1 = nu1;
        self
    }

    fn validate(&self) -> Result<(), GameError> {
        if self.u0.predicates() != self.u1.predicates() {
            return Err(WordError::PredicateMismatch {
                left: self.u0.predicates().to_string(),
                right: self.u1.predicates().to_string(),
            }
            .into());
        }
        let bad = |m: String| Err(GameError::Config(m));
        if self.tokens > MAX_TOKENS {
            return bad(format!("at most {MAX_TOKENS} tokens are supported"));
        }
        if self.u0.len() > MAX_GAME_WORD || self.u1.len() > MAX_GAME_WORD {
            return bad(format!("words longer than {MAX_GAME_WORD} are not supported"));
        }
        if self.nu0.len() != self.tokens || self.nu1.len() != self.tokens {
            return bad("initial placements must list every token".into());
        }
        for t in 0..self.tokens {
            if self.nu0[t].is_some() != self.nu1[t].is_some() {
                return bad(format!("token {t} is placed on one word only"));
            }
            if self.nu0[t].is_some_and(|p| p >= self.u0.len()) || self.nu1[t].is_some_and(|p| p >= self.u1.len()) {
                return bad(format!("token {t} is placed outside its word"));
            }
        }
        Ok(())
    }

    pub fn initial_state(&self) -> GameState {
        GameState { nu0: self.nu0.clone(), nu1: self.nu1.clone(), rounds_left: self.rounds }
    }
}

/// Letters strictly between two positions, as a bit set over letter bits.
fn between_letters(w: &[Letter], i: usize, j: usize) -> u64 {
    let (lo, hi) = (i.min(j), i.max(j));
    (lo + 1..hi).fold(0u64, |acc, k| acc | 1 << w[k].index())
}

/// Down-closure of a set of letters, as a bit set over letter bits.
fn down_closure(set: u64, letters: usize) -> u64 {
    let mut out = 0;
    for l in 0..letters {
        if set >> l & 1 == 1 {
            let l = Letter::from_bits(l as u16);
            for s in l.subsets() {
                out |= 1 << s.index();
            }
        }
    }
    out
}

struct Rules<'a> {
    w0: &'a [Letter],
    w1: &'a [Letter],
    order: Vec<BinaryKind>,
    between: bool,
    between_positive: bool,
    letters: usize,
}

impl<'a> Rules<'a> {
    fn new(w0: &'a [Letter], w1: &'a [Letter], sig: &Signature, letters: usize) -> Self {
        let order = sig
            .kinds()
            .filter(|k| !matches!(k, BinaryKind::Between | BinaryKind::BetweenPositive))
            .collect();
        Rules {
            w0,
            w1,
            order,
            between: sig.has(BinaryKind::Between),
            between_positive: sig.has(BinaryKind::BetweenPositive),
            letters,
        }
    }

    fn order_holds(kind: BinaryKind, i: usize, j: usize) -> bool {
        match kind {
            BinaryKind::Eq => i == j,
            BinaryKind::Neq => i != j,
            BinaryKind::Le => i <= j,
            BinaryKind::Lt => i < j,
            BinaryKind::Succ => j == i + 1,
            BinaryKind::NotSucc => j != i + 1,
            BinaryKind::Between | BinaryKind::BetweenPositive => unreachable!(),
        }
    }

    /// Constraints between tokens at `(p0, p1)` and `(q0, q1)`.
    fn pair_ok(&self, p0: usize, p1: usize, q0: usize, q1: usize) -> bool {
        for &k in &self.order {
            if Self::order_holds(k, p0, q0) != Self::order_holds(k, p1, q1)
                || Self::order_holds(k, q0, p0) != Self::order_holds(k, q1, p1)
            {
                return false;
            }
        }
        if self.between || self.between_positive {
            // A between atom true on u₀ must be true on u₁. Over all guards
            // this is inclusion of the letter sets; over positive guards,
            // inclusion of their down-closures.
            let (b0, b1) = (between_letters(self.w0, p0, q0), between_letters(self.w1, p1, q1));
            if self.between && b0 & !b1 != 0 {
                return false;
            }
            if self.between_positive && down_closure(b0, self.letters) & !down_closure(b1, self.letters) != 0 {
                return false;
            }
        }
        true
    }

    fn unary_ok(&self, p0: usize, p1: usize) -> bool {
        self.w0[p0].is_subset_of(self.w1[p1])
    }

    /// Full legality check of a configuration.
    fn legal(&self, nu0: &[Option<usize>], nu1: &[Option<usize>]) -> bool {
        let placed: Vec<(usize, usize)> = nu0.iter().zip(nu1).filter_map(|(a, b)| Some(((*a)?, (*b)?))).collect();
        placed.iter().all(|&(p0, p1)| self.unary_ok(p0, p1))
            && placed.iter().enumerate().all(|(i, &(p0, p1))| {
                placed[i + 1..].iter().all(|&(q0, q1)| self.pair_ok(p0, p1, q0, q1))
            })
    }

    /// Legality after moving `token` to `(p0, p1)`, assuming the rest of the
    /// configuration is legal.
    fn legal_after(&self, nu0: &[u8], nu1: &[u8], token: usize, p0: usize, p1: usize) -> bool {
        self.unary_ok(p0, p1)
            && (0..nu0.len()).all(|t| {
                t == token || nu0[t] == 0 || self.pair_ok(p0, p1, nu0[t] as usize - 1, nu1[t] as usize - 1)
            })
    }
}

/// `legal(state, signature)`: every atom true on `(u₀, ν₀)` is true on
/// `(u₁, ν₁)`. Order and successor predicates then agree both ways.
pub fn legal(u0: &Word, u1: &Word, state: &GameState, signature: &Signature) -> bool {
    let rules = Rules::new(u0.letters(), u1.letters(), signature, u0.predicates().alphabet_size());
    rules.legal(&state.nu0, &state.nu1)
}

struct Solver<'a> {
    rules: Rules<'a>,
    tokens: usize,
    memo: HashMap<u128, bool>,
}

/// Placements are stored as `position + 1`, `0` for unplaced.
fn key(nu0: &[u8], nu1: &[u8], k: usize) -> u128 {
    let mut x = k as u128;
    for (&a, &b) in nu0.iter().zip(nu1) {
        x = x << 16 | (a as u128) << 8 | b as u128;
    }
    x
}

impl Solver<'_> {
    /// Whether Duplicator survives `k` more rounds from a legal configuration.
    fn duplicator_wins(&mut self, nu0: &mut Vec<u8>, nu1: &mut Vec<u8>, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let kk = key(nu0, nu1, k);
        if let Some(&v) = self.memo.get(&kk) {
            return v;
        }
        let mut result = true;
        'moves: for side in 0..2 {
            let len = if side == 0 { self.rules.w0.len() } else { self.rules.w1.len() };
            for token in 0..self.tokens {
                for pos in 0..len {
                    if self.reply(nu0, nu1, k, Move { side, token, pos }).is_none() {
                        result = false;
                        break 'moves;
                    }
                }
            }
        }
        self.memo.insert(kk, result);
        result
    }

    /// Lowest winning reply to `mv`, if any.
    fn reply(&mut self, nu0: &mut Vec<u8>, nu1: &mut Vec<u8>, k: usize, mv: Move) -> Option<usize> {
        let other_len = if mv.side == 0 { self.rules.w1.len() } else { self.rules.w0.len() };
        let (saved0, saved1) = (nu0[mv.token], nu1[mv.token]);
        let mut found = None;
        for r in 0..other_len {
            let (p0, p1) = if mv.side == 0 { (mv.pos, r) } else { (r, mv.pos) };
            if !self.rules.legal_after(nu0, nu1, mv.token, p0, p1) {
                continue;
            }
            nu0[mv.token] = p0 as u8 + 1;
            nu1[mv.token] = p1 as u8 + 1;
            let ok = self.duplicator_wins(nu0, nu1, k - 1);
            nu0[mv.token] = saved0;
            nu1[mv.token] = saved1;
            if ok {
                found = Some(r);
                break;
            }
        }
        found
    }
}

fn encode(nu: &[Option<usize>]) -> Vec<u8> {
    nu.iter().map(|p| p.map_or(0, |p| p as u8 + 1)).collect()
}

/// The solved game: its value plus deterministic strategies for both
/// players, computed from the memo table on demand.
pub struct Strategy<'a> {
    config: &'a GameConfig,
    solver: Solver<'a>,
    initially_legal: bool,
}

/// One round of a principal line of play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub spoiler: Move,
    /// `None` when Duplicator has no legal reply.
    pub reply: Option<usize>,
}

impl Strategy<'_> {
    /// Spoiler's lowest winning move from `state`, or `None` when Duplicator
    /// wins from it. Moves are ordered by side, then token, then position.
    pub fn spoiler_move(&mut self, state: &GameState) -> Option<Move> {
        let (mut nu0, mut nu1) = (encode(&state.nu0), encode(&state.nu1));
        if state.rounds_left == 0 {
            return None;
        }
        for side in 0..2 {
            let len = if side == 0 { self.config.u0.len() } else { self.config.u1.len() };
            for token in 0..self.config.tokens {
                for pos in 0..len {
                    let mv = Move { side, token, pos };
                    if self.solver.reply(&mut nu0, &mut nu1, state.rounds_left, mv).is_none() {
                        return Some(mv);
                    }
                }
            }
        }
        None
    }

    /// Duplicator's lowest winning reply to `mv`, or `None` if every legal
    /// reply loses.
    pub fn duplicator_reply(&mut self, state: &GameState, mv: Move) -> Option<usize> {
        if state.rounds_left == 0 {
            return None;
        }
        let (mut nu0, mut nu1) = (encode(&state.nu0), encode(&state.nu1));
        self.solver.reply(&mut nu0, &mut nu1, state.rounds_left, mv)
    }

    /// Lowest legal reply to `mv`, winning or not.
    pub fn any_legal_reply(&self, state: &GameState, mv: Move) -> Option<usize> {
        let (nu0, nu1) = (encode(&state.nu0), encode(&state.nu1));
        let other_len = if mv.side == 0 { self.config.u1.len() } else { self.config.u0.len() };
        (0..other_len).find(|&r| {
            let (p0, p1) = if mv.side == 0 { (mv.pos, r) } else { (r, mv.pos) };
            self.solver.rules.legal_after(&nu0, &nu1, mv.token, p0, p1)
        })
    }

    /// Both players follow their strategies: Spoiler plays its lowest winning
    /// move (or the first move when losing), Duplicator its lowest winning
    /// reply (or its lowest legal reply when losing).
    pub fn principal_line(&mut self) -> Vec<Round> {
        let mut state = self.config.initial_state();
        let mut out = Vec::new();
        if !self.initially_legal {
            return out;
        }
        while state.rounds_left > 0 {
            let mv = match self.spoiler_move(&state) {
                Some(mv) => mv,
                None => {
                    let side = if self.config.u0.is_empty() { 1 } else { 0 };
                    let len = if side == 0 { self.config.u0.len() } else { self.config.u1.len() };
                    if len == 0 || self.config.tokens == 0 {
                        break;
                    }
                    Move { side, token: 0, pos: 0 }
                }
            };
            let reply = self.duplicator_reply(&state, mv).or_else(|| self.any_legal_reply(&state, mv));
            out.push(Round { spoiler: mv, reply });
            let Some(r) = reply else { break };
            let (p0, p1) = if mv.side == 0 { (mv.pos, r) } else { (r, mv.pos) };
            state.nu0[mv.token] = Some(p0);
            state.nu1[mv.token] = Some(p1);
            state.rounds_left -= 1;
        }
        out
    }

    pub fn initially_legal(&self) -> bool {
        self.initially_legal
    }

    /// Number of memoized positions.
    pub fn explored(&self) -> usize {
        self.solver.memo.len()
    }
}

pub fn ef_winner(config: &GameConfig) -> Result<(Winner, Strategy<'_>), GameError> {
    ef_winner_capped(config, DEFAULT_MAX_GAME_STATES)
}

/// Exact game value by memoized exhaustive search.
pub fn ef_winner_capped(config: &GameConfig, cap: u128) -> Result<(Winner, Strategy<'_>), GameError> {
    config.validate()?;
    let bound = ((config.u0.len() as u128 + 1).saturating_pow(config.tokens as u32))
        .saturating_mul((config.u1.len() as u128 + 1).saturating_pow(config.tokens as u32))
        .saturating_mul(config.rounds as u128 + 1);
    if bound > cap {
        return Err(GameError::ResourceCap { count: bound, cap });
    }
    let rules = Rules::new(
        config.u0.letters(),
        config.u1.letters(),
        &config.signature,
        config.u0.predicates().alphabet_size(),
    );
    let initially_legal = rules.legal(&config.nu0, &config.nu1);
    let mut solver = Solver { rules, tokens: config.tokens, memo: HashMap::new() };
    let winner = if initially_legal
        && solver.duplicator_wins(&mut encode(&config.nu0), &mut encode(&config.nu1), config.rounds)
    {
        Winner::Duplicator
    } else {
        Winner::Spoiler
    };
    Ok((winner, Strategy { config, solver, initially_legal }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Soundness {
    /// `φ` does not separate the pair.
    NotSeparating,
    /// `φ` separates the pair and Spoiler wins the game with `qr(φ)` rounds.
    Confirmed { rounds: usize },
    /// `φ` separates the pair but Duplicator wins: a counterexample to the
    /// soundness direction.
    Violated { rounds: usize },
}

/// If `u₀ ⊨ φ` and `u₁ ⊭ φ`, checks that Spoiler wins
/// `EF_{qr(φ)}^{n+}[𝔅](u₀, u₁)`.
pub fn ef_soundness_check(
    phi: &FoFormula,
    u0: &Word,
    u1: &Word,
    tokens: usize,
    signature: &Signature,
) -> Result<Soundness, GameError> {
    if !phi.is_positive() {
        return Err(GameError::Fragment(format!("{phi} is not positive")));
    }
    if phi.distinct_vars() > tokens {
        return Err(GameError::Fragment(format!("{phi} uses more than {tokens} variables")));
    }
    if !phi.uses_only(signature) {
        return Err(GameError::Fragment(format!("{phi} uses predicates outside the signature")));
    }
    if !phi.is_closed() {
        return Err(GameError::Fragment(format!("{phi} has free variables")));
    }
    let ev = FoEvaluator::new(phi, u0.predicates())?;
    if !(ev.eval(u0.letters(), &[]) && !ev.eval(u1.letters(), &[])) {
        return Ok(Soundness::NotSeparating);
    }
    let rounds = phi.quantifier_rank();
    let config = GameConfig::new(u0.clone(), u1.clone(), rounds, tokens, signature.clone());
    Ok(match ef_winner(&config)?.0 {
        Winner::Spoiler => Soundness::Confirmed { rounds },
        Winner::Duplicator => Soundness::Violated { rounds },
    })
}
