//! Turn-by-turn play against the computed strategy.
//!
//! As Spoiler, each input line is `SIDE TOKEN POS` (side 0 or 1); as
//! Duplicator, each line is the position answered on the other word.

use std::io::{BufRead, Write};

use clap::ValueEnum;
use poslog::games::{ef_winner_capped, GameConfig, GameState, Move, Winner};

use crate::{describe_move, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Spoiler,
    Duplicator,
}

fn read_line(input: &mut dyn BufRead) -> Result<Option<String>, CliError> {
    let mut line = String::new();
    if input.read_line(&mut line).map_err(|e| CliError(e.to_string()))? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_string()))
}

fn numbers(line: &str) -> Option<Vec<usize>> {
    line.split_whitespace().map(|t| t.parse().ok()).collect()
}

fn io(e: std::io::Error) -> CliError {
    CliError(e.to_string())
}

pub fn play(
    config: &GameConfig,
    role: Role,
    cap: u128,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (winner, mut strategy) = ef_winner_capped(config, cap)?;
    writeln!(out, "u0 = {}", config.u0).map_err(io)?;
    writeln!(out, "u1 = {}", config.u1).map_err(io)?;
    writeln!(out, "value: {winner}").map_err(io)?;
    let mut state = config.initial_state();
    if !strategy.initially_legal() {
        writeln!(out, "initial configuration is illegal: Spoiler wins").map_err(io)?;
        return Ok(());
    }
    let lens = [config.u0.len(), config.u1.len()];
    while state.rounds_left > 0 {
        writeln!(out, "round {} of {}", config.rounds - state.rounds_left + 1, config.rounds).map_err(io)?;
        let mv = match role {
            Role::Spoiler => {
                write!(out, "your move (side token pos): ").map_err(io)?;
                out.flush().map_err(io)?;
                let Some(line) = read_line(input)? else { return Ok(()) };
                match numbers(&line).as_deref() {
                    Some(&[side, token, pos]) if side < 2 && token < config.tokens && pos < lens[side] => {
                        Move { side, token, pos }
                    }
                    _ => {
                        writeln!(out, "invalid move `{line}`").map_err(io)?;
                        continue;
                    }
                }
            }
            Role::Duplicator => {
                let Some(mv) = strategy.spoiler_move(&state).or_else(|| first_move(&lens, config.tokens)) else {
                    writeln!(out, "Spoiler has no move").map_err(io)?;
                    break;
                };
                writeln!(out, "Spoiler plays {}", describe_move(mv)).map_err(io)?;
                mv
            }
        };
        let other = 1 - mv.side;
        let reply = match role {
            Role::Spoiler => strategy.duplicator_reply(&state, mv).or_else(|| strategy.any_legal_reply(&state, mv)),
            Role::Duplicator => loop {
                write!(out, "your reply on u{other}: ").map_err(io)?;
                out.flush().map_err(io)?;
                let Some(line) = read_line(input)? else { return Ok(()) };
                match numbers(&line).as_deref() {
                    Some(&[pos]) if pos < lens[other] => break Some(pos),
                    _ => writeln!(out, "invalid position `{line}`").map_err(io)?,
                }
            },
        };
        let Some(r) = reply else {
            writeln!(out, "Duplicator has no legal reply: Spoiler wins").map_err(io)?;
            return Ok(());
        };
        let (p0, p1) = if mv.side == 0 { (mv.pos, r) } else { (r, mv.pos) };
        let mut next = GameState { nu0: state.nu0.clone(), nu1: state.nu1.clone(), rounds_left: state.rounds_left - 1 };
        next.nu0[mv.token] = Some(p0);
        next.nu1[mv.token] = Some(p1);
        if !poslog::games::legal(&config.u0, &config.u1, &next, &config.signature) {
            writeln!(out, "u{other}[{r}] is illegal: Spoiler wins").map_err(io)?;
            return Ok(());
        }
        writeln!(out, "Duplicator answers u{other}[{r}]").map_err(io)?;
        state = next;
    }
    writeln!(out, "{} wins", Winner::Duplicator).map_err(io)?;
    Ok(())
}

fn first_move(lens: &[usize; 2], tokens: usize) -> Option<Move> {
    if tokens == 0 {
        return None;
    }
    (0..2).find(|&s| lens[s] > 0).map(|side| Move { side, token: 0, pos: 0 })
}
