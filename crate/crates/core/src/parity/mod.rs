//! Min-parity games: Player 0 wins a play iff the least priority occurring
//! infinitely often is even.

mod brute;
mod verify;
mod zielonka;

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::game::{Arena, GameError, Player};
use crate::graph;

pub use brute::{brute_force_parity, BRUTE_FORCE_LIMIT};
pub use verify::verify_parity_strategy;
pub use zielonka::solve_parity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParityError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("vertex `{0}` has no priority")]
    MissingPriority(String),
    #[error("game too large for exhaustive enumeration ({0} strategy combinations)")]
    TooLarge(u128),
    #[error("strategy moves from `{from}` to `{to}`, which is not an edge")]
    IllegalMove { from: String, to: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    pub arena: Arena,
    pub priority: Vec<usize>,
}

/// Winning regions and positional strategies. `strategy[v]` is defined for
/// exactly the vertices owned by their winner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn region(&self, player: Player) -> Vec<bool> {
        self.winner.iter().map(|&w| w == player).collect()
    }

    /// The positional strategy of `player` on its own winning vertices.
    pub fn strategy_of(&self, game: &ParityGame, player: Player) -> Vec<Option<usize>> {
        (0..self.winner.len())
            .map(|v| {
                (game.arena.owner[v] == player && self.winner[v] == player)
                    .then(|| self.strategy[v])
                    .flatten()
            })
            .collect()
    }
}

impl ParityGame {
    pub fn num_vertices(&self) -> usize {
        self.arena.num_vertices()
    }

    /// Arena format plus `prio <vertex> <n>` lines.
    pub fn parse(text: &str) -> Result<ParityGame, ParityError> {
        let mut prios: Vec<(usize, String, usize)> = Vec::new();
        let mut rest = String::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first() == Some(&"prio") {
                let bad = || GameError::Parse {
                    line: ln + 1,
                    msg: "expected `prio <vertex> <n>`".into(),
                };
                let [_, v, n] = toks.as_slice() else {
                    return Err(bad().into());
                };
                let n: usize = n.parse().map_err(|_| bad())?;
                prios.push((ln, v.to_string(), n));
                rest.push('\n');
            } else {
                rest.push_str(raw);
                rest.push('\n');
            }
        }
        let arena = Arena::parse(&rest)?;
        let mut priority: Vec<Option<usize>> = vec![None; arena.num_vertices()];
        let index: HashMap<&str, usize> = arena
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        for (_, v, n) in prios {
            let i = *index.get(v.as_str()).ok_or(GameError::UnknownVertex(v))?;
            priority[i] = Some(n);
        }
        let priority = priority
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| ParityError::MissingPriority(arena.names[v].clone())))
            .collect::<Result<_, _>>()?;
        Ok(ParityGame { arena, priority })
    }

    pub fn emit(&self) -> String {
        let mut out = self.arena.emit();
        for v in 0..self.num_vertices() {
            writeln!(out, "prio {} {}", self.arena.names[v], self.priority[v]).unwrap();
        }
        out
    }
}

/// Vertices of the `active` subgraph of `succ` that can reach a cycle whose
/// least priority is won by `winner`.
pub(crate) fn reach_cycles_won_by(
    succ: &[Vec<usize>],
    active: &[bool],
    priority: &[usize],
    winner: Player,
) -> Vec<bool> {
    let n = succ.len();
    let mut bad = vec![false; n];
    let mut prios: Vec<usize> = (0..n).filter(|&v| active[v]).map(|v| priority[v]).collect();
    prios.sort_unstable();
    prios.dedup();
    for p in prios.into_iter().filter(|&p| Player::of_parity(p) == winner) {
        let sub: Vec<bool> = (0..n).map(|v| active[v] && priority[v] >= p).collect();
        let (comps, comp) = graph::scc(succ, &sub);
        for members in &comps {
            if members.iter().any(|&v| priority[v] == p) && graph::is_nontrivial(succ, members, &comp) {
                for &v in members {
                    bad[v] = true;
                }
            }
        }
    }
    // backward closure inside the active subgraph
    let pred = graph::predecessors(succ);
    let mut stack: Vec<usize> = (0..n).filter(|&v| bad[v]).collect();
    while let Some(v) = stack.pop() {
        for &u in &pred[v] {
            if active[u] && !bad[u] {
                bad[u] = true;
                stack.push(u);
            }
        }
    }
    bad
}
