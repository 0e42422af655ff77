//! Reduction of a game with an automaton-defined winning condition to a
//! parity game on the product of the arena with the automaton as memory.

use std::collections::{HashMap, VecDeque};

use crate::automata::{letter_of, DeterministicParity, Letter};
use crate::parity::{ParityGame, Solution};

use super::{product_with_memory, Arena, GameError, MealyStrategy, MemoryStructure, Player, Product};

/// Turns a deterministic parity automaton into a memory structure whose
/// state after a play prefix is the automaton state after reading the
/// prefix's labels. The initial memory has already read `ℓ(v₀)`.
///
/// With `blinking`, only vertices at even distance from the initial vertex
/// advance the automaton; the others leave the memory unchanged.
///
/// Memory states are the automaton states reachable from the initial one on
/// letters occurring in the arena. Returns the memory structure and the
/// priority of every memory state.
pub fn dpa_to_memory<D: DeterministicParity>(
    d: &mut D,
    a: &Arena,
    blinking: bool,
) -> Result<(MemoryStructure, Vec<usize>), GameError> {
    let significant = if blinking {
        a.bipartition()?
    } else {
        vec![true; a.num_vertices()]
    };
    let letters: Vec<Letter> = a.labels.iter().map(|l| letter_of(d.ap(), l)).collect();
    let start = d.step(d.initial(), letters[a.init])?;

    let mut ids: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut dpa_state = vec![start];
    let mut update: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(m) = queue.pop_front() {
        let q = dpa_state[m];
        let mut row = Vec::with_capacity(a.num_vertices());
        for v in 0..a.num_vertices() {
            let q2 = if significant[v] { d.step(q, letters[v])? } else { q };
            let id = *ids.entry(q2).or_insert_with(|| {
                dpa_state.push(q2);
                queue.push_back(dpa_state.len() - 1);
                dpa_state.len() - 1
            });
            row.push(id);
        }
        if update.len() <= m {
            update.resize(m + 1, Vec::new());
        }
        update[m] = row;
    }
    let priority = dpa_state.iter().map(|&q| d.priority(q)).collect();
    let memory = MemoryStructure {
        size: dpa_state.len(),
        initial: 0,
        update,
    };
    Ok((memory, priority))
}

/// The parity game `(A × M, c')` with `c'(v, m) = c(m)`.
#[derive(Clone, Debug)]
pub struct ParityReduction {
    pub memory: MemoryStructure,
    pub product: Product,
    pub game: ParityGame,
}

pub fn reduce_to_parity<D: DeterministicParity>(
    d: &mut D,
    a: &Arena,
    blinking: bool,
) -> Result<ParityReduction, GameError> {
    let (memory, prio) = dpa_to_memory(d, a, blinking)?;
    let product = product_with_memory(a, &memory);
    let priority = product.origin.iter().map(|&(_, m)| prio[m]).collect();
    let game = ParityGame {
        arena: product.arena.clone(),
        priority,
    };
    Ok(ParityReduction {
        memory,
        product,
        game,
    })
}

impl ParityReduction {
    /// The Mealy strategy for `player` induced by a positional strategy in
    /// the product. Memory/vertex pairs outside the product or outside the
    /// player's winning region move to the first successor.
    pub fn mealy_strategy(&self, a: &Arena, solution: &Solution, player: Player) -> MealyStrategy {
        let mut next: Vec<Vec<usize>> = (0..a.num_vertices())
            .map(|v| {
                if a.owner[v] == player {
                    vec![a.succ[v][0]; self.memory.size]
                } else {
                    Vec::new()
                }
            })
            .collect();
        for (x, &(v, m)) in self.product.origin.iter().enumerate() {
            if a.owner[v] == player && solution.winner[x] == player {
                if let Some(y) = solution.strategy[x] {
                    next[v][m] = self.product.origin[y].0;
                }
            }
        }
        MealyStrategy {
            player,
            memory: self.memory.clone(),
            next,
        }
    }
}
