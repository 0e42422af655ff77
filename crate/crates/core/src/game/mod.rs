//! Arenas, plays, memory structures and game reductions.

mod arena;
mod memory;
mod play;
mod reduction;

use thiserror::Error;

use crate::automata::AutomataError;

pub use arena::{Arena, Player};
pub use memory::{product_with_memory, MealyStrategy, MemoryStructure, Product};
pub use play::{play_trace, PlayLasso};
pub use reduction::{dpa_to_memory, reduce_to_parity, ParityReduction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("vertex `{0}` has no outgoing edge")]
    NoOutgoing(String),
    #[error("missing or invalid `init` line")]
    MissingInit,
    #[error("proposition `{0}` already labels the arena")]
    ColorClash(String),
    #[error("arena is not bipartite from the initial vertex (conflict at `{0}`)")]
    NotBipartite(String),
    #[error("strategy moves from `{from}` to `{to}`, which is not an edge")]
    IllegalMove { from: String, to: String },
    #[error("strategy has no move at `{0}` in memory state {1}")]
    UndefinedMove(String, usize),
    #[error("invalid play: {0}")]
    InvalidPlay(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}
