//! ω-automata: tableau construction, degeneralization, trimming,
//! ambiguity checks and counter-augmented determinization.
//!
//! All automata share one alphabet representation: a [`Letter`] is a bitmask
//! over the automaton's sorted atomic propositions (`ap`).

mod checks;
mod constraints;
mod dpa;
mod dump;
mod nba;
mod tableau;

use thiserror::Error;

use crate::formula::{FormulaError, Label};

pub use checks::{check_nonconfluent, check_unambiguous};
pub use constraints::{nba_lasso_accepts, window_constraints, Constraint};
pub use dpa::{
    complement_dpa, compute_priority, determinize_with_counters, dpa_accepts_lasso,
    parity_accepts_lasso, DeterministicParity, Determinizer, Dpa, DpaState,
};
pub use dump::{AutomatonDump, DumpKind};
pub use nba::{degeneralize, remove_unproductive, trim_gnba, Nba};
pub use tableau::{build_gnba, AcceptanceSet, Gnba};

/// A set of propositions as a bitmask over an automaton's `ap` vector.
pub type Letter = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("automaton is confluent: state {state} has two predecessors in the tracked set")]
    Confluent { state: usize },
    #[error("at most 64 atomic propositions are supported, got {0}")]
    TooManyPropositions(usize),
    #[error("state {0} has no empty set in its list")]
    IllFormed(usize),
    #[error("automaton dump, line {line}: {msg}")]
    Dump { line: usize, msg: String },
}

/// Projects a label onto `ap` (propositions outside `ap` are ignored).
pub fn letter_of(ap: &[String], label: &Label) -> Letter {
    ap.iter()
        .enumerate()
        .filter(|(_, p)| label.contains(*p))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Names of the propositions set in `letter`.
pub fn letter_names(ap: &[String], letter: Letter) -> Vec<&str> {
    ap.iter()
        .enumerate()
        .filter(|(i, _)| letter >> i & 1 == 1)
        .map(|(_, p)| p.as_str())
        .collect()
}

/// `Δ(S,a)` on an explicit transition relation.
pub(crate) fn post(
    trans: &[Vec<(Letter, usize)>],
    set: impl IntoIterator<Item = usize>,
    a: Letter,
) -> crate::bitset::BitSet {
    let mut out = crate::bitset::BitSet::new();
    for p in set {
        for &(b, q) in &trans[p] {
            if b == a {
                out.insert(q);
            }
        }
    }
    out
}
