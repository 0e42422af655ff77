//! Decision and optimization problems for PLTL games.

mod decide;
mod membership;
mod optimize;
mod report;
mod verify;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::automata::AutomataError;
use crate::formula::{negate_nnf, Formula, FormulaClass, FormulaError, Valuation};
use crate::game::{Arena, GameError, Player};

pub use decide::{compute_search_bound, emptiness, emptiness_check, finiteness, universality, EmptinessCheck, SearchBound};
pub use membership::{membership, membership_expanded, synthesize_strategy, Membership, Route, Stats};
pub use optimize::{optimize_unipolar, prompt_optimum, Objective, OptimizationResult, SolveOptions, Status};
pub use report::Report;
pub use verify::{verify_strategy, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("player {player} does not win with respect to {valuation}")]
    NotWinning { player: Player, valuation: String },
    #[error("the winning set of player 0 is empty")]
    EmptyWinningSet,
    #[error("objective {objective} needs a {expected} formula with at least one parameter, got {found}")]
    WrongObjective {
        objective: Objective,
        expected: &'static str,
        found: &'static str,
    },
    #[error("expected a formula with exactly one F<= parameter")]
    NotPrompt,
    #[error("computed search bound {0} is not a winning value")]
    UnsoundBound(usize),
}

/// An arena together with a winning condition for Player 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PltlGame {
    pub arena: Arena,
    pub formula: Formula,
    pub class: FormulaClass,
}

impl PltlGame {
    pub fn new(arena: Arena, formula: Formula) -> Result<Self, SolveError> {
        formula.check_sorts()?;
        let class = formula.class();
        Ok(PltlGame { arena, formula, class })
    }

    /// Owners swapped and the winning condition negated.
    pub fn dual(&self) -> PltlGame {
        PltlGame::new(self.arena.dual(), negate_nnf(&self.formula)).expect("negation preserves sorts")
    }

    pub fn with_formula(&self, formula: Formula) -> PltlGame {
        PltlGame::new(self.arena.clone(), formula).expect("rewrites preserve sorts")
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.formula.var_names()
    }

    /// A proposition name used neither by the arena nor by the formula.
    pub fn fresh_proposition(&self, base: &str) -> String {
        let mut used = self.arena.propositions();
        used.extend(self.formula.atoms());
        std::iter::once(base.to_string())
            .chain((1..).map(|i| format!("{base}{i}")))
            .find(|c| !used.contains(c))
            .expect("infinitely many candidates")
    }
}

pub(crate) fn render_valuation(alpha: &Valuation) -> String {
    if alpha.is_empty() {
        "{}".to_string()
    } else {
        alpha.to_string()
    }
}
