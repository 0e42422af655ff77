//! Emptiness, universality and finiteness of the winning-valuation sets.

use std::collections::BTreeSet;

use crate::formula::{alternating_color_rewrite, project_variable, strip_always, unify_variables, Valuation};
use crate::game::Player;

use super::{membership, PltlGame, SolveError, Stats};

/// Outcome of an emptiness check together with the size of the parity game
/// that decided it.
#[derive(Clone, Debug)]
pub struct EmptinessCheck {
    pub empty: bool,
    pub product_size: usize,
    pub stats: Stats,
}

/// Upper bound on the least winning value of a non-empty game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBound {
    pub bound: usize,
    pub product_size: usize,
}

/// Decides whether the winning set of `player` is empty.
///
/// For Player 0, `G≤` operators are dropped (their least value is the best
/// one) and the eventualities are replaced by the alternating-color
/// condition on the color-choice arena, giving an LTL game under blinking
/// semantics. Player 1 is handled on the dual game.
pub fn emptiness_check(g: &PltlGame, player: Player) -> Result<EmptinessCheck, SolveError> {
    if player == Player::One {
        return emptiness_check(&g.dual(), Player::Zero);
    }
    let stripped = strip_always(&g.formula);
    let m = match stripped.var_names().into_iter().next() {
        None => membership(&g.with_formula(stripped), Player::Zero, &Valuation::new(), false)?,
        Some(x) => {
            let unified = unify_variables(&stripped, &x)?;
            let color = g.fresh_proposition("c");
            let psi = alternating_color_rewrite(&unified, &BTreeSet::new(), &color)?;
            let expanded = g.arena.expand_alternating_color(&color)?;
            let ltl = PltlGame::new(expanded, psi)?;
            membership(&ltl, Player::Zero, &Valuation::new(), true)?
        }
    };
    Ok(EmptinessCheck {
        empty: !m.wins,
        product_size: m.stats.parity_vertices,
        stats: m.stats,
    })
}

pub fn emptiness(g: &PltlGame, player: Player) -> Result<bool, SolveError> {
    Ok(emptiness_check(g, player)?.empty)
}

/// Every valuation is winning for `player` iff the opponent wins none.
pub fn universality(g: &PltlGame, player: Player) -> Result<bool, SolveError> {
    emptiness(g, player.opponent())
}

/// Decides whether the winning set of `player` is finite. Over an empty
/// set of variables the only valuation is the empty one, so the set is
/// finite.
pub fn finiteness(g: &PltlGame, player: Player) -> Result<bool, SolveError> {
    if player == Player::One {
        return finiteness(&g.dual(), Player::Zero);
    }
    let vars = g.formula.var_names();
    if vars.is_empty() {
        return Ok(true);
    }
    if g.formula.contains_bounded_f() {
        // upward closed in every F≤ variable
        return emptiness(g, Player::Zero);
    }
    for y in &vars {
        let projected = g.with_formula(project_variable(&g.formula, y)?);
        if universality(&projected, Player::Zero)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `B = 2(N+1)` with `N` the size of the parity game from the emptiness
/// check of Player 0: a winning finite-state strategy there changes colors
/// at least every `N` steps, and the alternating-color argument turns this
/// into a winning value of at most `2(N+1)` for every variable.
pub fn compute_search_bound(g: &PltlGame) -> Result<SearchBound, SolveError> {
    let check = emptiness_check(g, Player::Zero)?;
    if check.empty {
        return Err(SolveError::EmptyWinningSet);
    }
    Ok(SearchBound {
        bound: 2 * (check.product_size + 1),
        product_size: check.product_size,
    })
}
