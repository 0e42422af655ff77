//! Membership: does a player win the game with respect to a fixed valuation?

use std::fmt;

use crate::automata::{
    build_gnba, degeneralize, remove_unproductive, trim_gnba, window_constraints, Constraint, Determinizer, Nba,
};
use crate::formula::{expand_valuation, negate_nnf, Formula, Valuation};
use crate::game::{reduce_to_parity, MealyStrategy, Player};
use crate::parity::solve_parity;

use super::{render_valuation, PltlGame, SolveError};

/// How the parity automaton for the winning condition is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Counter determinization of the automaton for `φ`.
    Counters,
    /// Counter determinization of the automaton for `¬φ`, complemented.
    Complement,
    /// `expand_valuation` to plain LTL, determinized without counters.
    Expanded,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Counters => "counters",
            Route::Complement => "complement",
            Route::Expanded => "expanded",
        })
    }
}

/// Sizes of the objects built by one membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub route: Route,
    pub gnba_states: usize,
    pub nba_states: usize,
    pub constraints: usize,
    pub dpa_states: usize,
    pub memory_states: usize,
    pub parity_vertices: usize,
    pub max_priority: usize,
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub player: Player,
    pub wins: bool,
    pub winner: Player,
    /// A winning strategy for `winner`.
    pub strategy: MealyStrategy,
    pub stats: Stats,
}

struct Pipeline {
    gnba_states: usize,
    nba: Nba,
    constraints: Vec<Constraint>,
}

fn pipeline(phi: &Formula, alpha: &Valuation) -> Result<Pipeline, SolveError> {
    let gnba = trim_gnba(&build_gnba(phi)?);
    let nba = remove_unproductive(&degeneralize(&gnba));
    let constraints = window_constraints(&gnba, &nba, alpha)?;
    Ok(Pipeline {
        gnba_states: gnba.num_states(),
        nba,
        constraints,
    })
}

fn route_for(phi: &Formula) -> Route {
    if phi.is_pltl_f() {
        Route::Counters
    } else if phi.is_pltl_g() {
        Route::Complement
    } else {
        Route::Expanded
    }
}

fn check_domain(phi: &Formula, alpha: &Valuation) -> Result<(), SolveError> {
    for x in phi.var_names() {
        alpha.require(&x)?;
    }
    Ok(())
}

fn run(g: &PltlGame, player: Player, alpha: &Valuation, blinking: bool, route: Route) -> Result<Membership, SolveError> {
    check_domain(&g.formula, alpha)?;
    let p = match route {
        Route::Counters => pipeline(&g.formula, alpha)?,
        Route::Complement => pipeline(&negate_nnf(&g.formula), alpha)?,
        Route::Expanded => pipeline(&expand_valuation(&g.formula, alpha)?, &Valuation::new())?,
    };
    let det = Determinizer::new(&p.nba, &p.constraints)?;
    let mut det = if route == Route::Complement { det.complemented() } else { det };
    let red = reduce_to_parity(&mut det, &g.arena, blinking)?;
    let solution = solve_parity(&red.game);
    let winner = solution.winner[0];
    let strategy = red.mealy_strategy(&g.arena, &solution, winner);
    let stats = Stats {
        route,
        gnba_states: p.gnba_states,
        nba_states: p.nba.num_states,
        constraints: p.constraints.len(),
        dpa_states: det.num_states(),
        memory_states: red.memory.size,
        parity_vertices: red.game.num_vertices(),
        max_priority: red.game.priority.iter().copied().max().unwrap_or(0),
    };
    Ok(Membership {
        player,
        wins: winner == player,
        winner,
        strategy,
        stats,
    })
}

/// Decides whether `player` wins `g` with respect to `alpha`; with
/// `blinking`, plays are judged on their even positions only.
///
/// Unipolar conditions go through the counter determinization (of `¬φ` for
/// PLTL_G); mixed conditions are expanded to LTL first.
pub fn membership(g: &PltlGame, player: Player, alpha: &Valuation, blinking: bool) -> Result<Membership, SolveError> {
    run(g, player, alpha, blinking, route_for(&g.formula))
}

/// Membership through the expansion route regardless of the formula class.
pub fn membership_expanded(
    g: &PltlGame,
    player: Player,
    alpha: &Valuation,
    blinking: bool,
) -> Result<Membership, SolveError> {
    run(g, player, alpha, blinking, Route::Expanded)
}

/// A finite-state winning strategy for `player`, whose memory is the
/// reachable part of the parity automaton.
pub fn synthesize_strategy(
    g: &PltlGame,
    player: Player,
    alpha: &Valuation,
    blinking: bool,
) -> Result<MealyStrategy, SolveError> {
    let m = membership(g, player, alpha, blinking)?;
    if !m.wins {
        return Err(SolveError::NotWinning {
            player,
            valuation: render_valuation(alpha),
        });
    }
    Ok(m.strategy)
}
