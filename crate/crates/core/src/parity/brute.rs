//! Exhaustive solver for small games: enumerates all positional strategies
//! of each player and checks the resulting one-player graphs directly.

use crate::game::Player;

use super::{reach_cycles_won_by, ParityError, ParityGame, Solution};

/// Maximum number of positional strategies enumerated per player.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 16;

/// The vertices won by `player` with each of its positional strategies.
fn winning_sets(g: &ParityGame, player: Player) -> Result<Vec<(Vec<usize>, Vec<bool>)>, ParityError> {
    let a = &g.arena;
    let n = a.num_vertices();
    let own: Vec<usize> = (0..n).filter(|&v| a.owner[v] == player).collect();
    let combos = own
        .iter()
        .try_fold(1u128, |acc, &v| acc.checked_mul(a.succ[v].len() as u128))
        .unwrap_or(u128::MAX);
    if combos > BRUTE_FORCE_LIMIT {
        return Err(ParityError::TooLarge(combos));
    }
    let mut choice = vec![0usize; own.len()];
    let mut out = Vec::new();
    loop {
        let mut succ = a.succ.clone();
        for (k, &v) in own.iter().enumerate() {
            succ[v] = vec![a.succ[v][choice[k]]];
        }
        let lost = reach_cycles_won_by(&succ, &vec![true; n], &g.priority, player.opponent());
        let won = lost.iter().map(|&l| !l).collect();
        out.push((own.iter().zip(&choice).map(|(&v, &c)| a.succ[v][c]).collect(), won));
        // odometer increment
        let mut k = 0;
        loop {
            if k == own.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < a.succ[own[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Solves the game by enumeration. Each player's region is computed
/// independently, so a region overlap or gap would show up as a panic
/// rather than being silently resolved.
pub fn brute_force_parity(g: &ParityGame) -> Result<Solution, ParityError> {
    let n = g.num_vertices();
    let mut winner = vec![None; n];
    let mut strategy = vec![None; n];
    for player in [Player::Zero, Player::One] {
        let sets = winning_sets(g, player)?;
        let region: Vec<bool> = (0..n).map(|v| sets.iter().any(|(_, won)| won[v])).collect();
        // a uniform positional strategy exists; find one winning the whole region
        let (moves, _) = sets
            .iter()
            .find(|(_, won)| (0..n).all(|v| !region[v] || won[v]))
            .expect("positional determinacy yields a uniform winning strategy");
        let own: Vec<usize> = (0..n).filter(|&v| g.arena.owner[v] == player).collect();
        for v in 0..n {
            if region[v] {
                assert!(winner[v].is_none(), "vertex {v} won by both players");
                winner[v] = Some(player);
            }
        }
        for (&v, &w) in own.iter().zip(moves) {
            if region[v] {
                strategy[v] = Some(w);
            }
        }
    }
    let winner = winner
        .into_iter()
        .enumerate()
        .map(|(v, w)| w.unwrap_or_else(|| panic!("vertex {v} won by neither player")))
        .collect();
    Ok(Solution { winner, strategy })
}
