use crate::game::Player;

use super::{reach_cycles_won_by, ParityError, ParityGame};

/// Checks that the positional strategy `strategy` wins for `player` from
/// every vertex of `region`. Moves of the player that are not edges are an
/// error; an undefined move at a reachable vertex makes the check fail.
pub fn verify_parity_strategy(
    g: &ParityGame,
    player: Player,
    region: &[bool],
    strategy: &[Option<usize>],
) -> Result<bool, ParityError> {
    let a = &g.arena;
    let n = a.num_vertices();
    let mut succ = a.succ.clone();
    for v in 0..n {
        if a.owner[v] != player {
            continue;
        }
        succ[v] = match strategy.get(v).copied().flatten() {
            Some(w) if w < n && a.has_edge(v, w) => vec![w],
            Some(w) => {
                return Err(ParityError::IllegalMove {
                    from: a.names[v].clone(),
                    to: a.names.get(w).cloned().unwrap_or_else(|| w.to_string()),
                })
            }
            None => Vec::new(),
        };
    }
    let reach = crate::graph::reachable(&succ, (0..n).filter(|&v| region[v]));
    if (0..n).any(|v| reach[v] && succ[v].is_empty()) {
        return Ok(false);
    }
    let lost = reach_cycles_won_by(&succ, &reach, &g.priority, player.opponent());
    Ok(!(0..n).any(|v| reach[v] && lost[v]))
}
