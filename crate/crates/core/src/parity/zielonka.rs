//! Zielonka's recursive algorithm with positional strategies.

use std::collections::VecDeque;

use crate::game::Player;

use super::{ParityGame, Solution};

struct Ctx<'a> {
    g: &'a ParityGame,
    pred: Vec<Vec<usize>>,
}

/// Player `j`'s attractor to `target` inside `active`. Returns the attractor
/// and sets `strategy[v]` for the player's vertices outside `target`: the
/// lowest-id successor that is strictly closer to the target.
fn attractor(ctx: &Ctx, active: &[bool], target: &[bool], j: Player, strategy: &mut [Option<usize>]) -> Vec<bool> {
    let a = &ctx.g.arena;
    let n = a.num_vertices();
    let mut rank = vec![usize::MAX; n];
    let mut count: Vec<usize> = (0..n)
        .map(|v| a.succ[v].iter().filter(|&&w| active[w]).count())
        .collect();
    let mut queue = VecDeque::new();
    for v in 0..n {
        if active[v] && target[v] {
            rank[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &ctx.pred[w] {
            if !active[v] || rank[v] != usize::MAX {
                continue;
            }
            let enter = if a.owner[v] == j {
                true
            } else {
                count[v] -= 1;
                count[v] == 0
            };
            if enter {
                rank[v] = rank[w] + 1;
                queue.push_back(v);
            }
        }
    }
    for v in 0..n {
        if rank[v] != usize::MAX && rank[v] > 0 && a.owner[v] == j {
            strategy[v] = a.succ[v].iter().copied().find(|&w| active[w] && rank[w] < rank[v]);
        }
    }
    rank.iter().map(|&r| r != usize::MAX).collect()
}

fn minus(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && !y).collect()
}

/// Solves the subgame on `active`, which must be a trap for neither player
/// to escape (every active vertex keeps an active successor). Winners of
/// inactive vertices are left untouched.
fn solve(ctx: &Ctx, active: &[bool], winner: &mut [Player], strategy: &mut [Option<usize>]) {
    let g = ctx.g;
    let n = g.num_vertices();
    let Some(p) = (0..n).filter(|&v| active[v]).map(|v| g.priority[v]).min() else {
        return;
    };
    let i = Player::of_parity(p);
    let top: Vec<bool> = (0..n).map(|v| active[v] && g.priority[v] == p).collect();
    let mut attr_strategy = vec![None; n];
    let attr = attractor(ctx, active, &top, i, &mut attr_strategy);
    let rest = minus(active, &attr);
    solve(ctx, &rest, winner, strategy);

    let opponent_wins = (0..n).any(|v| rest[v] && winner[v] != i);
    if !opponent_wins {
        for v in 0..n {
            if !attr[v] {
                continue;
            }
            winner[v] = i;
            strategy[v] = None;
            if g.arena.owner[v] == i {
                strategy[v] = if top[v] {
                    g.arena.succ[v].iter().copied().find(|&w| active[w])
                } else {
                    attr_strategy[v]
                };
            }
        }
        return;
    }

    let lost: Vec<bool> = (0..n).map(|v| rest[v] && winner[v] != i).collect();
    let mut b_strategy = vec![None; n];
    let b = attractor(ctx, active, &lost, i.opponent(), &mut b_strategy);
    for v in 0..n {
        if b[v] && !lost[v] {
            winner[v] = i.opponent();
            strategy[v] = if g.arena.owner[v] == i.opponent() { b_strategy[v] } else { None };
        }
    }
    // vertices in `lost` keep the opponent's strategy from the first call
    solve(ctx, &minus(active, &b), winner, strategy);
}

/// Solves a min-parity game: winning regions partition the vertices and each
/// winner gets a uniform positional strategy on its region.
pub fn solve_parity(g: &ParityGame) -> Solution {
    let n = g.num_vertices();
    let ctx = Ctx {
        g,
        pred: crate::graph::predecessors(&g.arena.succ),
    };
    let mut winner = vec![Player::Zero; n];
    let mut strategy = vec![None; n];
    solve(&ctx, &vec![true; n], &mut winner, &mut strategy);
    Solution { winner, strategy }
}
