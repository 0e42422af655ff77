//! Independent check of finite-state strategies: explores all plays
//! consistent with the strategy against an automaton for the losing traces.

use std::collections::{HashMap, VecDeque};

use crate::automata::{build_gnba, letter_of, trim_gnba};
use crate::formula::{expand_valuation, negate_nnf, Valuation};
use crate::game::{MealyStrategy, Player, PlayLasso};
use crate::graph;

use super::{PltlGame, SolveError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub wins: bool,
    /// A consistent play lost by the player, if any.
    pub counterexample: Option<PlayLasso>,
}

/// Checks that every play consistent with `s` is won by `player` with
/// respect to `alpha`.
///
/// The losing traces are described by the generalized Büchi automaton of
/// `¬φ_α` (Player 0) or `φ_α` (Player 1), with all parameters expanded; the
/// strategy fails iff the product of that automaton with the
/// strategy-restricted play graph has an accepting lasso. With `blinking`
/// the automaton only reads vertices at even distance from the start.
pub fn verify_strategy(
    g: &PltlGame,
    player: Player,
    alpha: &Valuation,
    s: &MealyStrategy,
    blinking: bool,
) -> Result<Verdict, SolveError> {
    let a = &g.arena;
    s.check_legal(a)?;
    let expanded = expand_valuation(&g.formula, alpha)?;
    let bad = match player {
        Player::Zero => negate_nnf(&expanded),
        Player::One => expanded,
    };
    let gnba = trim_gnba(&build_gnba(&bad)?);
    let significant = if blinking {
        a.bipartition()?
    } else {
        vec![true; a.num_vertices()]
    };
    let letters: Vec<u64> = a.labels.iter().map(|l| letter_of(&gnba.ap, l)).collect();
    let state_letter: Vec<u64> = gnba.sets.iter().map(|&b| gnba.closure.letter_of(b)).collect();

    type Node = (usize, usize, usize);
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |n: Node, nodes: &mut Vec<Node>, queue: &mut VecDeque<usize>| {
        *index.entry(n).or_insert_with(|| {
            nodes.push(n);
            queue.push_back(nodes.len() - 1);
            nodes.len() - 1
        })
    };
    let (v0, m0) = (a.init, s.memory.initial);
    let roots: Vec<usize> = gnba
        .initial
        .iter()
        .filter(|&&q| state_letter[q] == letters[v0])
        .map(|&q| intern((v0, m0, q), &mut nodes, &mut queue))
        .collect();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let (v, m, q) = nodes[x];
        let moves: Vec<usize> = if a.owner[v] == s.player {
            vec![s.nxt(v, m).expect("legal strategies are total")]
        } else {
            a.succ[v].clone()
        };
        let mut out = Vec::new();
        for w in moves {
            let m2 = s.memory.upd(m, w);
            if significant[w] {
                for &(_, q2) in &gnba.trans[q] {
                    if state_letter[q2] == letters[w] {
                        out.push(intern((w, m2, q2), &mut nodes, &mut queue));
                    }
                }
            } else {
                out.push(intern((w, m2, q), &mut nodes, &mut queue));
            }
        }
        if succ.len() <= x {
            succ.resize(x + 1, Vec::new());
        }
        succ[x] = out;
    }
    succ.resize(nodes.len(), Vec::new());
    let acceptance: Vec<Vec<bool>> = gnba
        .acceptance
        .iter()
        .map(|set| nodes.iter().map(|&(_, _, q)| set.states[q]).collect())
        .collect();
    // with blinking, a node at a non-significant vertex carries the state of
    // the previous position; every cycle still passes significant vertices
    let counterexample = graph::accepting_lasso(&succ, &roots, &acceptance).map(|(prefix, cycle)| PlayLasso {
        prefix: prefix.iter().map(|&x| nodes[x].0).collect(),
        cycle: cycle.iter().map(|&x| nodes[x].0).collect(),
    });
    Ok(Verdict {
        wins: counterexample.is_none(),
        counterexample,
    })
}
