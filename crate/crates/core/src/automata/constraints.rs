//! Window constraints on runs and an exact lasso acceptance oracle.

use std::collections::HashMap;

use crate::formula::{FormulaError, LassoWord, Valuation};
use crate::graph;

use super::{letter_of, Gnba, Nba};

/// Every infix of length `bound` of an accepted run must visit `states`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub states: Vec<bool>,
    pub bound: usize,
}

/// Lifts every `F≤x ψ` acceptance set of `gnba` onto `nba` (which must have
/// been degeneralized from it) with window length `α(x)+1`.
pub fn window_constraints(
    gnba: &Gnba,
    nba: &Nba,
    alpha: &Valuation,
) -> Result<Vec<Constraint>, FormulaError> {
    gnba.acceptance
        .iter()
        .filter_map(|set| set.window.as_ref().map(|x| (set, x)))
        .map(|(set, x)| {
            Ok(Constraint {
                states: nba.lift(&set.states),
                bound: alpha.require(x)? + 1,
            })
        })
        .collect()
}

/// Counter value after entering state `q` with predecessor counter `prev`
/// (`None` at the start of the run); `None` when the window is exceeded.
pub(crate) fn advance(c: &Constraint, q: usize, prev: Option<usize>) -> Option<usize> {
    if c.states[q] {
        Some(0)
    } else {
        let next = prev.map_or(1, |d| d + 1);
        (next < c.bound).then_some(next)
    }
}

/// Decides whether `a` has an accepting run on `w` that satisfies every
/// window constraint, by Büchi emptiness on the product of the automaton,
/// the per-run counters and the word's positions.
pub fn nba_lasso_accepts(a: &Nba, constraints: &[Constraint], w: &LassoWord) -> bool {
    let letters: Vec<u64> = (0..w.period_positions())
        .map(|i| letter_of(&a.ap, w.letter(i)))
        .collect();
    type Key = (usize, Vec<usize>, usize);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();

    let counters = |q: usize, prev: Option<&[usize]>| -> Option<Vec<usize>> {
        constraints
            .iter()
            .enumerate()
            .map(|(j, c)| advance(c, q, prev.map(|d| d[j])))
            .collect()
    };
    let mut intern = |key: Key, keys: &mut Vec<Key>, succ: &mut Vec<Vec<usize>>| {
        *index.entry(key.clone()).or_insert_with(|| {
            keys.push(key);
            succ.push(Vec::new());
            keys.len() - 1
        })
    };

    let mut roots = Vec::new();
    for &q in &a.initial {
        if let Some(d) = counters(q, None) {
            roots.push(intern((q, d, 0), &mut keys, &mut succ));
        }
    }
    let mut next = 0;
    while next < keys.len() {
        let (q, d, pos) = keys[next].clone();
        let pos2 = w.normalize(pos + 1);
        let mut out = Vec::new();
        for &(l, t) in &a.trans[q] {
            if l == letters[pos] {
                if let Some(d2) = counters(t, Some(&d)) {
                    out.push(intern((t, d2, pos2), &mut keys, &mut succ));
                }
            }
        }
        succ[next] = out;
        next += 1;
    }
    let acc: Vec<bool> = keys.iter().map(|(q, _, _)| a.accepting[*q]).collect();
    graph::accepting_lasso(&succ, &roots, &[acc]).is_some()
}
