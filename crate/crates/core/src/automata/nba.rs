//! Büchi automata: degeneralization and removal of unproductive states.

use crate::graph;

use super::{Gnba, Letter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nba {
    pub ap: Vec<String>,
    pub num_states: usize,
    pub initial: Vec<usize>,
    pub trans: Vec<Vec<(Letter, usize)>>,
    pub accepting: Vec<bool>,
    /// Source GNBA state of each state (the first component of `(q, i)`).
    pub proj: Vec<usize>,
    /// Round-robin index of each state (the second component).
    pub round: Vec<usize>,
}

impl Nba {
    pub fn succ(&self) -> Vec<Vec<usize>> {
        self.trans
            .iter()
            .map(|ts| ts.iter().map(|&(_, q)| q).collect())
            .collect()
    }

    /// Lifts a set of GNBA states to the NBA states projecting into it.
    pub fn lift(&self, gnba_set: &[bool]) -> Vec<bool> {
        self.proj.iter().map(|&q| gnba_set[q]).collect()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }
}

/// Round-robin degeneralization over `Q × {0..k}`: index `i` records that
/// `F_1 … F_i` were seen in the current round; index `k` is accepting and
/// resets to 0. With no acceptance sets every state is accepting.
pub fn degeneralize(a: &Gnba) -> Nba {
    let k = a.acceptance.len();
    let n = a.num_states();
    let id = |q: usize, i: usize| q * (k + 1) + i;
    let mut trans = vec![Vec::new(); n * (k + 1)];
    let mut accepting = vec![false; n * (k + 1)];
    let mut proj = vec![0; n * (k + 1)];
    let mut round = vec![0; n * (k + 1)];
    for q in 0..n {
        for i in 0..=k {
            let s = id(q, i);
            proj[s] = q;
            round[s] = i;
            accepting[s] = i == k;
            let j = if i == k {
                0
            } else if a.acceptance[i].states[q] {
                i + 1
            } else {
                i
            };
            trans[s] = a.trans[q].iter().map(|&(l, t)| (l, id(t, j))).collect();
        }
    }
    Nba {
        ap: a.ap.clone(),
        num_states: n * (k + 1),
        initial: a.initial.iter().map(|&q| id(q, 0)).collect(),
        trans,
        accepting,
        proj,
        round,
    }
}

/// Keeps the states that are reachable and from which an accepting run
/// starts; states are renumbered in their original order.
pub fn remove_unproductive(a: &Nba) -> Nba {
    let keep = graph::productive(&a.succ(), &a.initial, std::slice::from_ref(&a.accepting));
    let (map, _) = renumber(&keep);
    Nba {
        ap: a.ap.clone(),
        num_states: keep.iter().filter(|&&k| k).count(),
        initial: a.initial.iter().filter_map(|&q| map[q]).collect(),
        trans: restrict_trans(&a.trans, &keep, &map),
        accepting: select(&a.accepting, &keep),
        proj: select(&a.proj, &keep),
        round: select(&a.round, &keep),
    }
}

/// Generalized variant of [`remove_unproductive`]: drops GNBA states that
/// cannot start a run meeting every acceptance set infinitely often.
pub fn trim_gnba(a: &Gnba) -> Gnba {
    let sets: Vec<Vec<bool>> = a.acceptance.iter().map(|s| s.states.clone()).collect();
    let keep = graph::productive(&a.succ(), &a.initial, &sets);
    let (map, _) = renumber(&keep);
    let mut acceptance = a.acceptance.clone();
    for set in &mut acceptance {
        set.states = select(&set.states, &keep);
    }
    Gnba {
        ap: a.ap.clone(),
        sets: select(&a.sets, &keep),
        closure: a.closure.clone(),
        initial: a.initial.iter().filter_map(|&q| map[q]).collect(),
        trans: restrict_trans(&a.trans, &keep, &map),
        acceptance,
    }
}

fn renumber(keep: &[bool]) -> (Vec<Option<usize>>, usize) {
    let mut next = 0;
    let map = keep
        .iter()
        .map(|&k| {
            k.then(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    (map, next)
}

fn select<T: Clone>(v: &[T], keep: &[bool]) -> Vec<T> {
    v.iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(x, _)| x.clone())
        .collect()
}

fn restrict_trans(
    trans: &[Vec<(Letter, usize)>],
    keep: &[bool],
    map: &[Option<usize>],
) -> Vec<Vec<(Letter, usize)>> {
    trans
        .iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(ts, _)| ts.iter().filter_map(|&(l, t)| map[t].map(|t| (l, t))).collect())
        .collect()
}
