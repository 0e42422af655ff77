//! Exact decision procedures for unambiguity and non-confluence.

use std::collections::{HashMap, VecDeque};

use crate::graph;

use super::Nba;

/// Synchronous pair product of `a` with itself, reachable part only.
/// Nodes are `(q1, q2, diverged)`; `diverged` records that the two runs
/// have differed at some point.
struct PairProduct {
    nodes: Vec<(usize, usize, bool)>,
    succ: Vec<Vec<usize>>,
    roots: Vec<usize>,
}

fn pair_product(a: &Nba) -> PairProduct {
    let mut index: HashMap<(usize, usize, bool), usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |key: (usize, usize, bool),
                      nodes: &mut Vec<(usize, usize, bool)>,
                      succ: &mut Vec<Vec<usize>>,
                      queue: &mut VecDeque<usize>| {
        *index.entry(key).or_insert_with(|| {
            nodes.push(key);
            succ.push(Vec::new());
            queue.push_back(nodes.len() - 1);
            nodes.len() - 1
        })
    };
    let mut roots = Vec::new();
    for &q1 in &a.initial {
        for &q2 in &a.initial {
            roots.push(intern((q1, q2, q1 != q2), &mut nodes, &mut succ, &mut queue));
        }
    }
    while let Some(v) = queue.pop_front() {
        let (q1, q2, diverged) = nodes[v];
        let mut out = Vec::new();
        for &(l1, t1) in &a.trans[q1] {
            for &(l2, t2) in &a.trans[q2] {
                if l1 == l2 {
                    out.push(intern((t1, t2, diverged || t1 != t2), &mut nodes, &mut succ, &mut queue));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        succ[v] = out;
    }
    PairProduct { nodes, succ, roots }
}

/// True iff every word has at most one accepting run. Two distinct accepting
/// runs on one word exist iff the pair product has a reachable cycle, after
/// the runs diverged, that visits accepting states in both components.
pub fn check_unambiguous(a: &Nba) -> bool {
    let p = pair_product(a);
    let first: Vec<bool> = p.nodes.iter().map(|&(q1, _, d)| d && a.accepting[q1]).collect();
    let second: Vec<bool> = p.nodes.iter().map(|&(_, q2, d)| d && a.accepting[q2]).collect();
    graph::accepting_lasso(&p.succ, &p.roots, &[first, second]).is_none()
}

/// True iff no two distinct states that are reachable on a common finite
/// word share a successor on a common letter.
pub fn check_nonconfluent(a: &Nba) -> bool {
    let p = pair_product(a);
    p.nodes.iter().all(|&(q1, q2, _)| {
        q1 == q2
            || !a.trans[q1]
                .iter()
                .any(|&(l1, t1)| a.trans[q2].iter().any(|&(l2, t2)| l1 == l2 && t1 == t2))
    })
}
