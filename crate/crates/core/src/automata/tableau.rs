//! Tableau translation of PLTL_F formulae into generalized Büchi automata.
//!
//! Parameterized eventualities are treated as plain eventualities in the
//! transition relation; their bounds are recovered later as window
//! constraints on the acceptance sets tagged with a variable.

use crate::formula::{closure, consistent_sets, Closure, Formula, Node};

use super::{AutomataError, Letter};

/// One member of the generalized acceptance family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptanceSet {
    /// The `U`, `R` or `F≤` subformula the set was derived from.
    pub source: Formula,
    /// Variable of the `F≤` operator, if any.
    pub window: Option<String>,
    pub states: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct Gnba {
    pub ap: Vec<String>,
    /// Consistent set of each state, as a closure bitmask.
    pub sets: Vec<u128>,
    pub closure: Closure,
    pub initial: Vec<usize>,
    pub trans: Vec<Vec<(Letter, usize)>>,
    pub acceptance: Vec<AcceptanceSet>,
}

impl Gnba {
    pub fn num_states(&self) -> usize {
        self.sets.len()
    }

    pub fn succ(&self) -> Vec<Vec<usize>> {
        self.trans
            .iter()
            .map(|ts| ts.iter().map(|&(_, q)| q).collect())
            .collect()
    }

    /// Human-readable consistent set of a state.
    pub fn describe(&self, state: usize) -> String {
        let names: Vec<String> = self
            .closure
            .members(self.sets[state])
            .map(|f| f.to_string())
            .collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Builds the automaton whose states are the consistent subsets of `cl(φ)`.
pub fn build_gnba(phi: &Formula) -> Result<Gnba, AutomataError> {
    let cl = closure(phi)?;
    let sets = consistent_sets(&cl);
    let has = |set: u128, i: usize| Closure::contains(set, i);

    let initial: Vec<usize> = (0..sets.len()).filter(|&s| has(sets[s], cl.root)).collect();

    let mut trans = Vec::with_capacity(sets.len());
    for &b in &sets {
        let letter = cl.letter_of(b);
        // successor constraints: bits that must be present / absent in B'
        let (mut need_in, mut need_out) = (0u128, 0u128);
        let mut dead = false;
        let mut require = |i: usize, present: bool| {
            if present {
                need_in |= 1 << i;
            } else {
                need_out |= 1 << i;
            }
        };
        for (i, node) in cl.nodes.iter().enumerate() {
            match *node {
                Node::Next(c) => require(c, has(b, i)),
                Node::Until(l, r) => {
                    if !has(b, r) {
                        if has(b, l) {
                            require(i, has(b, i));
                        } else if has(b, i) {
                            dead = true;
                        }
                    }
                }
                Node::Release(l, r) => {
                    if !has(b, r) {
                        dead |= has(b, i);
                    } else if !has(b, l) {
                        require(i, has(b, i));
                    }
                }
                Node::Eventually { body, .. }
                    if !has(b, body) => {
                        require(i, has(b, i));
                    }
                _ => {}
            }
        }
        let out: Vec<(Letter, usize)> = if dead {
            Vec::new()
        } else {
            (0..sets.len())
                .filter(|&t| sets[t] & need_in == need_in && sets[t] & need_out == 0)
                .map(|t| (letter, t))
                .collect()
        };
        trans.push(out);
    }

    let mut acceptance = Vec::new();
    for (i, node) in cl.nodes.iter().enumerate() {
        let (member, window): (Box<dyn Fn(u128) -> bool>, _) = match node {
            Node::Until(_, r) => {
                let r = *r;
                (Box::new(move |b| !has(b, i) || has(b, r)), None)
            }
            Node::Release(_, r) => {
                let r = *r;
                (Box::new(move |b| has(b, i) || !has(b, r)), None)
            }
            Node::Eventually { var, body } => {
                let body = *body;
                (Box::new(move |b| !has(b, i) || has(b, body)), Some(var.clone()))
            }
            _ => continue,
        };
        acceptance.push(AcceptanceSet {
            source: cl.formulas[i].clone(),
            window,
            states: sets.iter().map(|&b| member(b)).collect(),
        });
    }

    Ok(Gnba {
        ap: cl.atoms.clone(),
        sets,
        closure: cl,
        initial,
        trans,
        acceptance,
    })
}
