//! Closure of a PLTL_F formula and enumeration of its consistent subsets.

use std::collections::HashMap;

use super::{Formula, FormulaError};

/// Largest closure representable by the `u128` set encoding.
pub const MAX_CLOSURE: usize = 128;

/// A closure element with children resolved to closure indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    True,
    False,
    /// Index into [`Closure::atoms`].
    Atom(usize),
    NegAtom(usize),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
    /// `F≤var body`
    Eventually { var: String, body: usize },
}

/// `cl(φ)`: the subformulae of `φ`, completed with both literals of every
/// atom. The first `2·|atoms|` entries are `p₀ … p_{a-1}, ¬p₀ … ¬p_{a-1}`;
/// the rest follow in post-order, so children always precede parents.
/// Sets of closure elements are encoded as `u128` bitmasks.
#[derive(Clone, Debug)]
pub struct Closure {
    pub formulas: Vec<Formula>,
    pub nodes: Vec<Node>,
    pub atoms: Vec<String>,
    pub root: usize,
    index: HashMap<Formula, usize>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(set: u128, i: usize) -> bool {
        set >> i & 1 == 1
    }

    /// `B ∩ P` as a bitmask over [`Closure::atoms`].
    pub fn letter_of(&self, set: u128) -> u64 {
        let mask = (1u128 << self.atoms.len()) - 1;
        (set & mask) as u64
    }

    pub fn members(&self, set: u128) -> impl Iterator<Item = &Formula> + '_ {
        (0..self.len())
            .filter(move |&i| Self::contains(set, i))
            .map(|i| &self.formulas[i])
    }
}

/// Builds the closure. Rejects formulas with `G≤` and closures that exceed
/// [`MAX_CLOSURE`] elements.
pub fn closure(phi: &Formula) -> Result<Closure, FormulaError> {
    if !phi.is_pltl_f() {
        return Err(FormulaError::WrongClass { expected: "PLTL_F" });
    }
    let atoms: Vec<String> = phi.atoms().into_iter().collect();
    if atoms.len() > 63 {
        return Err(FormulaError::TooLarge(2 * atoms.len()));
    }
    let mut formulas: Vec<Formula> = atoms.iter().map(|p| Formula::Atom(p.clone())).collect();
    formulas.extend(atoms.iter().map(|p| Formula::NegAtom(p.clone())));
    for f in phi.subformulae() {
        if !matches!(f, Formula::Atom(_) | Formula::NegAtom(_)) {
            formulas.push(f.clone());
        }
    }
    if formulas.len() > MAX_CLOSURE {
        return Err(FormulaError::TooLarge(formulas.len()));
    }
    let index: HashMap<Formula, usize> =
        formulas.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let atom_idx = |p: &String| atoms.binary_search(p).expect("atom collected");
    let nodes = formulas
        .iter()
        .map(|f| match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Atom(p) => Node::Atom(atom_idx(p)),
            Formula::NegAtom(p) => Node::NegAtom(atom_idx(p)),
            Formula::And(a, b) => Node::And(index[&**a], index[&**b]),
            Formula::Or(a, b) => Node::Or(index[&**a], index[&**b]),
            Formula::Next(a) => Node::Next(index[&**a]),
            Formula::Until(a, b) => Node::Until(index[&**a], index[&**b]),
            Formula::Release(a, b) => Node::Release(index[&**a], index[&**b]),
            Formula::BoundedF(x, a) => Node::Eventually {
                var: x.clone(),
                body: index[&**a],
            },
            Formula::BoundedG(..) => unreachable!("rejected above"),
        })
        .collect();
    let root = index[phi];
    Ok(Closure {
        formulas,
        nodes,
        atoms,
        root,
        index,
    })
}

/// All consistent subsets of the closure, in a deterministic order.
///
/// Elements are decided in closure order; each rule only refers to
/// elements decided earlier, so a set is either forced or branches.
pub fn consistent_sets(cl: &Closure) -> Vec<u128> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u128)> = vec![(0, 0)];
    let has = |set: u128, i: usize| Closure::contains(set, i);
    while let Some((i, set)) = stack.pop() {
        if i == cl.len() {
            out.push(set);
            continue;
        }
        let with = set | 1 << i;
        let forced = match &cl.nodes[i] {
            Node::True => Some(true),
            Node::False => Some(false),
            Node::Atom(_) | Node::Next(_) => None,
            Node::NegAtom(k) => Some(!has(set, *k)),
            Node::And(l, r) => Some(has(set, *l) && has(set, *r)),
            Node::Or(l, r) => Some(has(set, *l) || has(set, *r)),
            Node::Until(_, r) => has(set, *r).then_some(true),
            Node::Release(l, r) => (has(set, *l) && has(set, *r)).then_some(true),
            Node::Eventually { body, .. } => has(set, *body).then_some(true),
        };
        match forced {
            Some(true) => stack.push((i + 1, with)),
            Some(false) => stack.push((i + 1, set)),
            None => {
                // pushed in reverse so the "absent" branch is emitted first
                stack.push((i + 1, with));
                stack.push((i + 1, set));
            }
        }
    }
    out
}
