//! Exact evaluation of PLTL formulae on ultimately periodic words.

use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, FormulaError, Valuation};

/// A letter of the word: the set of propositions that hold.
pub type Label = BTreeSet<String>;

/// The ω-word `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub prefix: Vec<Label>,
    pub cycle: Vec<Label>,
}

impl LassoWord {
    /// Panics if `cycle` is empty.
    pub fn new(prefix: Vec<Label>, cycle: Vec<Label>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        Self { prefix, cycle }
    }

    /// Convenience constructor from slices of proposition names.
    pub fn from_strs(prefix: &[&[&str]], cycle: &[&[&str]]) -> Self {
        let conv = |ls: &[&[&str]]| -> Vec<Label> {
            ls.iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect()
        };
        Self::new(conv(prefix), conv(cycle))
    }

    /// Number of distinct positions: `|u| + |v|`.
    pub fn period_positions(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Canonical representative of absolute position `i`.
    pub fn normalize(&self, i: usize) -> usize {
        let u = self.prefix.len();
        if i < u {
            i
        } else {
            u + (i - u) % self.cycle.len()
        }
    }

    pub fn letter(&self, i: usize) -> &Label {
        let n = self.normalize(i);
        if n < self.prefix.len() {
            &self.prefix[n]
        } else {
            &self.cycle[n - self.prefix.len()]
        }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |l: &Label| format!("{{{}}}", l.iter().cloned().collect::<Vec<_>>().join(","));
        let u: Vec<String> = self.prefix.iter().map(show).collect();
        let v: Vec<String> = self.cycle.iter().map(show).collect();
        write!(f, "{} ({})^w", u.join(" "), v.join(" "))
    }
}

/// Decides `(w, pos, α) ⊨ φ`.
///
/// Every subformula is tabulated over the `|u|+|v|` canonical positions,
/// children first. `U`/`R` scan forward from position `i` until one full
/// cycle past `max(i, |u|)` has been inspected, after which every canonical
/// position reachable from `i` has been seen.
pub fn eval_lasso(
    phi: &Formula,
    alpha: &Valuation,
    w: &LassoWord,
    pos: usize,
) -> Result<bool, FormulaError> {
    for v in phi.var_names() {
        alpha.require(&v)?;
    }
    let n = w.period_positions();
    let u = w.prefix.len();
    let subs = phi.subformulae();
    let mut tables: std::collections::HashMap<&Formula, Vec<bool>> =
        std::collections::HashMap::with_capacity(subs.len());

    for f in subs {
        let table: Vec<bool> = {
            let get = |g: &Formula, i: usize| tables[g][w.normalize(i)];
            (0..n)
                .map(|i| match f {
                    Formula::True => true,
                    Formula::False => false,
                    Formula::Atom(p) => w.letter(i).contains(p),
                    Formula::NegAtom(p) => !w.letter(i).contains(p),
                    Formula::And(a, b) => get(a, i) && get(b, i),
                    Formula::Or(a, b) => get(a, i) || get(b, i),
                    Formula::Next(a) => get(a, i + 1),
                    Formula::Until(a, b) => {
                        let horizon = i.max(u) + w.cycle.len();
                        for k in i..horizon {
                            if get(b, k) {
                                return true;
                            }
                            if !get(a, k) {
                                return false;
                            }
                        }
                        false
                    }
                    Formula::Release(a, b) => {
                        let horizon = i.max(u) + w.cycle.len();
                        for k in i..horizon {
                            if !get(b, k) {
                                return false;
                            }
                            if get(a, k) {
                                return true;
                            }
                        }
                        true
                    }
                    Formula::BoundedF(x, a) => {
                        let bound = alpha.get(x).unwrap_or(0);
                        (0..=bound).any(|j| get(a, i + j))
                    }
                    Formula::BoundedG(y, a) => {
                        let bound = alpha.get(y).unwrap_or(0);
                        (0..=bound).all(|j| get(a, i + j))
                    }
                })
                .collect()
        };
        tables.insert(f, table);
    }
    Ok(tables[phi][w.normalize(pos)])
}
