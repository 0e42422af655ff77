//! Parametric LTL formulae in negation normal form.
//!
//! A formula is built from literals, `∧`, `∨`, `X`, `U`, `R` and the two
//! parameterized operators `F≤x` (eventually within `x` steps) and `G≤y`
//! (always during the next `y` steps). Negation only ever occurs on atoms;
//! general negation is available through [`negate_nnf`].

mod closure;
mod eval;
mod parse;
mod rewrite;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use closure::{closure, consistent_sets, Closure, Node, MAX_CLOSURE};
pub use eval::{eval_lasso, Label, LassoWord};
pub use parse::parse_formula;
pub use rewrite::{
    alternating_color_rewrite, expand_valuation, negate_nnf, project_variable, strip_always,
    unify_variables,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable `{0}` is used both as an eventuality bound (F<=) and an always bound (G<=)")]
    SortClash(String),
    #[error("no value bound for variable `{0}`")]
    MissingBinding(String),
    #[error("variable `{0}` does not occur in the formula")]
    UnknownVariable(String),
    #[error("proposition `{0}` already occurs in the formula")]
    ColorClash(String),
    #[error("formula mixes F<= and G<= parameters")]
    MixedSorts,
    #[error("closure has {0} elements; at most 128 are supported")]
    TooLarge(usize),
    #[error("expected a {expected} formula")]
    WrongClass { expected: &'static str },
}

/// PLTL syntax tree. Derived operators (`tt`, `ff`, `F`, `G`, `->`) are
/// desugared at construction time.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    NegAtom(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    BoundedF(String, Box<Formula>),
    BoundedG(String, Box<Formula>),
}

/// Sort of a parameter variable, determined by the operator it bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSort {
    Eventually,
    Always,
}

/// The most specific syntactic fragment a formula belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaClass {
    Ltl,
    Prompt,
    PltlF,
    PltlG,
    Pltl,
}

impl FormulaClass {
    pub fn name(self) -> &'static str {
        match self {
            FormulaClass::Ltl => "LTL",
            FormulaClass::Prompt => "PROMPT-LTL",
            FormulaClass::PltlF => "PLTL_F",
            FormulaClass::PltlG => "PLTL_G",
            FormulaClass::Pltl => "PLTL",
        }
    }
}

impl fmt::Display for FormulaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Formula {
    pub fn atom(p: &str) -> Formula {
        Formula::Atom(p.to_string())
    }
    pub fn neg_atom(p: &str) -> Formula {
        Formula::NegAtom(p.to_string())
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn next(a: Formula) -> Formula {
        Formula::Next(Box::new(a))
    }
    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }
    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Box::new(a), Box::new(b))
    }
    /// `F φ := tt U φ`
    pub fn eventually(a: Formula) -> Formula {
        Formula::until(Formula::True, a)
    }
    /// `G φ := ff R φ`
    pub fn always(a: Formula) -> Formula {
        Formula::release(Formula::False, a)
    }
    pub fn bounded_f(x: &str, a: Formula) -> Formula {
        Formula::BoundedF(x.to_string(), Box::new(a))
    }
    pub fn bounded_g(y: &str, a: Formula) -> Formula {
        Formula::BoundedG(y.to_string(), Box::new(a))
    }
    /// `a -> b`, i.e. `¬a ∨ b` with the negation pushed inwards.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(negate_nnf(&a), b)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => vec![],
            Formula::Next(a) | Formula::BoundedF(_, a) | Formula::BoundedG(_, a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => vec![a, b],
        }
    }

    /// Distinct subformulae in post-order (children before parents).
    pub fn subformulae(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>, seen: &mut BTreeSet<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            for c in f.children() {
                walk(c, out, seen);
            }
            if seen.insert(f) {
                out.push(f);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out, &mut BTreeSet::new());
        out
    }

    /// `|φ|`: the number of distinct subformulae.
    pub fn size(&self) -> usize {
        self.subformulae().len()
    }

    /// Propositions occurring in the formula (positively or negatively).
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) | Formula::NegAtom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Parameter variables together with their sort. A variable appearing under
    /// both operators is reported by [`Formula::check_sorts`].
    pub fn variables(&self) -> BTreeMap<String, VarSort> {
        let mut out = BTreeMap::new();
        self.visit(&mut |f| match f {
            Formula::BoundedF(x, _) => {
                out.entry(x.clone()).or_insert(VarSort::Eventually);
            }
            Formula::BoundedG(y, _) => {
                out.entry(y.clone()).or_insert(VarSort::Always);
            }
            _ => {}
        });
        out
    }

    pub fn var_names(&self) -> BTreeSet<String> {
        self.variables().into_keys().collect()
    }

    pub fn eventuality_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::BoundedF(x, _) = f {
                out.insert(x.clone());
            }
        });
        out
    }

    pub fn always_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::BoundedG(y, _) = f {
                out.insert(y.clone());
            }
        });
        out
    }

    /// Rejects formulas in which a variable bounds both `F≤` and `G≤`.
    pub fn check_sorts(&self) -> Result<(), FormulaError> {
        let fs = self.eventuality_vars();
        match self.always_vars().intersection(&fs).next() {
            Some(v) => Err(FormulaError::SortClash(v.clone())),
            None => Ok(()),
        }
    }

    pub fn class(&self) -> FormulaClass {
        let fs = self.eventuality_vars();
        let gs = self.always_vars();
        match (fs.len(), gs.len()) {
            (0, 0) => FormulaClass::Ltl,
            (1, 0) => FormulaClass::Prompt,
            (_, 0) => FormulaClass::PltlF,
            (0, _) => FormulaClass::PltlG,
            _ => FormulaClass::Pltl,
        }
    }

    /// `var(φ) ⊆ 𝒳` (includes LTL and PROMPT-LTL).
    pub fn is_pltl_f(&self) -> bool {
        self.always_vars().is_empty()
    }

    /// `var(φ) ⊆ 𝒴` (includes LTL).
    pub fn is_pltl_g(&self) -> bool {
        self.eventuality_vars().is_empty()
    }

    pub fn is_unipolar(&self) -> bool {
        self.is_pltl_f() || self.is_pltl_g()
    }

    pub fn contains_bounded_g(&self) -> bool {
        !self.always_vars().is_empty()
    }

    pub fn contains_bounded_f(&self) -> bool {
        !self.eventuality_vars().is_empty()
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Bottom-up structural map: `g` receives the node with already-mapped children.
    pub(crate) fn map_bottom_up(&self, g: &mut impl FnMut(Formula) -> Formula) -> Formula {
        let rebuilt = match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => self.clone(),
            Formula::And(a, b) => Formula::and(a.map_bottom_up(g), b.map_bottom_up(g)),
            Formula::Or(a, b) => Formula::or(a.map_bottom_up(g), b.map_bottom_up(g)),
            Formula::Next(a) => Formula::next(a.map_bottom_up(g)),
            Formula::Until(a, b) => Formula::until(a.map_bottom_up(g), b.map_bottom_up(g)),
            Formula::Release(a, b) => Formula::release(a.map_bottom_up(g), b.map_bottom_up(g)),
            Formula::BoundedF(x, a) => Formula::BoundedF(x.clone(), Box::new(a.map_bottom_up(g))),
            Formula::BoundedG(y, a) => Formula::BoundedG(y.clone(), Box::new(a.map_bottom_up(g))),
        };
        g(rebuilt)
    }
}

impl fmt::Display for Formula {
    /// Prints in the concrete input syntax; the output re-parses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("tt"),
            Formula::False => f.write_str("ff"),
            Formula::Atom(p) => f.write_str(p),
            Formula::NegAtom(p) => write!(f, "!{p}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Next(a) => write!(f, "X {a}"),
            Formula::Until(a, b) if **a == Formula::True => write!(f, "F {b}"),
            Formula::Release(a, b) if **a == Formula::False => write!(f, "G {b}"),
            Formula::Until(a, b) => write!(f, "({a} U {b})"),
            Formula::Release(a, b) => write!(f, "({a} R {b})"),
            Formula::BoundedF(x, a) => write!(f, "F<={x} {a}"),
            Formula::BoundedG(y, a) => write!(f, "G<={y} {a}"),
        }
    }
}

/// Assignment of natural-number bounds to parameter variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(BTreeMap<String, usize>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every variable of `vars` mapped to `value`.
    pub fn uniform<'a>(vars: impl IntoIterator<Item = &'a String>, value: usize) -> Self {
        Self(vars.into_iter().map(|v| (v.clone(), value)).collect())
    }

    pub fn with(mut self, var: &str, value: usize) -> Self {
        self.0.insert(var.to_string(), value);
        self
    }

    pub fn insert(&mut self, var: &str, value: usize) {
        self.0.insert(var.to_string(), value);
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn require(&self, var: &str) -> Result<usize, FormulaError> {
        self.get(var)
            .ok_or_else(|| FormulaError::MissingBinding(var.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &usize)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.values().sum()
    }

    /// Restriction to the given variables.
    pub fn restrict(&self, vars: &BTreeSet<String>) -> Valuation {
        Valuation(
            self.0
                .iter()
                .filter(|(k, _)| vars.contains(*k))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        )
    }

    /// Parses `x=3,y=0`. An empty string yields the empty valuation.
    pub fn parse(text: &str) -> Result<Valuation, String> {
        let mut out = Valuation::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("binding `{part}` is not of the form var=n"))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| format!("value in `{part}` is not a natural number"))?;
            out.insert(k.trim(), v);
        }
        Ok(out)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromIterator<(String, usize)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, usize)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}
