//! Optimal valuations for unipolar games.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::formula::{alternating_color_rewrite, project_variable, unify_variables, Valuation};
use crate::game::{MealyStrategy, Player};

use super::{emptiness_check, membership, Membership, PltlGame, SolveError, Stats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Least value of some variable (PLTL_F).
    MinMin,
    /// Least value of the largest variable (PLTL_F).
    MinMax,
    /// Largest value of some variable (PLTL_G).
    MaxMax,
    /// Largest value of the smallest variable (PLTL_G).
    MaxMin,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::MinMin => "min-min",
            Objective::MinMax => "min-max",
            Objective::MaxMax => "max-max",
            Objective::MaxMin => "max-min",
        }
    }

    pub fn minimizes(self) -> bool {
        matches!(self, Objective::MinMin | Objective::MinMax)
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Objective::MinMin, Objective::MinMax, Objective::MaxMax, Objective::MaxMin]
            .into_iter()
            .find(|o| o.name() == s.replace('_', "-"))
            .ok_or_else(|| format!("unknown objective `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Value(usize),
    /// Player 0 wins with respect to no valuation.
    None,
    /// Every value is achievable.
    Unbounded,
    /// The search was capped at the given value and found no winning
    /// valuation up to it.
    NoneWithin(usize),
    /// The search was capped at the given value and every value up to it
    /// is achievable.
    AtLeast(usize),
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Value(_) => "value",
            Status::None => "none",
            Status::Unbounded => "unbounded",
            Status::NoneWithin(_) => "none-within",
            Status::AtLeast(_) => "at-least",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Caps the search range for the optimal value.
    pub max_bound: Option<usize>,
    /// Worker threads for independent per-variable sub-problems.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_bound: None, jobs: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct OptimizationResult {
    pub objective: Option<Objective>,
    pub status: Status,
    /// The variable attaining the optimum, for min-min and max-max.
    pub variable: Option<String>,
    /// A full valuation attaining the value, if one was confirmed.
    pub witness: Option<Valuation>,
    /// A winning strategy for Player 0 with respect to `witness`.
    pub strategy: Option<MealyStrategy>,
    pub bound: Option<usize>,
    pub queries: usize,
    pub stats: Option<Stats>,
}

impl OptimizationResult {
    fn new(status: Status) -> Self {
        OptimizationResult {
            objective: None,
            status,
            variable: None,
            witness: None,
            strategy: None,
            bound: None,
            queries: 0,
            stats: None,
        }
    }

    pub fn value(&self) -> Option<usize> {
        match self.status {
            Status::Value(n) => Some(n),
            _ => None,
        }
    }
}

struct Counter(AtomicUsize);

impl Counter {
    fn member(&self, g: &PltlGame, alpha: &Valuation, blinking: bool) -> Result<Membership, SolveError> {
        self.0.fetch_add(1, Ordering::Relaxed);
        membership(g, Player::Zero, alpha, blinking)
    }

    fn get(&self) -> usize {
        self.0.load(Ordering::Relaxed)
    }
}

/// Least `n ≤ hi` such that Player 0 wins with `var ↦ n`, by binary search
/// (membership is monotone in `n`).
fn search_least(
    g: &PltlGame,
    var: &str,
    blinking: bool,
    hi: usize,
    capped: bool,
    counter: &Counter,
) -> Result<(Status, Option<Membership>), SolveError> {
    let at = |n: usize| counter.member(g, &Valuation::new().with(var, n), blinking);
    let top = at(hi)?;
    if !top.wins {
        return if capped {
            Ok((Status::NoneWithin(hi), None))
        } else {
            Err(SolveError::UnsoundBound(hi))
        };
    }
    let (mut lo, mut hi, mut best) = (0, hi, top);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let m = at(mid)?;
        if m.wins {
            hi = mid;
            best = m;
        } else {
            lo = mid + 1;
        }
    }
    Ok((Status::Value(hi), Some(best)))
}

fn cap(bound: usize, opts: &SolveOptions) -> (usize, bool) {
    match opts.max_bound {
        Some(n) if n < bound => (n, true),
        _ => (bound, false),
    }
}

/// Least winning value of a game with a single `F≤` variable.
pub fn prompt_optimum(g: &PltlGame, opts: &SolveOptions) -> Result<OptimizationResult, SolveError> {
    let counter = Counter(AtomicUsize::new(0));
    prompt_inner(g, opts, &counter)
}

fn prompt_inner(g: &PltlGame, opts: &SolveOptions, counter: &Counter) -> Result<OptimizationResult, SolveError> {
    let vars = g.formula.var_names();
    if vars.len() != 1 || !g.formula.is_pltl_f() {
        return Err(SolveError::NotPrompt);
    }
    let x = vars.into_iter().next().expect("one variable");
    let check = emptiness_check(g, Player::Zero)?;
    counter.0.fetch_add(1, Ordering::Relaxed);
    if check.empty {
        let mut r = OptimizationResult::new(Status::None);
        r.queries = counter.get();
        r.stats = Some(check.stats);
        return Ok(r);
    }
    let bound = 2 * (check.product_size + 1);
    let (hi, capped) = cap(bound, opts);
    let (status, best) = search_least(g, &x, false, hi, capped, counter)?;
    let mut r = OptimizationResult::new(status);
    r.bound = Some(bound);
    r.variable = Some(x.clone());
    if let (Status::Value(n), Some(m)) = (status, best) {
        r.witness = Some(Valuation::new().with(&x, n));
        r.strategy = Some(m.strategy);
        r.stats = Some(m.stats);
    }
    r.queries = counter.get();
    Ok(r)
}

fn require_class(g: &PltlGame, objective: Objective) -> Result<(), SolveError> {
    let (ok, expected) = if objective.minimizes() {
        (g.formula.is_pltl_f(), "PLTL_F")
    } else {
        (g.formula.is_pltl_g(), "PLTL_G")
    };
    if ok && !g.formula.var_names().is_empty() {
        Ok(())
    } else {
        Err(SolveError::WrongObjective {
            objective,
            expected,
            found: g.class.name(),
        })
    }
}

/// Runs `f` on every item, on up to `jobs` threads; results keep the input
/// order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.min(items.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every item processed"))
        .collect()
}

/// Confirms `alpha` on the original game and attaches the strategy.
fn attach_witness(
    r: &mut OptimizationResult,
    g: &PltlGame,
    alpha: Valuation,
    counter: &Counter,
) -> Result<bool, SolveError> {
    let m = counter.member(g, &alpha, false)?;
    if m.wins {
        r.witness = Some(alpha);
        r.strategy = Some(m.strategy);
        r.stats = Some(m.stats);
    }
    Ok(m.wins)
}

/// Largest winning value of a game with a single `G≤` variable, via the
/// least winning value of the dual game: the dual wins exactly the values
/// Player 0 loses, so the answer is one below the dual's optimum.
fn greatest(g: &PltlGame, opts: &SolveOptions, counter: &Counter) -> Result<(Status, Option<usize>), SolveError> {
    let dual = prompt_inner(&g.dual(), opts, counter)?;
    Ok(match dual.status {
        Status::None => (Status::Unbounded, dual.bound),
        Status::Value(0) => (Status::None, dual.bound),
        Status::Value(m) => (Status::Value(m - 1), dual.bound),
        Status::NoneWithin(n) => (Status::AtLeast(n), dual.bound),
        Status::Unbounded | Status::AtLeast(_) => unreachable!("minimization never reports these"),
    })
}

/// Computes the optimum of `objective` over Player 0's winning valuations,
/// with a witness valuation and a winning strategy for it.
pub fn optimize_unipolar(
    g: &PltlGame,
    objective: Objective,
    opts: &SolveOptions,
) -> Result<OptimizationResult, SolveError> {
    require_class(g, objective)?;
    let counter = Counter(AtomicUsize::new(0));
    let vars: Vec<String> = g.formula.var_names().into_iter().collect();
    let mut r = match objective {
        Objective::MinMax => {
            let unified = g.with_formula(unify_variables(&g.formula, &vars[0])?);
            let mut r = prompt_inner(&unified, opts, &counter)?;
            r.variable = None;
            if let Status::Value(n) = r.status {
                let alpha = Valuation::uniform(&vars, n);
                r.witness = None;
                r.strategy = None;
                if !attach_witness(&mut r, g, alpha, &counter)? {
                    return Err(SolveError::UnsoundBound(n));
                }
            }
            r
        }
        Objective::MinMin => min_min(g, &vars, opts, &counter)?,
        Objective::MaxMax => {
            let per_var = parallel_map(&vars, opts.jobs, |y| -> Result<_, SolveError> {
                let projected = g.with_formula(project_variable(&g.formula, y)?);
                greatest(&projected, opts, &counter)
            });
            let mut best: Option<(usize, Status, Option<usize>)> = None;
            for (i, res) in per_var.into_iter().enumerate() {
                let (status, bound) = res?;
                let rank = |s: Status| match s {
                    Status::Unbounded => (3, 0),
                    Status::AtLeast(n) => (2, n),
                    Status::Value(n) => (1, n),
                    _ => (0, 0),
                };
                if best.is_none_or(|(_, b, _)| rank(status) > rank(b)) {
                    best = Some((i, status, bound));
                }
            }
            let (i, status, bound) = best.expect("at least one variable");
            let mut r = OptimizationResult::new(status);
            r.bound = bound;
            if status != Status::None {
                r.variable = Some(vars[i].clone());
            }
            if let Status::Value(n) | Status::AtLeast(n) = status {
                let alpha = Valuation::uniform(&vars, 0).with(&vars[i], n);
                attach_witness(&mut r, g, alpha, &counter)?;
            }
            r
        }
        Objective::MaxMin => {
            let unified = g.with_formula(unify_variables(&g.formula, &vars[0])?);
            let (status, bound) = greatest(&unified, opts, &counter)?;
            let mut r = OptimizationResult::new(status);
            r.bound = bound;
            if let Status::Value(n) | Status::AtLeast(n) = status {
                attach_witness(&mut r, g, Valuation::uniform(&vars, n), &counter)?;
            }
            r
        }
    };
    r.objective = Some(objective);
    r.queries = counter.get();
    Ok(r)
}

/// Least value of a single variable `x`: on the color-choice arena, every
/// other variable is replaced by the alternating-color condition and `x`
/// is searched under blinking semantics.
fn min_min(
    g: &PltlGame,
    vars: &[String],
    opts: &SolveOptions,
    counter: &Counter,
) -> Result<OptimizationResult, SolveError> {
    let check = emptiness_check(g, Player::Zero)?;
    counter.0.fetch_add(1, Ordering::Relaxed);
    if check.empty {
        return Ok(OptimizationResult::new(Status::None));
    }
    let bound = 2 * (check.product_size + 1);
    let (hi, capped) = cap(bound, opts);
    let color = g.fresh_proposition("c");
    let expanded = g.arena.expand_alternating_color(&color)?;
    let per_var = parallel_map(vars, opts.jobs, |x| -> Result<_, SolveError> {
        let keep = BTreeSet::from([x.clone()]);
        let psi = alternating_color_rewrite(&g.formula, &keep, &color)?;
        let gx = PltlGame::new(expanded.clone(), psi)?;
        search_least(&gx, x, true, hi, capped, counter)
    });
    let mut best: Option<(usize, usize, Membership)> = None;
    for (i, res) in per_var.into_iter().enumerate() {
        if let (Status::Value(n), Some(m)) = res? {
            if best.as_ref().is_none_or(|(_, b, _)| n < *b) {
                best = Some((i, n, m));
            }
        }
    }
    let Some((i, n, m)) = best else {
        let mut r = OptimizationResult::new(Status::NoneWithin(hi));
        r.bound = Some(bound);
        return Ok(r);
    };
    let mut r = OptimizationResult::new(Status::Value(n));
    r.bound = Some(bound);
    r.variable = Some(vars[i].clone());
    // the other variables need values large enough to cover the color
    // phases of the blinking strategy
    let with_others = |k: usize| Valuation::uniform(vars, k).with(&vars[i], n);
    let mut others = bound.max(2 * (m.stats.parity_vertices + 1));
    let mut found = false;
    for _ in 0..3 {
        if counter.member(g, &with_others(others), false)?.wins {
            found = true;
            break;
        }
        others *= 2;
    }
    if found {
        // winning is upward closed in the other variables, so the least
        // uniform value for them is found by bisection
        let (mut lo, mut hi) = (0, others);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if counter.member(g, &with_others(mid), false)?.wins {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        attach_witness(&mut r, g, with_others(hi), counter)?;
    }
    Ok(r)
}
