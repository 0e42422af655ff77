#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use pltl_core::automata::{build_gnba, degeneralize, remove_unproductive, trim_gnba, window_constraints, Constraint, Nba};
use pltl_core::formula::{eval_lasso, parse_formula, Formula, Label, LassoWord, Valuation};
use pltl_core::game::{play_trace, Arena, PlayLasso};
use pltl_core::parity::ParityGame;
use pltl_core::solve::PltlGame;

pub const A_LOOP: &str = include_str!("../data/a-loop.gm");
pub const A_EMPTYLOOP: &str = include_str!("../data/a-emptyloop.gm");
pub const A_PATH: &str = include_str!("../data/a-path.gm");
pub const A_DELAY: &str = include_str!("../data/a-delay.gm");
pub const A_STALL: &str = include_str!("../data/a-stall.gm");
pub const A_PPE: &str = include_str!("../data/a-ppe.gm");

pub const FIXTURES: [(&str, &str); 6] = [
    ("a-loop", A_LOOP),
    ("a-emptyloop", A_EMPTYLOOP),
    ("a-path", A_PATH),
    ("a-delay", A_DELAY),
    ("a-stall", A_STALL),
    ("a-ppe", A_PPE),
];

pub const PHI1: &str = "F<=x p";
pub const PHI2: &str = "G(q -> F<=x p)";
pub const PHI3: &str = "G<=y p";

pub fn arena(text: &str) -> Arena {
    Arena::parse(text).unwrap()
}

pub fn game(arena_text: &str, phi: &str) -> PltlGame {
    PltlGame::new(arena(arena_text), parse_formula(phi).unwrap()).unwrap()
}

pub fn val(s: &str) -> Valuation {
    Valuation::parse(s).unwrap()
}

/// All valuations of `vars` with values summing to at most `total`.
pub fn valuations_up_to(vars: &BTreeSet<String>, total: usize) -> Vec<Valuation> {
    let vars: Vec<&String> = vars.iter().collect();
    let mut out = Vec::new();
    let mut cur = vec![0; vars.len()];
    loop {
        if cur.iter().sum::<usize>() <= total {
            out.push(vars.iter().zip(&cur).map(|(v, &n)| ((*v).clone(), n)).collect());
        }
        let mut k = 0;
        loop {
            if k == cur.len() {
                return out;
            }
            cur[k] += 1;
            if cur[k] <= total {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// All valuations of `vars` with every value in `0..=max`.
pub fn grid(vars: &BTreeSet<String>, max: usize) -> Vec<Valuation> {
    let n = vars.len() as u32;
    valuations_up_to(vars, max * n as usize)
        .into_iter()
        .filter(|a| a.iter().all(|(_, &v)| v <= max))
        .collect()
}

/// A random PLTL_F formula over `p`, `q` with parameters from `vars`,
/// whose size is at most `max_size`.
pub fn random_pltl_f(rng: &mut impl Rng, max_size: usize, vars: &[&str]) -> Formula {
    random_pltl(rng, max_size, vars, &[])
}

/// A random formula with `F≤` parameters from `fvars` and `G≤` parameters
/// from `gvars`.
pub fn random_pltl(rng: &mut impl Rng, max_size: usize, fvars: &[&str], gvars: &[&str]) -> Formula {
    loop {
        let budget = rng.gen_range(1..=max_size);
        let f = gen(rng, budget, fvars, gvars);
        if f.size() <= max_size {
            return f;
        }
    }
}

fn gen(rng: &mut impl Rng, budget: usize, vars: &[&str], gvars: &[&str]) -> Formula {
    let atom = |rng: &mut dyn rand::RngCore| -> Formula {
        let p = ["p", "q"][rng.gen_range(0..2)];
        if rng.gen_bool(0.3) {
            Formula::neg_atom(p)
        } else {
            Formula::atom(p)
        }
    };
    if budget <= 1 {
        return atom(rng);
    }
    let unary = budget == 2 || rng.gen_bool(0.4);
    if unary {
        let a = gen(rng, budget - 1, vars, gvars);
        match rng.gen_range(0..5) {
            0 => Formula::next(a),
            1 if !vars.is_empty() => Formula::bounded_f(vars.choose(rng).unwrap(), a),
            4 if !gvars.is_empty() => Formula::bounded_g(gvars.choose(rng).unwrap(), a),
            2 => Formula::eventually(a),
            _ => Formula::always(a),
        }
    } else {
        let left = rng.gen_range(1..budget - 1);
        let a = gen(rng, left, vars, gvars);
        let b = gen(rng, budget - 1 - left, vars, gvars);
        match rng.gen_range(0..4) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => Formula::until(a, b),
            _ => Formula::release(a, b),
        }
    }
}

pub fn random_label(rng: &mut impl Rng, atoms: &[&str]) -> Label {
    atoms
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|s| s.to_string())
        .collect()
}

pub fn random_lasso(rng: &mut impl Rng, atoms: &[&str], max_prefix: usize, max_cycle: usize) -> LassoWord {
    let u = rng.gen_range(0..=max_prefix);
    let v = rng.gen_range(1..=max_cycle);
    LassoWord::new(
        (0..u).map(|_| random_label(rng, atoms)).collect(),
        (0..v).map(|_| random_label(rng, atoms)).collect(),
    )
}

pub fn random_valuation(rng: &mut impl Rng, phi: &Formula, max: usize) -> Valuation {
    phi.var_names().iter().map(|x| (x.clone(), rng.gen_range(0..=max))).collect()
}

/// A random arena over `p`, `q` with `n` vertices and out-degree 1 to 2.
pub fn random_arena(rng: &mut impl Rng, n: usize) -> Arena {
    let mut text = String::from("init v0\n");
    for v in 0..n {
        let label: Vec<&str> = ["p", "q"].into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        text += &format!("vertex v{v} {}", rng.gen_range(0..2));
        if !label.is_empty() {
            text += &format!(" label {}", label.join(","));
        }
        text += "\n";
    }
    for v in 0..n {
        for _ in 0..rng.gen_range(1..=2) {
            text += &format!("edge v{v} v{}\n", rng.gen_range(0..n));
        }
    }
    Arena::parse(&text).unwrap()
}

/// A random parity game with at most `max_vertices` vertices, priorities
/// below `prios` and out-degree 1 to 3.
pub fn random_parity_game(rng: &mut impl Rng, max_vertices: usize, prios: usize) -> ParityGame {
    let n = rng.gen_range(1..=max_vertices);
    let mut text = String::from("init v0\n");
    for v in 0..n {
        text += &format!("vertex v{v} {}\nprio v{v} {}\n", rng.gen_range(0..2), rng.gen_range(0..prios));
    }
    for v in 0..n {
        for _ in 0..rng.gen_range(1..=3) {
            text += &format!("edge v{v} v{}\n", rng.gen_range(0..n));
        }
    }
    ParityGame::parse(&text).unwrap()
}

/// Trimmed, degeneralized automaton for `phi` with window constraints from
/// `alpha`.
pub fn constrained_nba(phi: &Formula, alpha: &Valuation) -> (Nba, Vec<Constraint>) {
    let gnba = trim_gnba(&build_gnba(phi).unwrap());
    let nba = remove_unproductive(&degeneralize(&gnba));
    let constraints = window_constraints(&gnba, &nba, alpha).unwrap();
    (nba, constraints)
}

/// Every play of `a` of the form `prefix · cycle^ω` whose vertex sequence
/// `prefix · cycle` has at most `max_len` vertices and no repetitions.
pub fn simple_lassos(a: &Arena, max_len: usize) -> Vec<PlayLasso> {
    let mut out = Vec::new();
    let mut path = vec![a.init];
    fn walk(a: &Arena, path: &mut Vec<usize>, max_len: usize, out: &mut Vec<PlayLasso>) {
        let last = *path.last().unwrap();
        for &w in &a.succ[last] {
            if let Some(j) = path.iter().position(|&x| x == w) {
                out.push(PlayLasso {
                    prefix: path[..j].to_vec(),
                    cycle: path[j..].to_vec(),
                });
            } else if path.len() < max_len {
                path.push(w);
                walk(a, path, max_len, out);
                path.pop();
            }
        }
    }
    walk(a, &mut path, max_len, &mut out);
    out
}

/// Evaluates the winning condition on every simple lasso of the arena; for
/// arenas where only one player has choices this decides the game.
pub fn all_simple_plays_satisfy(g: &PltlGame, alpha: &Valuation) -> bool {
    simple_lassos(&g.arena, g.arena.num_vertices())
        .iter()
        .all(|rho| eval_lasso(&g.formula, alpha, &play_trace(&g.arena, rho, false).unwrap(), 0).unwrap())
}

pub fn some_simple_play_satisfies(g: &PltlGame, alpha: &Valuation) -> bool {
    simple_lassos(&g.arena, g.arena.num_vertices())
        .iter()
        .any(|rho| eval_lasso(&g.formula, alpha, &play_trace(&g.arena, rho, false).unwrap(), 0).unwrap())
}
