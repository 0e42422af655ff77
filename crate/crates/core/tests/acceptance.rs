//! Acceptance suite: one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line (visible with `--nocapture`) and fails
//! the test on any mismatch. All sampling is seeded.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use pltl_core::automata::{
    build_gnba, check_nonconfluent, check_unambiguous, degeneralize, determinize_with_counters, dpa_accepts_lasso,
    nba_lasso_accepts, parity_accepts_lasso, remove_unproductive, trim_gnba, Determinizer,
};
use pltl_core::formula::{eval_lasso, parse_formula, Formula, Valuation};
use pltl_core::game::{Arena, Player};
use pltl_core::parity::{brute_force_parity, solve_parity, verify_parity_strategy};
use pltl_core::solve::{
    compute_search_bound, emptiness, finiteness, membership, optimize_unipolar, universality,
    verify_strategy, Objective, PltlGame, SolveOptions, Status,
};

const SEED: u64 = 0x5eed_2024;

fn report(n: usize, title: &str, start: Instant, limit: Duration, failures: &[String], detail: &str) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed <= limit;
    println!(
        "criterion {n:>2}: {} {title} ({detail}; {:.2}s of {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n}: {} failures, first: {}", failures.len(), failures[0]);
    assert!(elapsed <= limit, "criterion {n}: took {elapsed:?}, limit {limit:?}");
}

/// The sample family shared by the first two criteria.
fn semantic_samples(count: usize) -> Vec<(Formula, Valuation, pltl_core::formula::LassoWord)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let phi = random_pltl_f(&mut rng, 6, &["x", "z"]);
            let alpha = random_valuation(&mut rng, &phi, 3);
            let w = random_lasso(&mut rng, &["p", "q"], 4, 4);
            (phi, alpha, w)
        })
        .collect()
}

#[test]
fn criterion_01_semantic_equivalence() {
    let start = Instant::now();
    let samples = semantic_samples(500);
    let mut failures = Vec::new();
    let mut accepted = 0;
    for (phi, alpha, w) in &samples {
        let expected = eval_lasso(phi, alpha, w, 0).unwrap();
        let (nba, constraints) = constrained_nba(phi, alpha);
        let got = nba_lasso_accepts(&nba, &constraints, w);
        accepted += got as usize;
        if got != expected {
            failures.push(format!("{phi} with {alpha} on {w}: eval {expected}, automaton {got}"));
        }
    }
    let detail = format!("{} samples, {accepted} satisfied", samples.len());
    report(1, "formula evaluation = constrained Buchi acceptance", start, Duration::from_secs(60), &failures, &detail);
}

#[test]
fn criterion_02_determinization() {
    let start = Instant::now();
    let samples = semantic_samples(500);
    let mut failures = Vec::new();
    for (phi, alpha, w) in &samples {
        let (nba, constraints) = constrained_nba(phi, alpha);
        let expected = nba_lasso_accepts(&nba, &constraints, w);
        let explicit = dpa_accepts_lasso(&determinize_with_counters(&nba, &constraints).unwrap(), w);
        let mut lazy = Determinizer::new(&nba, &constraints).unwrap();
        let on_the_fly = parity_accepts_lasso(&mut lazy, w).unwrap();
        if explicit != expected || on_the_fly != expected {
            failures.push(format!(
                "{phi} with {alpha} on {w}: buchi {expected}, parity {explicit}, lazy parity {on_the_fly}"
            ));
        }
    }
    let detail = format!("{} samples", samples.len());
    report(2, "parity acceptance = constrained Buchi acceptance", start, Duration::from_secs(120), &failures, &detail);
}

#[test]
fn criterion_03_structural_bounds() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (phi, alpha, _) in semantic_samples(500) {
        let gnba = build_gnba(&phi).unwrap();
        let size = phi.size();
        let atoms = phi.atoms().len();
        if gnba.num_states() > 1 << (size + atoms) {
            failures.push(format!("{phi}: {} tableau states > 2^({size}+{atoms})", gnba.num_states()));
        }
        let k = gnba.acceptance.len();
        if k >= size {
            failures.push(format!("{phi}: {k} acceptance sets, size {size}"));
        }
        let nba = degeneralize(&gnba);
        if nba.num_states != gnba.num_states() * (k + 1) {
            failures.push(format!("{phi}: degeneralized to {} states", nba.num_states));
        }
        let (trimmed, constraints) = constrained_nba(&phi, &alpha);
        let dpa = determinize_with_counters(&trimmed, &constraints).unwrap();
        let max = dpa.priority.iter().copied().max().unwrap_or(0);
        if max > 2 * trimmed.num_states + 1 {
            failures.push(format!("{phi}: priority {max} over {} states", trimmed.num_states));
        }
        let letters = 1 << trimmed.ap.len();
        if dpa.delta.iter().any(|row| row.len() != letters) {
            failures.push(format!("{phi}: parity automaton is not total"));
        }
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut arenas: Vec<Arena> = FIXTURES.iter().map(|(_, t)| arena(t)).collect();
    arenas.extend((0..50).map(|_| {
        let n = rng.gen_range(1..=6);
        random_arena(&mut rng, n)
    }));
    for a in &arenas {
        let e = a.expand_alternating_color("c").unwrap();
        if e.num_vertices() != 2 * a.num_vertices() + a.num_edges() {
            failures.push(format!("expanded arena has {} vertices", e.num_vertices()));
        }
        if e.bipartition().is_err() {
            failures.push("expanded arena is not bipartite".into());
        }
    }
    let detail = format!("{checked} formulas, {} arenas", arenas.len());
    report(3, "size bounds of every construction", start, Duration::from_secs(120), &failures, &detail);
}

#[test]
fn criterion_04_unambiguity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut formulas: Vec<Formula> = (0..94).map(|_| random_pltl_f(&mut rng, 7, &["x", "z"])).collect();
    for phi in [PHI1, PHI2, "G F p & G F q", "p U (q R X p)"] {
        formulas.push(parse_formula(phi).unwrap());
    }
    for phi in [PHI1, PHI2] {
        let g = game(A_DELAY, phi);
        let psi = pltl_core::formula::alternating_color_rewrite(&g.formula, &BTreeSet::new(), "c").unwrap();
        formulas.push(psi);
    }
    let mut failures = Vec::new();
    for phi in &formulas {
        let gnba = build_gnba(phi).unwrap();
        let full = degeneralize(&gnba);
        let trimmed = remove_unproductive(&degeneralize(&trim_gnba(&gnba)));
        if !check_unambiguous(&full) || !check_unambiguous(&trimmed) {
            failures.push(format!("{phi}: ambiguous"));
        }
        if !check_nonconfluent(&trimmed) {
            failures.push(format!("{phi}: confluent after trimming"));
        }
    }
    let detail = format!("{} automata", formulas.len());
    report(4, "unambiguous and non-confluent automata", start, Duration::from_secs(60), &failures, &detail);
}

#[test]
fn criterion_05_parity_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut failures = Vec::new();
    let mut strategies = 0;
    for _ in 0..500 {
        let g = random_parity_game(&mut rng, 8, 3);
        let z = solve_parity(&g);
        let b = brute_force_parity(&g).unwrap();
        if z.winner != b.winner {
            failures.push(format!("regions differ on\n{}", g.emit()));
            continue;
        }
        for p in [Player::Zero, Player::One] {
            let region = z.region(p);
            strategies += 1;
            if !verify_parity_strategy(&g, p, &region, &z.strategy_of(&g, p)).unwrap() {
                failures.push(format!("strategy of player {p} rejected on\n{}", g.emit()));
            }
        }
    }
    let detail = format!("500 games, {strategies} strategies");
    report(5, "parity solver = exhaustive solver", start, Duration::from_secs(30), &failures, &detail);
}

/// The (arena, formula) pairs used for the game-level criteria.
fn game_matrix() -> Vec<(String, PltlGame)> {
    let formulas = [PHI1, PHI2, PHI3, "G F p | F<=x q", "F<=x p & G<=y q"];
    let mut out = Vec::new();
    for (name, text) in FIXTURES {
        for phi in formulas {
            out.push((format!("{name} / {phi}"), game(text, phi)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for i in 0..6 {
        let n = rng.gen_range(2..=4);
        let a = random_arena(&mut rng, n);
        let phi = formulas[i % formulas.len()];
        out.push((format!("random{i} / {phi}"), PltlGame::new(a, parse_formula(phi).unwrap()).unwrap()));
    }
    out
}

#[test]
fn criterion_06_determinacy_and_duality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut queries = 0;
    let matrix = game_matrix();
    for (name, g) in &matrix {
        let dual = g.dual();
        for alpha in valuations_up_to(&g.variables(), 4) {
            let m0 = membership(g, Player::Zero, &alpha, false).unwrap().wins;
            let m1 = membership(g, Player::One, &alpha, false).unwrap().wins;
            let d0 = membership(&dual, Player::Zero, &alpha, false).unwrap().wins;
            let d1 = membership(&dual, Player::One, &alpha, false).unwrap().wins;
            queries += 4;
            if m0 == m1 {
                failures.push(format!("{name} at {alpha}: both players win or both lose"));
            }
            if m0 != d1 || m1 != d0 {
                failures.push(format!("{name} at {alpha}: dual game disagrees"));
            }
        }
    }
    let detail = format!("{} games, {queries} membership queries", matrix.len());
    report(6, "determinacy and duality", start, Duration::from_secs(120), &failures, &detail);
}

#[test]
fn criterion_07_decision_fixtures() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut check = |what: &str, got: bool, expected: bool| {
        if got != expected {
            failures.push(format!("{what}: got {got}, expected {expected}"));
        }
    };
    let member = |a: &str, phi: &str, alpha: &str| membership(&game(a, phi), Player::Zero, &val(alpha), false).unwrap().wins;

    // expected answers from direct evaluation of the relevant plays
    for x in 0..=3 {
        let alpha = Valuation::new().with("x", x);
        let g = game(A_PATH, PHI1);
        let unique_play = all_simple_plays_satisfy(&g, &alpha);
        check(&format!("member a-path {PHI1} x={x}"), member(A_PATH, PHI1, &alpha.to_string()), unique_play);
        let g = game(A_DELAY, PHI2);
        check(&format!("member a-delay {PHI2} x={x}"), member(A_DELAY, PHI2, &alpha.to_string()), all_simple_plays_satisfy(&g, &alpha));
    }
    check("member a-loop F<=x p x=0", member(A_LOOP, PHI1, "x=0"), true);
    check("member a-path F<=x p x=1", member(A_PATH, PHI1, "x=1"), false);
    check("member a-path F<=x p x=2", member(A_PATH, PHI1, "x=2"), true);
    let stall = arena(A_STALL);
    let stay = pltl_core::game::PlayLasso { prefix: vec![], cycle: vec![0] };
    let stay_trace = pltl_core::game::play_trace(&stall, &stay, false).unwrap();
    for x in 0..=5 {
        let alpha = Valuation::new().with("x", x);
        // player 1 staying at v0 defeats the condition
        let stay_wins = !eval_lasso(&parse_formula(PHI2).unwrap(), &alpha, &stay_trace, 0).unwrap();
        check(&format!("member a-stall {PHI2} x={x}"), member(A_STALL, PHI2, &alpha.to_string()), !stay_wins);
    }
    for y in 0..=3 {
        let alpha = Valuation::new().with("y", y);
        let g = game(A_PPE, PHI3);
        check(&format!("member a-ppe {PHI3} y={y}"), member(A_PPE, PHI3, &alpha.to_string()), all_simple_plays_satisfy(&g, &alpha));
    }

    let empty = |a: &str, phi: &str| emptiness(&game(a, phi), Player::Zero).unwrap();
    check("empty a-loop F<=x p", empty(A_LOOP, PHI1), false);
    check("empty a-emptyloop F<=x p", empty(A_EMPTYLOOP, PHI1), true);
    check("empty a-stall G(q -> F<=x p)", empty(A_STALL, PHI2), true);
    check("empty a-delay G(q -> F<=x p)", empty(A_DELAY, PHI2), false);

    let universal = |a: &str, phi: &str| universality(&game(a, phi), Player::Zero).unwrap();
    check("universal a-loop G<=y p", universal(A_LOOP, PHI3), true);
    check("universal a-ppe G<=y p", universal(A_PPE, PHI3), false);
    check("universal a-loop F<=x p", universal(A_LOOP, PHI1), true);
    check("universal a-path F<=x p", universal(A_PATH, PHI1), false);

    let finite = |a: &str, phi: &str| finiteness(&game(a, phi), Player::Zero).unwrap();
    check("finite a-loop F<=x p", finite(A_LOOP, PHI1), false);
    check("finite a-ppe G<=y p", finite(A_PPE, PHI3), true);
    check("finite a-loop G<=y p", finite(A_LOOP, PHI3), false);
    check("finite a-emptyloop F<=x p", finite(A_EMPTYLOOP, PHI1), true);

    report(7, "decision problems on fixtures", start, Duration::from_secs(120), &failures, "fixture answers");
}

/// Brute-force optimum over the grid `[0..=max]^vars` by membership queries.
fn scan(g: &PltlGame, objective: Objective, max: usize) -> Option<usize> {
    let winning: Vec<Valuation> = grid(&g.variables(), max)
        .into_iter()
        .filter(|a| membership(g, Player::Zero, a, false).unwrap().wins)
        .collect();
    let values = winning.iter().map(|a| {
        let vs = a.iter().map(|(_, &v)| v);
        match objective {
            Objective::MinMin | Objective::MaxMin => vs.min().unwrap(),
            Objective::MinMax | Objective::MaxMax => vs.max().unwrap(),
        }
    });
    if objective.minimizes() {
        values.min()
    } else {
        values.max()
    }
}

const OPT_FIXTURES: [(&str, &str, Objective, Option<Status>); 12] = [
    (A_DELAY, PHI2, Objective::MinMax, Some(Status::Value(2))),
    (A_PPE, PHI3, Objective::MaxMax, Some(Status::Value(1))),
    (A_PATH, PHI1, Objective::MinMax, Some(Status::Value(2))),
    (A_PATH, PHI1, Objective::MinMin, Some(Status::Value(2))),
    (A_DELAY, "G(q -> F<=x p) & G(p -> F<=z q)", Objective::MinMin, None),
    (A_DELAY, "G(q -> F<=x p) & G(p -> F<=z q)", Objective::MinMax, Some(Status::Value(2))),
    (A_PPE, "G<=y p & G<=z X p", Objective::MaxMax, None),
    (A_PPE, "G<=y p & G<=z X p", Objective::MaxMin, None),
    (A_LOOP, PHI3, Objective::MaxMax, Some(Status::Unbounded)),
    (A_EMPTYLOOP, PHI1, Objective::MinMax, Some(Status::None)),
    (A_STALL, PHI2, Objective::MinMin, Some(Status::None)),
    (A_EMPTYLOOP, PHI3, Objective::MaxMin, None),
];

#[test]
fn criterion_08_optimization() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let max = 5;
    for (a, phi, objective, expected) in OPT_FIXTURES {
        let g = game(a, phi);
        let r = optimize_unipolar(&g, objective, &SolveOptions::default()).unwrap();
        let oracle = scan(&g, objective, max);
        let consistent = match (r.status, oracle) {
            (Status::Value(n), Some(m)) => n == m,
            (Status::Value(n), None) => objective.minimizes() && n > max,
            (Status::None, None) => true,
            (Status::Unbounded, Some(m)) => !objective.minimizes() && m == max,
            _ => false,
        };
        let label = format!("{objective} on {phi} / {}", a.lines().next().unwrap_or(""));
        if !consistent {
            failures.push(format!("{label}: got {:?}, grid scan {oracle:?}", r.status));
        }
        if let Some(e) = expected {
            if r.status != e {
                failures.push(format!("{label}: got {:?}, expected {e:?}", r.status));
            }
        }
    }
    report(8, "optimal valuations = grid scan", start, Duration::from_secs(300), &failures, &format!("{} fixtures", OPT_FIXTURES.len()));
}

#[test]
fn criterion_09_strategy_round_trip() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut verified = 0;
    for (name, g) in game_matrix() {
        for alpha in valuations_up_to(&g.variables(), 3) {
            let m = membership(&g, Player::Zero, &alpha, false).unwrap();
            let v = verify_strategy(&g, m.winner, &alpha, &m.strategy, false).unwrap();
            verified += 1;
            if !v.wins {
                failures.push(format!("{name} at {alpha}: strategy of player {} loses", m.winner));
            }
        }
    }
    for (a, phi, objective, _) in OPT_FIXTURES {
        let g = game(a, phi);
        let r = optimize_unipolar(&g, objective, &SolveOptions::default()).unwrap();
        if let Status::Value(_) = r.status {
            match (&r.witness, &r.strategy) {
                (Some(w), Some(s)) => {
                    verified += 1;
                    if !verify_strategy(&g, Player::Zero, w, s, false).unwrap().wins {
                        failures.push(format!("{objective} on {phi}: witness strategy loses"));
                    }
                }
                _ => failures.push(format!("{objective} on {phi}: value without witness strategy")),
            }
        }
    }
    // blinking strategies on the color-choice arena
    for (a, phi) in [(A_PATH, PHI1), (A_DELAY, PHI2)] {
        let g = game(a, phi);
        let psi = pltl_core::formula::alternating_color_rewrite(&g.formula, &BTreeSet::new(), "c").unwrap();
        let e = PltlGame::new(g.arena.expand_alternating_color("c").unwrap(), psi).unwrap();
        let m = membership(&e, Player::Zero, &Valuation::new(), true).unwrap();
        verified += 1;
        if !verify_strategy(&e, m.winner, &Valuation::new(), &m.strategy, true).unwrap().wins {
            failures.push(format!("blinking {phi}: strategy loses"));
        }
    }
    report(9, "synthesized strategies pass the independent checker", start, Duration::from_secs(300), &failures, &format!("{verified} strategies"));
}

#[test]
fn criterion_10_bound_soundness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut games: Vec<(String, PltlGame)> = vec![
        ("a-loop".into(), game(A_LOOP, PHI1)),
        ("a-path".into(), game(A_PATH, PHI1)),
        ("a-delay".into(), game(A_DELAY, PHI2)),
        ("a-stall".into(), game(A_STALL, PHI2)),
        ("a-emptyloop".into(), game(A_EMPTYLOOP, PHI1)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    for i in 0..12 {
        let n = rng.gen_range(2..=4);
        let phi = [PHI1, PHI2, "G F<=x p", "G(p -> X F<=x q)"][i % 4];
        games.push((format!("random{i} / {phi}"), PltlGame::new(random_arena(&mut rng, n), parse_formula(phi).unwrap()).unwrap()));
    }
    let mut nonempty = 0;
    for (name, g) in &games {
        if emptiness(g, Player::Zero).unwrap() {
            for x in 0..=6 {
                if membership(g, Player::Zero, &Valuation::new().with("x", x), false).unwrap().wins {
                    failures.push(format!("{name}: empty, yet x={x} wins"));
                }
            }
            continue;
        }
        nonempty += 1;
        let b = compute_search_bound(g).unwrap();
        if !membership(g, Player::Zero, &Valuation::new().with("x", b.bound), false).unwrap().wins {
            failures.push(format!("{name}: bound {} is not winning", b.bound));
        }
    }
    let detail = format!("{} games, {nonempty} non-empty", games.len());
    report(10, "search bound is a winning value", start, Duration::from_secs(300), &failures, &detail);
}
