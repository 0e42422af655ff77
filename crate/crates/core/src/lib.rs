//! Solver for infinite graph games with parametric LTL winning conditions.
//!
//! The pipeline translates a formula into an unambiguous generalized Büchi
//! automaton, degeneralizes it, determinizes it into a parity automaton whose
//! states carry bounded counters, and solves the product parity game.

pub mod automata;
pub mod bitset;
pub mod formula;
pub mod game;
pub mod graph;
pub mod parity;
pub mod solve;
