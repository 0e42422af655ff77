//! Ultimately periodic plays and their traces.

use crate::formula::LassoWord;

use super::{Arena, GameError};

/// The play `prefix · cycle^ω` as a vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayLasso {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl PlayLasso {
    /// Checks that the play starts in the initial vertex and follows edges.
    pub fn check(&self, arena: &Arena) -> Result<(), GameError> {
        if self.cycle.is_empty() {
            return Err(GameError::InvalidPlay("empty cycle".into()));
        }
        let seq: Vec<usize> = self
            .prefix
            .iter()
            .chain(&self.cycle)
            .chain(self.cycle.first())
            .copied()
            .collect();
        if seq[0] != arena.init {
            return Err(GameError::InvalidPlay("play does not start in the initial vertex".into()));
        }
        for w in seq.windows(2) {
            if !arena.has_edge(w[0], w[1]) {
                return Err(GameError::InvalidPlay(format!(
                    "{} -> {} is not an edge",
                    arena.names[w[0]], arena.names[w[1]]
                )));
            }
        }
        Ok(())
    }

    pub fn render(&self, arena: &Arena) -> String {
        let names = |vs: &[usize]| vs.iter().map(|&v| arena.names[v].as_str()).collect::<Vec<_>>().join(" ");
        format!("{} ({})^w", names(&self.prefix), names(&self.cycle))
    }
}

/// The trace of a play; with `blinking` only even positions are kept, which
/// requires an even cycle length.
pub fn play_trace(arena: &Arena, rho: &PlayLasso, blinking: bool) -> Result<LassoWord, GameError> {
    if rho.cycle.is_empty() {
        return Err(GameError::InvalidPlay("empty cycle".into()));
    }
    let label = |v: &usize| arena.labels[*v].clone();
    if !blinking {
        return Ok(LassoWord::new(
            rho.prefix.iter().map(label).collect(),
            rho.cycle.iter().map(label).collect(),
        ));
    }
    if rho.cycle.len() % 2 == 1 {
        return Err(GameError::InvalidPlay("blinking trace needs an even cycle".into()));
    }
    let prefix = rho.prefix.iter().step_by(2).map(label).collect();
    // the cycle starts at absolute position |prefix|; keep its even positions
    let skip = rho.prefix.len() % 2;
    let cycle = rho.cycle.iter().skip(skip).step_by(2).map(label).collect();
    Ok(LassoWord::new(prefix, cycle))
}
