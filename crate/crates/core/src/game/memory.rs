//! Memory structures, finite-state (Mealy) strategies and product arenas.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use super::{Arena, GameError, Player};

/// `(M, m₀, upd)` with `M = {0, …, size-1}`; `update[m][v]` is the memory
/// after moving to vertex `v` in memory `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryStructure {
    pub size: usize,
    pub initial: usize,
    pub update: Vec<Vec<usize>>,
}

impl MemoryStructure {
    /// The one-state memory: positional strategies.
    pub fn trivial(num_vertices: usize) -> Self {
        MemoryStructure {
            size: 1,
            initial: 0,
            update: vec![vec![0; num_vertices]],
        }
    }

    pub fn upd(&self, m: usize, v: usize) -> usize {
        self.update[m][v]
    }
}

/// A memory structure together with a next-move function for `player`.
/// `next[v][m]` is defined exactly for the player's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyStrategy {
    pub player: Player,
    pub memory: MemoryStructure,
    pub next: Vec<Vec<usize>>,
}

impl MealyStrategy {
    pub fn nxt(&self, v: usize, m: usize) -> Option<usize> {
        self.next.get(v).and_then(|row| row.get(m)).copied()
    }

    /// Checks that every move of the player follows an arena edge.
    pub fn check_legal(&self, arena: &Arena) -> Result<(), GameError> {
        for v in 0..arena.num_vertices() {
            if arena.owner[v] != self.player {
                continue;
            }
            for m in 0..self.memory.size {
                match self.nxt(v, m) {
                    Some(w) if w < arena.num_vertices() && arena.has_edge(v, w) => {}
                    Some(w) => {
                        return Err(GameError::IllegalMove {
                            from: arena.names[v].clone(),
                            to: arena.names.get(w).cloned().unwrap_or_else(|| w.to_string()),
                        })
                    }
                    None => return Err(GameError::UndefinedMove(arena.names[v].clone(), m)),
                }
            }
        }
        Ok(())
    }

    /// `memory <n>`, `initial <m>`, then `upd <m> <v> -> <m'>` and
    /// `move <v> <m> -> <v'>` lines.
    pub fn emit(&self, arena: &Arena) -> String {
        let mut out = String::new();
        writeln!(out, "memory {}", self.memory.size).unwrap();
        writeln!(out, "initial {}", self.memory.initial).unwrap();
        for m in 0..self.memory.size {
            for v in 0..arena.num_vertices() {
                writeln!(out, "upd {m} {} -> {}", arena.names[v], self.memory.upd(m, v)).unwrap();
            }
        }
        for v in 0..arena.num_vertices() {
            if arena.owner[v] != self.player {
                continue;
            }
            for m in 0..self.memory.size {
                if let Some(w) = self.nxt(v, m) {
                    writeln!(out, "move {} {m} -> {}", arena.names[v], arena.names[w]).unwrap();
                }
            }
        }
        out
    }

    pub fn parse(text: &str, arena: &Arena, player: Player) -> Result<MealyStrategy, GameError> {
        let n = arena.num_vertices();
        let mut size = None;
        let mut initial = 0;
        let mut update: Vec<Vec<Option<usize>>> = Vec::new();
        let mut next: Vec<Vec<Option<usize>>> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let err = |msg: String| GameError::Parse { line: ln + 1, msg };
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("expected a number, got `{s}`")));
            let vertex = |s: &str| arena.index_of(s).ok_or_else(|| GameError::UnknownVertex(s.to_string()));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["memory", k] => {
                    let k = num(k)?;
                    size = Some(k);
                    update = vec![vec![None; n]; k];
                    next = vec![vec![None; k]; n];
                }
                ["initial", m] => initial = num(m)?,
                ["upd", m, v, "->", m2] => {
                    let (m, v, m2) = (num(m)?, vertex(v)?, num(m2)?);
                    let row = update.get_mut(m).ok_or_else(|| err(format!("memory state {m} out of range")))?;
                    row[v] = Some(m2);
                }
                ["move", v, m, "->", w] => {
                    let (v, m, w) = (vertex(v)?, num(m)?, vertex(w)?);
                    let slot = next[v]
                        .get_mut(m)
                        .ok_or_else(|| err(format!("memory state {m} out of range")))?;
                    *slot = Some(w);
                }
                _ => return Err(err(format!("unrecognized line `{line}`"))),
            }
        }
        let size = size.ok_or(GameError::Parse {
            line: 1,
            msg: "missing `memory` line".into(),
        })?;
        let bad = |msg: String| GameError::Parse { line: 0, msg };
        if initial >= size {
            return Err(bad(format!("initial memory {initial} out of range")));
        }
        let mut upd = vec![vec![0; n]; size];
        for m in 0..size {
            for v in 0..n {
                upd[m][v] = match update[m][v] {
                    Some(m2) if m2 < size => m2,
                    Some(m2) => return Err(bad(format!("memory state {m2} out of range"))),
                    None => return Err(bad(format!("upd {m} {} missing", arena.names[v]))),
                };
            }
        }
        let next = next
            .into_iter()
            .enumerate()
            .map(|(v, row)| {
                if arena.owner[v] == player {
                    row.into_iter()
                        .enumerate()
                        .map(|(m, w)| w.ok_or_else(|| GameError::UndefinedMove(arena.names[v].clone(), m)))
                        .collect()
                } else {
                    Ok(Vec::new())
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let s = MealyStrategy {
            player,
            memory: MemoryStructure {
                size,
                initial,
                update: upd,
            },
            next,
        };
        s.check_legal(arena)?;
        Ok(s)
    }
}

/// The reachable part of `A × M` together with the origin `(v, m)` of each
/// product vertex. Vertex 0 is the initial vertex `(v₀, m₀)`.
#[derive(Clone, Debug)]
pub struct Product {
    pub arena: Arena,
    pub origin: Vec<(usize, usize)>,
}

pub fn product_with_memory(a: &Arena, mem: &MemoryStructure) -> Product {
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut origin = vec![(a.init, mem.initial)];
    index.insert((a.init, mem.initial), 0);
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let (v, m) = origin[x];
        let mut out = Vec::new();
        for &w in &a.succ[v] {
            let key = (w, mem.upd(m, w));
            let id = *index.entry(key).or_insert_with(|| {
                origin.push(key);
                queue.push_back(origin.len() - 1);
                origin.len() - 1
            });
            out.push(id);
        }
        if succ.len() <= x {
            succ.resize(x + 1, Vec::new());
        }
        succ[x] = out;
    }
    succ.resize(origin.len(), Vec::new());
    let names = origin.iter().map(|&(v, m)| format!("({},{m})", a.names[v])).collect();
    let owner = origin.iter().map(|&(v, _)| a.owner[v]).collect();
    let labels = origin.iter().map(|&(v, _)| a.labels[v].clone()).collect();
    let arena = Arena::new(names, owner, succ, labels, 0).expect("products of valid arenas are valid");
    Product { arena, origin }
}
