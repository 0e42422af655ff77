//! Game arenas and their text format.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write;

use crate::formula::Label;

use super::GameError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Zero => 0,
            Player::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    /// The player who wins a play whose least recurring priority is `p`.
    pub fn of_parity(p: usize) -> Player {
        if p.is_multiple_of(2) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A finite labeled game graph. Successor lists are sorted and free of
/// duplicates; every vertex has at least one successor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    pub names: Vec<String>,
    pub owner: Vec<Player>,
    pub succ: Vec<Vec<usize>>,
    pub labels: Vec<Label>,
    pub init: usize,
}

impl Arena {
    /// Builds and validates an arena from parts.
    pub fn new(
        names: Vec<String>,
        owner: Vec<Player>,
        mut succ: Vec<Vec<usize>>,
        labels: Vec<Label>,
        init: usize,
    ) -> Result<Arena, GameError> {
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let arena = Arena {
            names,
            owner,
            succ,
            labels,
            init,
        };
        arena.validate()?;
        Ok(arena)
    }

    fn validate(&self) -> Result<(), GameError> {
        let n = self.names.len();
        if self.init >= n {
            return Err(GameError::MissingInit);
        }
        let mut seen = BTreeSet::new();
        for (v, name) in self.names.iter().enumerate() {
            if !seen.insert(name) {
                return Err(GameError::DuplicateVertex(name.clone()));
            }
            if self.succ[v].is_empty() {
                return Err(GameError::NoOutgoing(name.clone()));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.succ[v].binary_search(&w).is_ok()
    }

    /// All propositions occurring in some label.
    pub fn propositions(&self) -> BTreeSet<String> {
        self.labels.iter().flatten().cloned().collect()
    }

    /// Swaps the owners of all vertices.
    pub fn dual(&self) -> Arena {
        Arena {
            owner: self.owner.iter().map(|p| p.opponent()).collect(),
            ..self.clone()
        }
    }

    /// Parses the line format: `init <id>`, `vertex <id> <0|1> [label p,q]`,
    /// `edge <src> <dst>`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Arena, GameError> {
        let mut names = Vec::new();
        let mut owner = Vec::new();
        let mut labels = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, String, String)> = Vec::new();
        let mut init: Option<(usize, String)> = None;

        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: String| GameError::Parse { line: ln + 1, msg };
            match toks.as_slice() {
                [] => {}
                ["init", v] => {
                    if init.is_some() {
                        return Err(err("duplicate init line".into()));
                    }
                    init = Some((ln, v.to_string()));
                }
                ["vertex", v, o, rest @ ..] => {
                    let o = match *o {
                        "0" => Player::Zero,
                        "1" => Player::One,
                        other => return Err(err(format!("owner must be 0 or 1, got `{other}`"))),
                    };
                    let label: Label = match rest {
                        [] => Label::new(),
                        ["label", ps @ ..] => ps
                            .join("")
                            .split(',')
                            .filter(|s| !s.is_empty())
                            .map(String::from)
                            .collect(),
                        _ => return Err(err("expected `label p,q,...`".into())),
                    };
                    if index.insert(v.to_string(), names.len()).is_some() {
                        return Err(GameError::DuplicateVertex(v.to_string()));
                    }
                    names.push(v.to_string());
                    owner.push(o);
                    labels.push(label);
                }
                ["edge", a, b] => edges.push((ln, a.to_string(), b.to_string())),
                _ => return Err(err(format!("unrecognized line `{line}`"))),
            }
        }
        let mut succ = vec![Vec::new(); names.len()];
        for (_, a, b) in edges {
            let ia = *index.get(&a).ok_or(GameError::UnknownVertex(a))?;
            let ib = *index.get(&b).ok_or(GameError::UnknownVertex(b))?;
            succ[ia].push(ib);
        }
        let (_, init) = init.ok_or(GameError::MissingInit)?;
        let init = *index.get(&init).ok_or(GameError::UnknownVertex(init))?;
        Arena::new(names, owner, succ, labels, init)
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        writeln!(out, "init {}", self.names[self.init]).unwrap();
        for v in 0..self.num_vertices() {
            write!(out, "vertex {} {}", self.names[v], self.owner[v]).unwrap();
            if !self.labels[v].is_empty() {
                let ps: Vec<&str> = self.labels[v].iter().map(String::as_str).collect();
                write!(out, " label {}", ps.join(",")).unwrap();
            }
            out.push('\n');
        }
        for v in 0..self.num_vertices() {
            for &w in &self.succ[v] {
                writeln!(out, "edge {} {}", self.names[v], self.names[w]).unwrap();
            }
        }
        out
    }

    /// The color-choice arena: every vertex `v` is split into `(v,0)` (where
    /// `color` holds) and `(v,1)`, and every edge `e = (v,w)` becomes an
    /// intermediate vertex `[v,w]` owned by Player 0, from which she picks
    /// the color of `w`. Edge vertices carry the empty label.
    pub fn expand_alternating_color(&self, color: &str) -> Result<Arena, GameError> {
        if self.propositions().contains(color) {
            return Err(GameError::ColorClash(color.to_string()));
        }
        let n = self.num_vertices();
        let mut names = Vec::new();
        let mut owner = Vec::new();
        let mut labels = Vec::new();
        for v in 0..n {
            for b in 0..2 {
                names.push(format!("({},{b})", self.names[v]));
                owner.push(self.owner[v]);
                let mut l = self.labels[v].clone();
                if b == 0 {
                    l.insert(color.to_string());
                }
                labels.push(l);
            }
        }
        let mut succ = vec![Vec::new(); 2 * n];
        for v in 0..n {
            for &w in &self.succ[v] {
                let e = names.len();
                names.push(format!("[{},{}]", self.names[v], self.names[w]));
                owner.push(Player::Zero);
                labels.push(Label::new());
                succ[2 * v].push(e);
                succ[2 * v + 1].push(e);
                succ.push(vec![2 * w, 2 * w + 1]);
            }
        }
        Arena::new(names, owner, succ, labels, 2 * self.init)
    }

    /// Two-colors the vertices reachable from the initial vertex by the
    /// parity of their distance; `true` marks even ("significant")
    /// positions. Fails if some reachable edge joins two vertices of the
    /// same color. Unreachable vertices are reported as significant.
    pub fn bipartition(&self) -> Result<Vec<bool>, GameError> {
        let mut color: Vec<Option<bool>> = vec![None; self.num_vertices()];
        color[self.init] = Some(true);
        let mut queue = VecDeque::from([self.init]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].expect("colored when queued");
            for &w in &self.succ[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => {
                        return Err(GameError::NotBipartite(self.names[w].clone()));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap_or(true)).collect())
    }
}
