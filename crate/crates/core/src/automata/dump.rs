//! Line-oriented text dumps of automata.
//!
//! ```text
//! States: 3
//! Start: 0 1
//! Acceptance: gen-buchi 1
//! AP: p
//! State: 0 {0}
//!   p -> 0
//!   - -> 2
//! Constraint: 0 b=3 F={0 2}
//! ```
//!
//! Büchi and generalized Büchi states list the acceptance sets they belong
//! to in braces; parity states carry their priority.

use std::fmt::Write;

use super::{AutomataError, Constraint, Dpa, Gnba, Letter, Nba};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DumpKind {
    Buchi,
    GenBuchi(usize),
    Parity(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DumpState {
    pub prio: Option<usize>,
    pub marks: Vec<usize>,
    pub edges: Vec<(Letter, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonDump {
    pub kind: DumpKind,
    pub ap: Vec<String>,
    pub start: Vec<usize>,
    pub states: Vec<DumpState>,
    /// `(b_j, F_j)` per window constraint.
    pub constraints: Vec<(usize, Vec<usize>)>,
}

impl AutomatonDump {
    pub fn from_gnba(a: &Gnba) -> Self {
        let states = (0..a.num_states())
            .map(|q| DumpState {
                prio: None,
                marks: (0..a.acceptance.len())
                    .filter(|&j| a.acceptance[j].states[q])
                    .collect(),
                edges: a.trans[q].clone(),
            })
            .collect();
        AutomatonDump {
            kind: DumpKind::GenBuchi(a.acceptance.len()),
            ap: a.ap.clone(),
            start: a.initial.clone(),
            states,
            constraints: Vec::new(),
        }
    }

    pub fn from_nba(a: &Nba, constraints: &[Constraint]) -> Self {
        let states = (0..a.num_states)
            .map(|q| DumpState {
                prio: None,
                marks: if a.accepting[q] { vec![0] } else { vec![] },
                edges: a.trans[q].clone(),
            })
            .collect();
        AutomatonDump {
            kind: DumpKind::Buchi,
            ap: a.ap.clone(),
            start: a.initial.clone(),
            states,
            constraints: constraints
                .iter()
                .map(|c| {
                    let ids = (0..a.num_states).filter(|&q| c.states[q]).collect();
                    (c.bound, ids)
                })
                .collect(),
        }
    }

    pub fn from_dpa(d: &Dpa) -> Self {
        let states = (0..d.num_states())
            .map(|q| DumpState {
                prio: Some(d.priority[q]),
                marks: Vec::new(),
                edges: d.delta[q]
                    .iter()
                    .enumerate()
                    .map(|(l, &t)| (l as Letter, t))
                    .collect(),
            })
            .collect();
        AutomatonDump {
            kind: DumpKind::Parity(d.priority.iter().copied().max().unwrap_or(0)),
            ap: d.ap.clone(),
            start: vec![d.initial],
            states,
            constraints: Vec::new(),
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        let ids = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(out, "States: {}", self.states.len()).unwrap();
        writeln!(out, "Start: {}", ids(&self.start)).unwrap();
        let acc = match self.kind {
            DumpKind::Buchi => "buchi".to_string(),
            DumpKind::GenBuchi(k) => format!("gen-buchi {k}"),
            DumpKind::Parity(m) => format!("parity {m}"),
        };
        writeln!(out, "Acceptance: {acc}").unwrap();
        writeln!(out, "AP: {}", self.ap.join(" ")).unwrap();
        for (q, s) in self.states.iter().enumerate() {
            match (self.kind, s.prio) {
                (DumpKind::Parity(_), Some(p)) => writeln!(out, "State: {q} {p}").unwrap(),
                _ if s.marks.is_empty() => writeln!(out, "State: {q}").unwrap(),
                _ => writeln!(out, "State: {q} {{{}}}", ids(&s.marks)).unwrap(),
            }
            for &(l, t) in &s.edges {
                writeln!(out, "  {} -> {t}", self.letter_text(l)).unwrap();
            }
        }
        for (j, (b, f)) in self.constraints.iter().enumerate() {
            writeln!(out, "Constraint: {j} b={b} F={{{}}}", ids(f)).unwrap();
        }
        out
    }

    fn letter_text(&self, l: Letter) -> String {
        let names = super::letter_names(&self.ap, l);
        if names.is_empty() {
            "-".to_string()
        } else {
            names.join(",")
        }
    }

    pub fn parse(text: &str) -> Result<Self, AutomataError> {
        let err = |line: usize, msg: &str| AutomataError::Dump {
            line: line + 1,
            msg: msg.to_string(),
        };
        let num = |line: usize, s: &str| -> Result<usize, AutomataError> {
            s.parse().map_err(|_| err(line, &format!("expected a number, got `{s}`")))
        };
        let mut count = None;
        let mut start = Vec::new();
        let mut kind = None;
        let mut ap: Vec<String> = Vec::new();
        let mut states: Vec<DumpState> = Vec::new();
        let mut constraints = Vec::new();

        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("States:") {
                count = Some(num(ln, rest.trim())?);
            } else if let Some(rest) = line.strip_prefix("Start:") {
                start = rest
                    .split_whitespace()
                    .map(|s| num(ln, s))
                    .collect::<Result<_, _>>()?;
            } else if let Some(rest) = line.strip_prefix("Acceptance:") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                kind = Some(match parts.as_slice() {
                    ["buchi"] => DumpKind::Buchi,
                    ["gen-buchi", k] => DumpKind::GenBuchi(num(ln, k)?),
                    ["parity", m] => DumpKind::Parity(num(ln, m)?),
                    _ => return Err(err(ln, "unknown acceptance")),
                });
            } else if let Some(rest) = line.strip_prefix("AP:") {
                ap = rest.split_whitespace().map(String::from).collect();
            } else if let Some(rest) = line.strip_prefix("State:") {
                let rest = rest.trim();
                let (id, tail) = rest.split_once(' ').unwrap_or((rest, ""));
                if num(ln, id)? != states.len() {
                    return Err(err(ln, "states must be listed in order"));
                }
                let tail = tail.trim();
                let mut st = DumpState {
                    prio: None,
                    marks: Vec::new(),
                    edges: Vec::new(),
                };
                if let Some(inner) = tail.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
                    st.marks = inner
                        .split_whitespace()
                        .map(|s| num(ln, s))
                        .collect::<Result<_, _>>()?;
                } else if !tail.is_empty() {
                    st.prio = Some(num(ln, tail)?);
                }
                states.push(st);
            } else if let Some(rest) = line.strip_prefix("Constraint:") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let (b, f) = match parts.as_slice() {
                    [_, b, f @ ..] => (b, f.join(" ")),
                    _ => return Err(err(ln, "malformed constraint")),
                };
                let b = b.strip_prefix("b=").ok_or_else(|| err(ln, "expected b=<n>"))?;
                let f = f
                    .strip_prefix("F={")
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(|| err(ln, "expected F={...}"))?;
                let ids = f.split_whitespace().map(|s| num(ln, s)).collect::<Result<_, _>>()?;
                constraints.push((num(ln, b)?, ids));
            } else if let Some((lhs, rhs)) = line.split_once("->") {
                let st = states.last_mut().ok_or_else(|| err(ln, "edge before any state"))?;
                let mut letter: Letter = 0;
                let lhs = lhs.trim();
                if lhs != "-" {
                    for name in lhs.split(',') {
                        let i = ap
                            .iter()
                            .position(|p| p == name.trim())
                            .ok_or_else(|| err(ln, &format!("unknown proposition `{name}`")))?;
                        letter |= 1 << i;
                    }
                }
                st.edges.push((letter, num(ln, rhs.trim())?));
            } else {
                return Err(err(ln, "unrecognized line"));
            }
        }
        let kind = kind.ok_or_else(|| err(0, "missing Acceptance header"))?;
        if count != Some(states.len()) {
            return Err(err(0, "state count does not match header"));
        }
        Ok(AutomatonDump {
            kind,
            ap,
            start,
            states,
            constraints,
        })
    }
}
