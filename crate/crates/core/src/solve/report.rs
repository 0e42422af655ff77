//! Result records: ordered `key = value` lines.

use std::fmt::{Display, Write};

use super::{render_valuation, Membership, OptimizationResult, Stats, Status, Verdict};
use crate::game::Arena;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// One `key = value` line per entry.
    pub fn emit_record(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            writeln!(out, "{k} = {v}").unwrap();
        }
        out
    }

    /// Aligned `key: value` lines.
    pub fn emit_text(&self) -> String {
        let width = self.entries.iter().map(|(k, _)| k.len() + 1).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.entries {
            writeln!(out, "{:<width$}  {v}", format!("{k}:")).unwrap();
        }
        out
    }

    pub fn stats(&mut self, s: &Stats) -> &mut Self {
        self.push("route", s.route)
            .push("gnba_states", s.gnba_states)
            .push("nba_states", s.nba_states)
            .push("constraints", s.constraints)
            .push("dpa_states", s.dpa_states)
            .push("memory_states", s.memory_states)
            .push("parity_vertices", s.parity_vertices)
            .push("max_priority", s.max_priority)
    }

    pub fn membership(m: &Membership, alpha: &crate::formula::Valuation) -> Report {
        let mut r = Report::new();
        r.push("query", "membership")
            .push("player", m.player)
            .push("valuation", render_valuation(alpha))
            .push("result", m.wins)
            .push("winner", m.winner)
            .push("strategy_memory", m.strategy.memory.size);
        r.stats(&m.stats);
        r
    }

    pub fn optimization(o: &OptimizationResult) -> Report {
        let mut r = Report::new();
        r.push("query", "optimize");
        if let Some(obj) = o.objective {
            r.push("objective", obj);
        }
        r.push("status", o.status.name());
        match o.status {
            Status::Value(n) => {
                r.push("value", n);
            }
            Status::NoneWithin(n) => {
                r.push("message", format!("no winning valuation <= {n}"));
            }
            Status::AtLeast(n) => {
                r.push("value_at_least", n);
            }
            Status::None | Status::Unbounded => {}
        }
        if let Some(x) = &o.variable {
            r.push("variable", x);
        }
        if let Some(w) = &o.witness {
            r.push("valuation", render_valuation(w));
        }
        if let Some(s) = &o.strategy {
            r.push("strategy_memory", s.memory.size);
        }
        if let Some(b) = o.bound {
            r.push("search_bound", b);
        }
        r.push("queries", o.queries);
        if let Some(s) = &o.stats {
            r.stats(s);
        }
        r
    }

    pub fn verdict(v: &Verdict, arena: &Arena) -> Report {
        let mut r = Report::new();
        r.push("query", "verify").push("result", v.wins);
        if let Some(rho) = &v.counterexample {
            r.push("counterexample", rho.render(arena));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let mut r = Report::new();
        r.push("status", "value").push("value", 2);
        assert_eq!(r.emit_record(), "status = value\nvalue = 2\n");
        assert_eq!(r.emit_text(), "status:  value\nvalue:   2\n");
        assert_eq!(r.get("value"), Some("2"));
    }
}
