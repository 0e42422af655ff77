//! Determinization of non-confluent Büchi automata with window counters.
//!
//! A state is a list of marked state sets `(S_0,m_0) … (S_n,m_n)` plus a
//! counter table `d(q,j)` for each `q ∈ S_0` and constraint `j`, counting
//! how long the unique run ending in `q` has gone without visiting `F_j`.
//! States are canonical: trailing `(∅,0)` entries are not stored.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::bitset::BitSet;
use crate::formula::LassoWord;

use super::constraints::advance;
use super::{letter_of, post, AutomataError, Constraint, Letter, Nba};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpaState {
    pub sets: Vec<(BitSet, bool)>,
    /// `d(q,j)` for the members `q` of `S_0` in ascending order, `k` values
    /// per member.
    pub counters: Vec<usize>,
}

impl DpaState {
    /// `S_0`, or `None` if it is empty.
    pub fn s0(&self) -> Option<&BitSet> {
        self.sets.first().map(|(s, _)| s).filter(|s| !s.is_empty())
    }

    /// `d(q,j)`, `None` standing for ⊥.
    pub fn counter(&self, q: usize, j: usize, k: usize) -> Option<usize> {
        let s0 = self.s0()?;
        let rank = s0.iter().position(|p| p == q)?;
        Some(self.counters[rank * k + j])
    }
}

/// Priority of a reachable state of a determinized automaton over `n` NBA
/// states: with `e` the first empty set and `m` the first marked one,
/// `1` if `e = 0`, `2m` if `m < e`, and `2e-1` otherwise.
pub fn compute_priority(s: &DpaState, n: usize) -> Result<usize, AutomataError> {
    let e = s
        .sets
        .iter()
        .position(|(set, _)| set.is_empty())
        .unwrap_or(s.sets.len());
    if e > n {
        return Err(AutomataError::IllFormed(e));
    }
    let m = s.sets.iter().position(|&(_, marked)| marked);
    assert_ne!(Some(e), m, "a marked set is never empty");
    Ok(match m {
        _ if e == 0 => 1,
        Some(m) if m < e => 2 * m,
        _ => 2 * e - 1,
    })
}

/// Common interface of the explicit and the on-the-fly parity automaton.
pub trait DeterministicParity {
    fn ap(&self) -> &[String];
    fn initial(&self) -> usize;
    fn step(&mut self, state: usize, letter: Letter) -> Result<usize, AutomataError>;
    fn priority(&self, state: usize) -> usize;
}

/// On-the-fly construction: states are created when first reached.
#[derive(Clone, Debug)]
pub struct Determinizer<'a> {
    nba: &'a Nba,
    constraints: &'a [Constraint],
    finals: BitSet,
    states: Vec<DpaState>,
    index: HashMap<DpaState, usize>,
    priorities: Vec<usize>,
    cache: HashMap<(usize, Letter), usize>,
    shift: usize,
}

impl<'a> Determinizer<'a> {
    pub fn new(nba: &'a Nba, constraints: &'a [Constraint]) -> Result<Self, AutomataError> {
        if nba.ap.len() > 64 {
            return Err(AutomataError::TooManyPropositions(nba.ap.len()));
        }
        let k = constraints.len();
        let mut s0 = BitSet::new();
        let mut counters = Vec::new();
        let mut init = nba.initial.clone();
        init.sort_unstable();
        init.dedup();
        for q in init {
            let d: Option<Vec<usize>> = constraints.iter().map(|c| advance(c, q, None)).collect();
            if let Some(d) = d {
                debug_assert_eq!(d.len(), k);
                s0.insert(q);
                counters.extend(d);
            }
        }
        let sets = if s0.is_empty() { Vec::new() } else { vec![(s0, false)] };
        let mut det = Determinizer {
            nba,
            constraints,
            finals: (0..nba.num_states).filter(|&q| nba.accepting[q]).collect(),
            states: Vec::new(),
            index: HashMap::new(),
            priorities: Vec::new(),
            cache: HashMap::new(),
            shift: 0,
        };
        det.intern(DpaState { sets, counters })?;
        Ok(det)
    }

    /// Shifts every priority by one, recognizing the complement.
    pub fn complemented(mut self) -> Self {
        self.shift ^= 1;
        self
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, id: usize) -> &DpaState {
        &self.states[id]
    }

    fn intern(&mut self, s: DpaState) -> Result<usize, AutomataError> {
        if let Some(&id) = self.index.get(&s) {
            return Ok(id);
        }
        debug_assert!(self.remarks_hold(&s), "invariants violated by {s:?}");
        let prio = compute_priority(&s, self.nba.num_states)?;
        let id = self.states.len();
        self.states.push(s.clone());
        self.index.insert(s, id);
        self.priorities.push(prio);
        Ok(id)
    }

    /// Every set is contained in `S_0`, every non-empty set owns a state not
    /// in any later set, and counters are defined exactly on `S_0`.
    fn remarks_hold(&self, s: &DpaState) -> bool {
        let empty = BitSet::new();
        let s0 = s.sets.first().map_or(&empty, |(x, _)| x);
        let subset = s.sets.iter().all(|(x, _)| x.is_subset(s0));
        let private = s.sets.iter().enumerate().all(|(i, (x, _))| {
            let mut later = BitSet::new();
            for (y, _) in &s.sets[i + 1..] {
                later.union_with(y);
            }
            x.is_empty() || !x.is_subset(&later)
        });
        let counters = s.counters.len() == s0.len() * self.constraints.len();
        subset && private && counters && s.sets.len() <= self.nba.num_states + 1
    }

    fn successor(&self, st: &DpaState, a: Letter) -> Result<DpaState, AutomataError> {
        let k = self.constraints.len();
        let trans = &self.nba.trans;

        // unique predecessor in S_0 of every q ∈ Δ(S_0, a)
        let mut pred: BTreeMap<usize, usize> = BTreeMap::new();
        if let Some(s0) = st.s0() {
            for (rank, p) in s0.iter().enumerate() {
                for &(b, q) in &trans[p] {
                    if b == a {
                        if let Some(&other) = pred.get(&q) {
                            if other != rank {
                                return Err(AutomataError::Confluent { state: q });
                            }
                        }
                        pred.insert(q, rank);
                    }
                }
            }
        }
        let mut t = BitSet::new();
        let mut counters = Vec::new();
        for (&q, &rank) in &pred {
            let d: Option<Vec<usize>> = self
                .constraints
                .iter()
                .enumerate()
                .map(|(j, c)| advance(c, q, Some(st.counters[rank * k + j])))
                .collect();
            if let Some(d) = d {
                t.insert(q);
                counters.extend(d);
            }
        }

        let mut list: Vec<BitSet> = st
            .sets
            .iter()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, _)| {
                let mut next = post(trans, s.iter(), a);
                next.intersect_with(&t);
                next
            })
            .collect();
        let mut fresh = list.first().cloned().unwrap_or_default();
        fresh.intersect_with(&self.finals);
        list.push(fresh);

        let mut marks = vec![false; list.len()];
        for i in 0..list.len() {
            if list[i].is_empty() {
                continue;
            }
            let mut later = BitSet::new();
            for s in &list[i + 1..] {
                later.union_with(s);
            }
            let mut outside = list[i].clone();
            outside.difference_with(&self.finals);
            if outside.is_subset(&later) {
                marks[i] = true;
                let (head, tail) = list.split_at_mut(i + 1);
                for s in tail {
                    s.difference_with(&head[i]);
                }
            }
        }
        let mut sets: Vec<(BitSet, bool)> = list.into_iter().zip(marks).collect();
        while sets.last().is_some_and(|(s, m)| s.is_empty() && !m) {
            sets.pop();
        }
        if sets.first().is_none_or(|(s, _)| s.is_empty()) {
            // S_0 empty: every other set is empty too
            counters.clear();
        }
        Ok(DpaState { sets, counters })
    }
}

impl DeterministicParity for Determinizer<'_> {
    fn ap(&self) -> &[String] {
        &self.nba.ap
    }

    fn initial(&self) -> usize {
        0
    }

    fn step(&mut self, state: usize, letter: Letter) -> Result<usize, AutomataError> {
        if let Some(&t) = self.cache.get(&(state, letter)) {
            return Ok(t);
        }
        let next = self.successor(&self.states[state], letter)?;
        let id = self.intern(next)?;
        self.cache.insert((state, letter), id);
        Ok(id)
    }

    fn priority(&self, state: usize) -> usize {
        self.priorities[state] + self.shift
    }
}

/// Explicit deterministic parity automaton (reachable part, total over all
/// letters of `ap`).
#[derive(Clone, Debug)]
pub struct Dpa {
    pub ap: Vec<String>,
    pub states: Vec<DpaState>,
    pub initial: usize,
    /// `delta[s][letter]`
    pub delta: Vec<Vec<usize>>,
    pub priority: Vec<usize>,
}

impl Dpa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    /// Number of distinct priorities in use.
    pub fn priority_count(&self) -> usize {
        let mut ps = self.priority.clone();
        ps.sort_unstable();
        ps.dedup();
        ps.len()
    }
}

impl DeterministicParity for Dpa {
    fn ap(&self) -> &[String] {
        &self.ap
    }

    fn initial(&self) -> usize {
        self.initial
    }

    fn step(&mut self, state: usize, letter: Letter) -> Result<usize, AutomataError> {
        Ok(self.delta[state][letter as usize])
    }

    fn priority(&self, state: usize) -> usize {
        self.priority[state]
    }
}

/// Builds the full reachable parity automaton over all `2^|ap|` letters.
pub fn determinize_with_counters(a: &Nba, constraints: &[Constraint]) -> Result<Dpa, AutomataError> {
    if a.ap.len() > 20 {
        return Err(AutomataError::TooManyPropositions(a.ap.len()));
    }
    let letters = 1u64 << a.ap.len();
    let mut det = Determinizer::new(a, constraints)?;
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([det.initial()]);
    let mut seen = vec![true];
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(letters as usize);
        for l in 0..letters {
            let t = det.step(s, l)?;
            if t >= seen.len() {
                seen.resize(t + 1, false);
            }
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
            row.push(t);
        }
        if delta.len() <= s {
            delta.resize(s + 1, Vec::new());
        }
        delta[s] = row;
    }
    let priority = (0..det.num_states()).map(|s| det.priority(s)).collect();
    Ok(Dpa {
        ap: a.ap.clone(),
        states: det.states,
        initial: 0,
        delta,
        priority,
    })
}

/// Same structure, every priority incremented.
pub fn complement_dpa(d: &Dpa) -> Dpa {
    Dpa {
        priority: d.priority.iter().map(|p| p + 1).collect(),
        ..d.clone()
    }
}

/// Runs a deterministic parity automaton on `u·v^ω` until a
/// (state, cycle position) pair repeats; accepts iff the least priority on
/// the loop is even.
pub fn parity_accepts_lasso<D: DeterministicParity>(
    d: &mut D,
    w: &LassoWord,
) -> Result<bool, AutomataError> {
    let u = w.prefix.len();
    let v = w.cycle.len();
    let letters: Vec<Letter> = (0..u + v).map(|i| letter_of(d.ap(), w.letter(i))).collect();
    let mut state = d.initial();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut trail = Vec::new();
    let mut t = 0;
    loop {
        if t >= u {
            let key = (state, (t - u) % v);
            if let Some(&start) = seen.get(&key) {
                let min = trail[start..].iter().map(|&s| d.priority(s)).min();
                return Ok(min.expect("loop is non-empty") % 2 == 0);
            }
            seen.insert(key, trail.len());
        }
        trail.push(state);
        state = d.step(state, letters[w.normalize(t)])?;
        t += 1;
    }
}

pub fn dpa_accepts_lasso(d: &Dpa, w: &LassoWord) -> bool {
    parity_accepts_lasso(&mut d.clone(), w).expect("explicit automata are total")
}
