//! Labelled transition systems with a symmetric concurrency relation (LTSCs),
//! finite paths, lassos and the bounded LTSC axiom check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransitionId(pub usize);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for TransitionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// Name reserved for the hidden action in every text format.
pub const TAU: &str = "tau";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionLabel {
    Tau,
    Visible(String),
}

impl ActionLabel {
    pub fn visible(name: impl Into<String>) -> Result<Self, LtsError> {
        let name = name.into();
        if name.is_empty() || name == TAU {
            return Err(LtsError::BadLabel(name));
        }
        Ok(ActionLabel::Visible(name))
    }

    /// Reads a label as it appears in files: `tau` is the hidden action.
    pub fn parse(text: &str) -> Result<Self, LtsError> {
        if text == TAU {
            Ok(ActionLabel::Tau)
        } else {
            ActionLabel::visible(text)
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            ActionLabel::Tau => None,
            ActionLabel::Visible(n) => Some(n),
        }
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, ActionLabel::Tau)
    }
}

impl fmt::Display for ActionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionLabel::Tau => f.write_str(TAU),
            ActionLabel::Visible(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtsError {
    #[error("invalid action label {0:?}")]
    BadLabel(String),
    #[error("state index {0} out of range")]
    BadState(usize),
    #[error("transition index {0} out of range")]
    BadTransition(usize),
    #[error("unknown state name {0:?}")]
    UnknownState(String),
    #[error("duplicate state name {0:?}")]
    DuplicateState(String),
    #[error("transition ids must be exactly 0..{0} (each once)")]
    BadTransitionIds(usize),
    #[error("transition {0} is declared concurrent with itself")]
    ReflexiveConcurrency(usize),
    #[error("resource table has {got} entries for {expected} transitions")]
    ResourceCount { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub source: StateId,
    pub target: StateId,
    pub label: ActionLabel,
}

/// The concurrency relation `⌣`.
///
/// Frontends describe it by the resources each transition uses (parallel
/// components for CCS, preplaces for nets): two transitions are concurrent iff
/// their resource sets are disjoint. Hand-written systems list pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concurrency {
    /// Unordered pairs, each stored as `(min, max)`.
    Pairs(HashSet<(usize, usize)>),
    /// Sorted interned resource ids per transition.
    Resources(Vec<Vec<u32>>),
}

impl Concurrency {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (TransitionId, TransitionId)>) -> Self {
        Concurrency::Pairs(
            pairs
                .into_iter()
                .map(|(a, b)| (a.0.min(b.0), a.0.max(b.0)))
                .collect(),
        )
    }

    fn holds(&self, t: TransitionId, u: TransitionId) -> bool {
        match self {
            Concurrency::Pairs(pairs) => pairs.contains(&(t.0.min(u.0), t.0.max(u.0))),
            Concurrency::Resources(res) => disjoint(&res[t.0], &res[u.0]),
        }
    }
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Interns resource names into the sorted id lists used by [`Concurrency::Resources`].
#[derive(Default, Debug)]
pub struct ResourceInterner {
    ids: HashMap<String, u32>,
}

impl ResourceInterner {
    pub fn intern<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> Vec<u32> {
        let mut out: Vec<u32> = names
            .into_iter()
            .map(|n| {
                let next = self.ids.len() as u32;
                *self.ids.entry(n.to_owned()).or_insert(next)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A finite labelled transition system with concurrency relation.
///
/// Immutable after construction. States and transitions are dense indices.
#[derive(Clone, Debug)]
pub struct Ltsc {
    state_names: Vec<String>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<TransitionId>>,
    concurrency: Concurrency,
    initial: StateId,
}

impl Ltsc {
    pub fn new(
        state_names: Vec<String>,
        initial: StateId,
        transitions: Vec<Transition>,
        concurrency: Concurrency,
    ) -> Result<Self, LtsError> {
        let n = state_names.len();
        if initial.0 >= n {
            return Err(LtsError::BadState(initial.0));
        }
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            for s in [t.source, t.target] {
                if s.0 >= n {
                    return Err(LtsError::BadState(s.0));
                }
            }
            outgoing[t.source.0].push(TransitionId(i));
        }
        match &concurrency {
            Concurrency::Pairs(pairs) => {
                if let Some(&(_, hi)) = pairs.iter().find(|&&(_, hi)| hi >= transitions.len()) {
                    return Err(LtsError::BadTransition(hi));
                }
            }
            Concurrency::Resources(res) => {
                if res.len() != transitions.len() {
                    return Err(LtsError::ResourceCount {
                        expected: transitions.len(),
                        got: res.len(),
                    });
                }
            }
        }
        Ok(Ltsc {
            state_names,
            transitions,
            outgoing,
            concurrency,
            initial,
        })
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_names.len()).map(StateId)
    }

    pub fn transition_ids(&self) -> impl Iterator<Item = TransitionId> {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name).map(StateId)
    }

    pub fn transition(&self, t: TransitionId) -> &Transition {
        &self.transitions[t.0]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn source(&self, t: TransitionId) -> StateId {
        self.transitions[t.0].source
    }

    pub fn target(&self, t: TransitionId) -> StateId {
        self.transitions[t.0].target
    }

    pub fn label(&self, t: TransitionId) -> &ActionLabel {
        &self.transitions[t.0].label
    }

    pub fn outgoing(&self, s: StateId) -> &[TransitionId] {
        &self.outgoing[s.0]
    }

    pub fn concurrency(&self) -> &Concurrency {
        &self.concurrency
    }

    /// `t ⌣ u`. Symmetric by construction.
    pub fn concurrent(&self, t: TransitionId, u: TransitionId) -> bool {
        self.concurrency.holds(t, u)
    }

    /// `t ⌣̸ u`: `u` interferes with `t`.
    pub fn interferes(&self, t: TransitionId, u: TransitionId) -> bool {
        !self.concurrent(t, u)
    }

    /// All concurrent pairs `(t, u)` with `t <= u`, sorted.
    pub fn concurrency_pairs(&self) -> Vec<(TransitionId, TransitionId)> {
        let mut out: Vec<_> = match &self.concurrency {
            Concurrency::Pairs(pairs) => pairs
                .iter()
                .map(|&(a, b)| (TransitionId(a), TransitionId(b)))
                .collect(),
            Concurrency::Resources(res) => {
                let mut v = Vec::new();
                for a in 0..res.len() {
                    for b in a..res.len() {
                        if disjoint(&res[a], &res[b]) {
                            v.push((TransitionId(a), TransitionId(b)));
                        }
                    }
                }
                v
            }
        };
        out.sort();
        out
    }

    /// Visible action names occurring on some transition.
    pub fn visible_labels(&self) -> BTreeSet<&str> {
        self.transitions
            .iter()
            .filter_map(|t| t.label.name())
            .collect()
    }

    /// Atom-set word of a finite path: state positions carry no atoms, every
    /// visible transition contributes one position labelled with its action.
    pub fn path_word(&self, path: &LtsPath) -> Vec<BTreeSet<String>> {
        let mut word = vec![BTreeSet::new()];
        for &t in &path.steps {
            if let Some(a) = self.label(t).name() {
                word.push(BTreeSet::from([a.to_owned()]));
            }
            word.push(BTreeSet::new());
        }
        word
    }

    /// Prefix and cycle words of the ultimately periodic word of a lasso.
    pub fn lasso_word(&self, lasso: &Lasso) -> (Vec<BTreeSet<String>>, Vec<BTreeSet<String>>) {
        let mut prefix = self.path_word(&lasso.prefix);
        prefix.pop();
        let mut cycle = Vec::new();
        for &t in &lasso.cycle {
            cycle.push(BTreeSet::new());
            if let Some(a) = self.label(t).name() {
                cycle.push(BTreeSet::from([a.to_owned()]));
            }
        }
        (prefix, cycle)
    }
}

/// Incremental construction of hand-written LTSCs with explicit pairs.
#[derive(Default, Debug)]
pub struct LtscBuilder {
    names: Vec<String>,
    transitions: Vec<Transition>,
    pairs: Vec<(TransitionId, TransitionId)>,
}

impl LtscBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        StateId(self.names.len() - 1)
    }

    /// Adds a transition; `label` is read as in files (`tau` is hidden).
    ///
    /// # Panics
    /// On an empty label.
    pub fn transition(&mut self, from: StateId, to: StateId, label: &str) -> TransitionId {
        self.transitions.push(Transition {
            source: from,
            target: to,
            label: ActionLabel::parse(label).expect("valid label"),
        });
        TransitionId(self.transitions.len() - 1)
    }

    pub fn concurrent(&mut self, t: TransitionId, u: TransitionId) -> &mut Self {
        self.pairs.push((t, u));
        self
    }

    pub fn build(self, initial: StateId) -> Result<Ltsc, LtsError> {
        Ltsc::new(
            self.names,
            initial,
            self.transitions,
            Concurrency::from_pairs(self.pairs),
        )
    }
}

/// A finite path ending in a state. The empty path is a single state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LtsPath {
    pub start: StateId,
    pub steps: Vec<TransitionId>,
}

impl LtsPath {
    pub fn empty(start: StateId) -> Self {
        LtsPath {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, ltsc: &Ltsc) -> StateId {
        self.steps.last().map_or(self.start, |&t| ltsc.target(t))
    }

    /// States visited, in order, including start and end.
    pub fn states(&self, ltsc: &Ltsc) -> Vec<StateId> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|&t| ltsc.target(t)))
            .collect()
    }

    pub fn is_valid(&self, ltsc: &Ltsc) -> bool {
        if self.start.0 >= ltsc.num_states() {
            return false;
        }
        let mut at = self.start;
        for &t in &self.steps {
            if t.0 >= ltsc.num_transitions() || ltsc.source(t) != at {
                return false;
            }
            at = ltsc.target(t);
        }
        true
    }
}

/// Finite representation of the infinite path `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: LtsPath,
    pub cycle: Vec<TransitionId>,
}

impl Lasso {
    pub fn is_valid(&self, ltsc: &Ltsc) -> bool {
        if !self.prefix.is_valid(ltsc) || self.cycle.is_empty() {
            return false;
        }
        let entry = self.prefix.end(ltsc);
        let mut at = entry;
        for &t in &self.cycle {
            if t.0 >= ltsc.num_transitions() || ltsc.source(t) != at {
                return false;
            }
            at = ltsc.target(t);
        }
        at == entry
    }

    pub fn cycle_states(&self, ltsc: &Ltsc) -> BTreeSet<StateId> {
        self.cycle.iter().map(|&t| ltsc.source(t)).collect()
    }
}

/// A path produced by [`enumerate_lassos`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Run {
    Finite(LtsPath),
    Lasso(Lasso),
}

/// Iterates over every finite path of length `<= max_prefix` from the initial
/// state and, after each, every lasso with that prefix whose cycle has length
/// `1..=max_cycle`. Cycles that are a repetition of a shorter cycle are skipped,
/// so each infinite path appears once per prefix. Prefixes come in order of
/// increasing length.
pub fn enumerate_lassos(ltsc: &Ltsc, max_prefix: usize, max_cycle: usize) -> LassoIter<'_> {
    LassoIter {
        ltsc,
        max_prefix,
        max_cycle,
        depth: 0,
        prefix: Walk::new(),
        cycle: None,
        incoming: Vec::new(),
        to_home: vec![None; ltsc.num_states()],
    }
}

/// Depth-first walk over the non-empty paths from a state, in pre-order.
#[derive(Clone, Debug, Default)]
struct Walk {
    steps: Vec<TransitionId>,
    /// Next outgoing index to try at each level.
    cursor: Vec<usize>,
    started: bool,
}

impl Walk {
    fn new() -> Self {
        Walk::default()
    }

    /// The next path of length `<= max_len` from `from`. Branches into a
    /// state `s` are skipped when `need(s)` more steps would exceed `max_len`.
    fn next(
        &mut self,
        ltsc: &Ltsc,
        from: StateId,
        max_len: usize,
        need: impl Fn(StateId) -> usize,
    ) -> Option<&[TransitionId]> {
        if !self.started {
            self.started = true;
            self.cursor.push(0);
        }
        loop {
            let level = self.steps.len();
            let here = self.steps.last().map_or(from, |&t| ltsc.target(t));
            let out = ltsc.outgoing(here);
            let i = *self.cursor.last()?;
            if level < max_len && i < out.len() {
                *self.cursor.last_mut().unwrap() += 1;
                if need(ltsc.target(out[i])).saturating_add(level + 1) > max_len {
                    continue;
                }
                self.steps.push(out[i]);
                self.cursor.push(0);
                return Some(&self.steps);
            }
            self.cursor.pop();
            self.steps.pop()?;
        }
    }
}

/// Iterative deepening over prefixes; memory stays linear in the bounds.
pub struct LassoIter<'a> {
    ltsc: &'a Ltsc,
    max_prefix: usize,
    max_cycle: usize,
    depth: usize,
    prefix: Walk,
    /// Cycle walk at the end of the current prefix, once its finite run has
    /// been reported.
    cycle: Option<(LtsPath, Walk)>,
    /// Predecessor states, built on first use.
    incoming: Vec<Vec<StateId>>,
    /// Shortest distance from every state back to a cycle's home state.
    to_home: Vec<Option<Vec<usize>>>,
}

impl LassoIter<'_> {
    fn distances_to(&mut self, home: StateId) {
        if self.to_home[home.0].is_some() {
            return;
        }
        if self.incoming.is_empty() {
            self.incoming = vec![Vec::new(); self.ltsc.num_states()];
            for t in self.ltsc.transition_ids() {
                self.incoming[self.ltsc.target(t).0].push(self.ltsc.source(t));
            }
        }
        let mut dist = vec![usize::MAX; self.ltsc.num_states()];
        dist[home.0] = 0;
        let mut queue = VecDeque::from([home]);
        while let Some(s) = queue.pop_front() {
            for &p in &self.incoming[s.0] {
                if dist[p.0] == usize::MAX {
                    dist[p.0] = dist[s.0] + 1;
                    queue.push_back(p);
                }
            }
        }
        self.to_home[home.0] = Some(dist);
    }

    fn next_prefix(&mut self) -> Option<LtsPath> {
        let start = self.ltsc.initial();
        loop {
            if self.depth == 0 && !self.prefix.started {
                self.prefix.started = true;
                self.prefix.cursor.push(0);
                return Some(LtsPath::empty(start));
            }
            if self.depth > 0 {
                while let Some(steps) = self.prefix.next(self.ltsc, start, self.depth, |_| 0) {
                    if steps.len() == self.depth {
                        return Some(LtsPath {
                            start,
                            steps: steps.to_vec(),
                        });
                    }
                }
            }
            if self.depth == self.max_prefix {
                return None;
            }
            self.depth += 1;
            self.prefix = Walk::new();
        }
    }
}

impl Iterator for LassoIter<'_> {
    type Item = Run;

    fn next(&mut self) -> Option<Run> {
        if let Some((prefix, walk)) = &mut self.cycle {
            let home = prefix.end(self.ltsc);
            let dist = self.to_home[home.0].as_ref().expect("computed with the prefix");
            while let Some(c) = walk.next(self.ltsc, home, self.max_cycle, |s| dist[s.0]) {
                if self.ltsc.target(*c.last().unwrap()) == home && is_primitive(c) {
                    return Some(Run::Lasso(Lasso {
                        prefix: prefix.clone(),
                        cycle: c.to_vec(),
                    }));
                }
            }
            self.cycle = None;
        }
        let prefix = self.next_prefix()?;
        self.distances_to(prefix.end(self.ltsc));
        self.cycle = Some((prefix.clone(), Walk::new()));
        Some(Run::Finite(prefix))
    }
}

fn is_primitive(word: &[TransitionId]) -> bool {
    let n = word.len();
    (1..n)
        .filter(|&d| n.is_multiple_of(d))
        .all(|d| word.chunks(d).any(|c| c != &word[..d]))
}

/// A path `π` from `source(t)` through transitions concurrent with `t` that
/// ends in a state offering no variant of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub transition: TransitionId,
    pub path: Vec<TransitionId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LtscReport {
    /// Transitions `t` with `t ⌣ t`.
    pub irreflexivity: Vec<TransitionId>,
    pub closure: Vec<ClosureViolation>,
}

impl LtscReport {
    pub fn is_ok(&self) -> bool {
        self.irreflexivity.is_empty() && self.closure.is_empty()
    }
}

/// Checks irreflexivity of `⌣` and the closure axiom up to paths of length
/// `depth_bound`: after any path of transitions concurrent with `t` there must
/// be an outgoing `u` with the label of `t` and `t ⌣̸ u`.
pub fn validate_ltsc(ltsc: &Ltsc, depth_bound: usize) -> LtscReport {
    let mut report = LtscReport::default();
    for t in ltsc.transition_ids() {
        if ltsc.concurrent(t, t) {
            report.irreflexivity.push(t);
        }
    }
    for t in ltsc.transition_ids() {
        let mut path = Vec::new();
        closure_from(ltsc, t, ltsc.source(t), depth_bound, &mut path, &mut report.closure);
    }
    report
}

fn closure_from(
    ltsc: &Ltsc,
    t: TransitionId,
    at: StateId,
    depth: usize,
    path: &mut Vec<TransitionId>,
    out: &mut Vec<ClosureViolation>,
) {
    let label = ltsc.label(t);
    let has_variant = ltsc
        .outgoing(at)
        .iter()
        .any(|&u| ltsc.label(u) == label && ltsc.interferes(t, u));
    if !has_variant {
        out.push(ClosureViolation {
            transition: t,
            path: path.clone(),
        });
    }
    if path.len() == depth {
        return;
    }
    for &v in ltsc.outgoing(at) {
        if ltsc.concurrent(t, v) {
            path.push(v);
            closure_from(ltsc, t, ltsc.target(v), depth, path, out);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn vending_machine() -> Ltsc {
        let mut b = LtscBuilder::new();
        let s0 = b.state("VM");
        let s1 = b.state("p.VM");
        b.transition(s0, s1, "c");
        b.transition(s1, s0, "p");
        b.build(s0).unwrap()
    }

    #[test]
    fn tau_is_not_a_visible_name() {
        assert!(ActionLabel::visible("tau").is_err());
        assert!(ActionLabel::visible("").is_err());
        assert_eq!(ActionLabel::parse("tau").unwrap(), ActionLabel::Tau);
        assert_ne!(ActionLabel::parse("a").unwrap(), ActionLabel::Tau);
    }

    #[test]
    fn pairs_are_symmetric() {
        let mut b = LtscBuilder::new();
        let s = b.state("s");
        let t = b.transition(s, s, "a");
        let u = b.transition(s, s, "b");
        b.concurrent(u, t);
        let l = b.build(s).unwrap();
        assert!(l.concurrent(t, u) && l.concurrent(u, t));
        assert!(!l.concurrent(t, t));
    }

    #[test]
    fn vm_lasso_enumeration() {
        let vm = vending_machine();
        let runs: Vec<_> = enumerate_lassos(&vm, 0, 2).collect();
        let lassos: Vec<_> = runs
            .iter()
            .filter_map(|r| match r {
                Run::Lasso(l) => Some(l.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(
            lassos,
            vec![Lasso {
                prefix: LtsPath::empty(StateId(0)),
                cycle: vec![TransitionId(0), TransitionId(1)],
            }]
        );
    }

    #[test]
    fn enumeration_of_a_deadlocked_state() {
        let mut b = LtscBuilder::new();
        let s = b.state("s");
        let l = b.build(s).unwrap();
        let runs: Vec<_> = enumerate_lassos(&l, 2, 2).collect();
        assert_eq!(runs, vec![Run::Finite(LtsPath::empty(s))]);
    }

    #[test]
    fn non_primitive_cycles_are_skipped() {
        let vm = vending_machine();
        let n = enumerate_lassos(&vm, 0, 6)
            .filter(|r| matches!(r, Run::Lasso(_)))
            .count();
        assert_eq!(n, 1);
    }

    #[test]
    fn reflexive_pair_is_reported() {
        let mut b = LtscBuilder::new();
        let s = b.state("s");
        let t = b.transition(s, s, "a");
        b.concurrent(t, t);
        let l = b.build(s).unwrap();
        let r = validate_ltsc(&l, 3);
        assert_eq!(r.irreflexivity, vec![t]);
    }

    #[test]
    fn closure_violation_on_chain() {
        let mut b = LtscBuilder::new();
        let s0 = b.state("s0");
        let s1 = b.state("s1");
        let s2 = b.state("s2");
        let a = b.transition(s0, s1, "a");
        let bt = b.transition(s0, s2, "b");
        b.concurrent(a, bt);
        let l = b.build(s0).unwrap();
        let r = validate_ltsc(&l, 3);
        assert!(r.irreflexivity.is_empty());
        assert!(r.closure.contains(&ClosureViolation {
            transition: a,
            path: vec![bt],
        }));
    }

    #[test]
    fn words_of_paths_and_lassos() {
        let vm = vending_machine();
        let lasso = Lasso {
            prefix: LtsPath::empty(StateId(0)),
            cycle: vec![TransitionId(0), TransitionId(1)],
        };
        assert!(lasso.is_valid(&vm));
        let (prefix, cycle) = vm.lasso_word(&lasso);
        assert!(prefix.is_empty());
        let names: Vec<Vec<&str>> = cycle
            .iter()
            .map(|l| l.iter().map(String::as_str).collect())
            .collect();
        assert_eq!(names, vec![vec![], vec!["c"], vec![], vec!["p"]]);
        let path = LtsPath {
            start: StateId(0),
            steps: vec![TransitionId(0)],
        };
        assert_eq!(vm.path_word(&path).len(), 3);
    }
}
