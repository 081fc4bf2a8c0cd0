//! Search for complete paths accepted by a Büchi automaton.
//!
//! The LTSC is flattened into positions (states and one midpoint per visible
//! transition). The product of that graph with a GBA is explored from the
//! requested start positions. A complete accepted path is either
//!
//! * finite: it reaches a node at a terminal state (a B-deadlock, or any state
//!   under ⊤) from which the automaton can stutter on that state's letter
//!   forever while meeting every acceptance set, or
//! * a lasso whose cycle stays inside one *good* component: a strongly
//!   connected set of product nodes that meets every acceptance set and whose
//!   transitions satisfy the criterion.
//!
//! Good components are found by refining SCCs: under justness, nodes at states
//! with a non-blockable transition nobody in the component interferes with are
//! removed; under strong fairness, nodes at states that B-enable a task the
//! component never takes. Both removals are repeated until stable. Weak
//! fairness and acceptance are monotone and checked on the final components.
//!
//! Justness also depends on the prefix: obligations pending on entry must be
//! discharged inside the cycle. The search therefore runs over pairs of a
//! product node and its obligation set, and a node of a good component counts
//! only if every pending obligation has an interferer in that component.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::criteria::{is_b_deadlock, BlockSet, CompletenessCriterion, ObligationSet};
use crate::graph::{is_nontrivial, tarjan};
use crate::kripke::{Origin, Positions};
use crate::logic::Gba;
use crate::lts::{Lasso, LtsPath, Ltsc, StateId, TransitionId};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Step {
    /// Leaves the source state of the transition: to its midpoint, or
    /// directly to its target for τ.
    Take(TransitionId),
    /// From the midpoint of a visible transition to its target.
    Leave,
}

/// A complete path found by the search, as LTS transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Found {
    Finite(Vec<TransitionId>),
    Lasso {
        prefix: Vec<TransitionId>,
        cycle: Vec<TransitionId>,
    },
}

/// The flattened LTSC under a fixed criterion and block set.
pub(crate) struct Flat<'a> {
    pub ltsc: &'a Ltsc,
    pub cc: &'a CompletenessCriterion,
    pub positions: Positions,
    /// Outgoing edges per position, in transition order.
    pub out: Vec<Vec<(Step, usize)>>,
    /// Positions where a finite path may end.
    pub terminal: Vec<bool>,
    /// Non-blockable outgoing transitions per state.
    non_blocking: Vec<Vec<TransitionId>>,
}

impl<'a> Flat<'a> {
    pub fn new(ltsc: &'a Ltsc, cc: &'a CompletenessCriterion, b: &'a BlockSet) -> Self {
        let positions = Positions::new(ltsc);
        let mut out = vec![Vec::new(); positions.len()];
        for t in ltsc.transition_ids() {
            let src = positions.of_state(ltsc.source(t));
            let tgt = positions.of_state(ltsc.target(t));
            match positions.midpoint(t) {
                Some(mid) => {
                    out[src].push((Step::Take(t), mid));
                    out[mid].push((Step::Leave, tgt));
                }
                None => out[src].push((Step::Take(t), tgt)),
            }
        }
        let top = matches!(cc, CompletenessCriterion::Top);
        let terminal = (0..positions.len())
            .map(|p| match positions.origin(p) {
                Origin::State(s) => top || is_b_deadlock(ltsc, b, s),
                Origin::Transition(_) => false,
            })
            .collect();
        let non_blocking = ltsc
            .states()
            .map(|s| {
                ltsc.outgoing(s)
                    .iter()
                    .copied()
                    .filter(|&t| !b.blocks(ltsc.label(t)))
                    .collect()
            })
            .collect();
        Flat {
            ltsc,
            cc,
            positions,
            out,
            terminal,
            non_blocking,
        }
    }

    pub fn state_at(&self, pos: usize) -> Option<StateId> {
        match self.positions.origin(pos) {
            Origin::State(s) => Some(s),
            Origin::Transition(_) => None,
        }
    }

    fn b_enables(&self, s: StateId, task: &BTreeSet<TransitionId>) -> bool {
        self.non_blocking[s.0].iter().any(|t| task.contains(t))
    }
}

struct Good {
    nodes: Vec<usize>,
    /// `discharge[t]`: some transition of the component interferes with `t`.
    discharge: Vec<bool>,
}

/// Product node, pending obligations and the parent link it was reached by.
type SearchState = (usize, Vec<TransitionId>, Option<(usize, Step)>);

pub(crate) struct Product<'f, 'a> {
    flat: &'f Flat<'a>,
    gba: &'f Gba,
    /// `(position, automaton node)`.
    nodes: Vec<(usize, usize)>,
    adj: Vec<Vec<(Step, usize)>>,
    index: HashMap<(usize, usize), usize>,
    /// Node ends a complete finite path accepted by the automaton.
    finish: Vec<bool>,
    goods: Vec<Good>,
    good_of: Vec<Option<usize>>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub product_states: usize,
    pub explored: usize,
}

impl<'f, 'a> Product<'f, 'a> {
    /// Builds the part of the product reachable from the given start
    /// positions. `labels[p]` is the atom set read at position `p`.
    pub fn build(flat: &'f Flat<'a>, gba: &'f Gba, labels: &[BTreeSet<String>], starts: &[usize]) -> Self {
        let admits: Vec<Vec<bool>> = gba
            .nodes
            .iter()
            .map(|n| labels.iter().map(|l| n.admits(l)).collect())
            .collect();
        let mut p = Product {
            flat,
            gba,
            nodes: Vec::new(),
            adj: Vec::new(),
            index: HashMap::new(),
            finish: Vec::new(),
            goods: Vec::new(),
            good_of: Vec::new(),
        };
        let mut queue = VecDeque::new();
        for &s in starts {
            for &q in &gba.initial {
                if admits[q][s] {
                    p.intern(s, q, &mut queue);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            let (pos, q) = p.nodes[v];
            let mut edges = Vec::new();
            for &(step, pos2) in &flat.out[pos] {
                for &q2 in &gba.nodes[q].successors {
                    if admits[q2][pos2] {
                        edges.push((step, p.intern(pos2, q2, &mut queue)));
                    }
                }
            }
            p.adj[v] = edges;
        }
        p.finish = p.stutter_acceptance(labels, &admits);
        p.find_goods();
        p
    }

    fn intern(&mut self, pos: usize, q: usize, queue: &mut VecDeque<usize>) -> usize {
        if let Some(&v) = self.index.get(&(pos, q)) {
            return v;
        }
        let v = self.nodes.len();
        self.nodes.push((pos, q));
        self.adj.push(Vec::new());
        self.index.insert((pos, q), v);
        queue.push_back(v);
        v
    }

    /// Node ids of the start nodes at `pos`, in automaton order.
    pub fn starts_at(&self, pos: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .gba
            .initial
            .iter()
            .filter_map(|&q| self.index.get(&(pos, q)).copied())
            .collect();
        v.dedup();
        v
    }

    /// For terminal positions: can the automaton, from this node, read the
    /// position's letter forever and accept?
    fn stutter_acceptance(&self, labels: &[BTreeSet<String>], admits: &[Vec<bool>]) -> Vec<bool> {
        let g = self.gba.nodes.len();
        let mut cache: HashMap<&BTreeSet<String>, Vec<bool>> = HashMap::new();
        self.nodes
            .iter()
            .map(|&(pos, q)| {
                if !self.flat.terminal[pos] {
                    return false;
                }
                let ok = cache.entry(&labels[pos]).or_insert_with(|| {
                    let alive: Vec<bool> = (0..g).map(|q| admits[q][pos]).collect();
                    let succ = |q: usize| self.gba.nodes[q].successors.clone();
                    let mut accepting = vec![false; g];
                    for c in tarjan(g, Some(&alive), succ) {
                        if is_nontrivial(&c, |q| self.gba.nodes[q].successors.clone())
                            && self.gba.fair(c.iter().copied())
                        {
                            for &q in &c {
                                accepting[q] = true;
                            }
                        }
                    }
                    // Backward closure within the admitting nodes.
                    let mut changed = true;
                    while changed {
                        changed = false;
                        for q in 0..g {
                            if alive[q]
                                && !accepting[q]
                                && self.gba.nodes[q].successors.iter().any(|&r| alive[r] && accepting[r])
                            {
                                accepting[q] = true;
                                changed = true;
                            }
                        }
                    }
                    accepting
                });
                ok[q]
            })
            .collect()
    }

    fn component_transitions(&self, members: &[bool], nodes: &[usize]) -> BTreeSet<TransitionId> {
        let mut ts = BTreeSet::new();
        for &v in nodes {
            for &(step, w) in &self.adj[v] {
                if let (Step::Take(t), true) = (step, members[w]) {
                    ts.insert(t);
                }
            }
        }
        ts
    }

    fn find_goods(&mut self) {
        let n = self.nodes.len();
        let flat = self.flat;
        let ltsc = flat.ltsc;
        let succ = |v: usize| self.adj[v].iter().map(|e| e.1).collect::<Vec<_>>();
        let mut work: Vec<Vec<usize>> = tarjan(n, None, succ)
            .into_iter()
            .filter(|c| is_nontrivial(c, succ))
            .collect();
        let mut members = vec![false; n];
        let mut finals = Vec::new();
        while let Some(comp) = work.pop() {
            for &v in &comp {
                members[v] = true;
            }
            let ts = self.component_transitions(&members, &comp);
            let bad = |v: usize| -> bool {
                let Some(s) = flat.state_at(self.nodes[v].0) else {
                    return false;
                };
                match flat.cc {
                    CompletenessCriterion::Justness => flat.non_blocking[s.0]
                        .iter()
                        .any(|&t| !ts.iter().any(|&u| ltsc.interferes(t, u))),
                    CompletenessCriterion::StrongFairness(tasks) => tasks
                        .tasks()
                        .iter()
                        .any(|task| flat.b_enables(s, task) && task.is_disjoint(&ts)),
                    _ => false,
                }
            };
            let removed: Vec<usize> = comp.iter().copied().filter(|&v| bad(v)).collect();
            if removed.is_empty() {
                finals.push((comp.clone(), ts));
            } else {
                for &v in &removed {
                    members[v] = false;
                }
                let alive = members.clone();
                let sub = tarjan(n, Some(&alive), succ);
                work.extend(sub.into_iter().filter(|c| is_nontrivial(c, succ)));
            }
            for &v in &comp {
                members[v] = false;
            }
        }
        self.good_of = vec![None; n];
        for (comp, ts) in finals {
            let fair = self.gba.fair(comp.iter().map(|&v| self.nodes[v].1));
            let weak_ok = match flat.cc {
                CompletenessCriterion::WeakFairness(tasks) => tasks.tasks().iter().all(|task| {
                    !task.is_disjoint(&ts)
                        || comp.iter().any(|&v| {
                            flat.state_at(self.nodes[v].0)
                                .is_some_and(|s| !flat.b_enables(s, task))
                        })
                }),
                _ => true,
            };
            if !(fair && weak_ok) {
                continue;
            }
            let discharge = ltsc
                .transition_ids()
                .map(|t| ts.iter().any(|&u| ltsc.interferes(t, u)))
                .collect();
            for &v in &comp {
                self.good_of[v] = Some(self.goods.len());
            }
            self.goods.push(Good {
                nodes: comp,
                discharge,
            });
        }
    }

    /// Breadth-first search from `starts` for the nearest complete accepted
    /// path. With `want_witness` unset only existence is decided.
    pub fn search(&self, starts: &[usize], want_witness: bool) -> (Option<Found>, SearchStats) {
        let justness = matches!(self.flat.cc, CompletenessCriterion::Justness);
        let mut stats = SearchStats {
            product_states: self.nodes.len(),
            explored: 0,
        };
        if self.goods.is_empty() && !self.finish.iter().any(|&f| f) {
            return (None, stats);
        }
        // Search states: (node, obligations), with parent links.
        let mut seen: HashMap<(usize, Vec<TransitionId>), usize> = HashMap::new();
        let mut states: Vec<SearchState> = Vec::new();
        let mut queue = VecDeque::new();
        for &v in starts {
            if seen.insert((v, Vec::new()), states.len()).is_none() {
                states.push((v, Vec::new(), None));
                queue.push_back(states.len() - 1);
            }
        }
        while let Some(i) = queue.pop_front() {
            stats.explored += 1;
            let (v, ref o, _) = states[i];
            let o = o.clone();
            let cycle_target = self.good_of[v].filter(|&g| o.iter().all(|t| self.goods[g].discharge[t.0]));
            if self.finish[v] || cycle_target.is_some() {
                if !want_witness {
                    return (Some(Found::Finite(Vec::new())), stats);
                }
                let path = self.trace(&states, i);
                let found = if self.finish[v] {
                    Found::Finite(takes(&path))
                } else {
                    let entry: ObligationSet = o.iter().copied().collect();
                    let cycle = self.build_cycle(cycle_target.unwrap(), v, &entry);
                    self.to_lasso(&path, v, &cycle)
                };
                return (Some(found), stats);
            }
            let (pos, _) = self.nodes[v];
            for &(step, w) in &self.adj[v] {
                let o2 = match (justness, step) {
                    (true, Step::Take(t)) => {
                        let s = self.flat.state_at(pos).expect("takes leave states");
                        let mut next: Vec<TransitionId> = o
                            .iter()
                            .chain(&self.flat.non_blocking[s.0])
                            .copied()
                            .filter(|&u| self.flat.ltsc.concurrent(u, t))
                            .collect();
                        next.sort_unstable();
                        next.dedup();
                        next
                    }
                    _ => o.clone(),
                };
                let key = (w, o2);
                if !seen.contains_key(&key) {
                    seen.insert(key.clone(), states.len());
                    states.push((w, key.1, Some((i, step))));
                    queue.push_back(states.len() - 1);
                }
            }
        }
        (None, stats)
    }

    /// The product path from a start node to search state `i`.
    fn trace(&self, states: &[SearchState], mut i: usize) -> Vec<(Step, usize)> {
        let mut path = Vec::new();
        while let Some((parent, step)) = states[i].2 {
            path.push((step, states[i].0));
            i = parent;
        }
        path.reverse();
        path
    }

    /// Builds a cycle through `entry_node` inside good component `g` that meets
    /// every acceptance set and satisfies the criterion for the given entry
    /// obligations, by adding detours until nothing is missing.
    fn build_cycle(&self, g: usize, entry_node: usize, entry: &ObligationSet) -> Vec<(Step, usize)> {
        let good = &self.goods[g];
        let inside: Vec<bool> = {
            let mut m = vec![false; self.nodes.len()];
            for &v in &good.nodes {
                m[v] = true;
            }
            m
        };
        let mut path: Vec<(Step, usize)> = Vec::new();
        loop {
            let end = path.last().map_or(entry_node, |e| e.1);
            let closing = self
                .bfs_inside(&inside, end, path.is_empty(), |v, _| v == entry_node)
                .expect("strongly connected");
            let full: Vec<(Step, usize)> = path.iter().chain(&closing).copied().collect();
            match self.missing(&full, entry) {
                None => return full,
                Some(goal) => {
                    let detour = self
                        .bfs_inside(&inside, end, false, |v, step| goal.met_by(self, v, step))
                        .expect("good components contain every goal");
                    path.extend(detour);
                }
            }
        }
    }

    /// Shortest path inside the component from `from` whose last edge (or, if
    /// `nonempty` is unset, possibly `from` itself) satisfies `goal`.
    fn bfs_inside(
        &self,
        inside: &[bool],
        from: usize,
        nonempty: bool,
        goal: impl Fn(usize, Option<Step>) -> bool,
    ) -> Option<Vec<(Step, usize)>> {
        if !nonempty && goal(from, None) {
            return Some(Vec::new());
        }
        let mut parent: HashMap<usize, (usize, Step)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut visited = vec![false; self.nodes.len()];
        visited[from] = true;
        while let Some(v) = queue.pop_front() {
            for &(step, w) in &self.adj[v] {
                if !inside[w] {
                    continue;
                }
                if goal(w, Some(step)) {
                    let mut path = vec![(step, w)];
                    let mut at = v;
                    while at != from {
                        let (p, s) = parent[&at];
                        path.push((s, at));
                        at = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !visited[w] {
                    visited[w] = true;
                    parent.insert(w, (v, step));
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// First unmet requirement of a closed cycle, if any.
    fn missing(&self, cycle: &[(Step, usize)], entry: &ObligationSet) -> Option<Goal> {
        let flat = self.flat;
        let ltsc = flat.ltsc;
        let nodes: Vec<usize> = cycle.iter().map(|e| e.1).collect();
        for (k, set) in self.gba.acceptance.iter().enumerate() {
            if !nodes.iter().any(|&v| set[self.nodes[v].1]) {
                return Some(Goal::Accepting(k));
            }
        }
        let ts = takes(cycle);
        let states: BTreeSet<StateId> = nodes.iter().filter_map(|&v| flat.state_at(self.nodes[v].0)).collect();
        match flat.cc {
            CompletenessCriterion::Justness => entry
                .iter()
                .chain(states.iter().flat_map(|s| &flat.non_blocking[s.0]))
                .find(|&&t| !ts.iter().any(|&u| ltsc.interferes(t, u)))
                .map(|&t| Goal::Interfere(t)),
            CompletenessCriterion::WeakFairness(tasks) => tasks
                .tasks()
                .iter()
                .position(|task| {
                    states.iter().all(|&s| flat.b_enables(s, task)) && !ts.iter().any(|t| task.contains(t))
                })
                .map(Goal::WeakTask),
            CompletenessCriterion::StrongFairness(tasks) => tasks
                .tasks()
                .iter()
                .position(|task| {
                    states.iter().any(|&s| flat.b_enables(s, task)) && !ts.iter().any(|t| task.contains(t))
                })
                .map(Goal::Take),
            _ => None,
        }
    }

    fn to_lasso(&self, prefix: &[(Step, usize)], entry_node: usize, cycle: &[(Step, usize)]) -> Found {
        let at_state = |v: usize| self.flat.state_at(self.nodes[v].0).is_some();
        // Rotate so that the cycle starts at a state position.
        let j = if at_state(entry_node) {
            0
        } else {
            1 + cycle.iter().position(|e| at_state(e.1)).expect("cycles pass through states")
        };
        let mut pre = takes(prefix);
        pre.extend(takes(&cycle[..j]));
        let mut cyc = takes(&cycle[j..]);
        cyc.extend(takes(&cycle[..j]));
        Found::Lasso {
            prefix: pre,
            cycle: cyc,
        }
    }
}

enum Goal {
    Accepting(usize),
    Interfere(TransitionId),
    WeakTask(usize),
    Take(usize),
}

impl Goal {
    fn met_by(&self, p: &Product<'_, '_>, v: usize, step: Option<Step>) -> bool {
        let flat = p.flat;
        let taken = match step {
            Some(Step::Take(t)) => Some(t),
            _ => None,
        };
        match self {
            Goal::Accepting(k) => p.gba.acceptance[*k][p.nodes[v].1],
            Goal::Interfere(t) => taken.is_some_and(|u| flat.ltsc.interferes(*t, u)),
            Goal::WeakTask(i) => {
                let task = &flat.cc.tasks().expect("fairness").tasks()[*i];
                taken.is_some_and(|u| task.contains(&u))
                    || flat.state_at(p.nodes[v].0).is_some_and(|s| !flat.b_enables(s, task))
            }
            Goal::Take(i) => {
                let task = &flat.cc.tasks().expect("fairness").tasks()[*i];
                taken.is_some_and(|u| task.contains(&u))
            }
        }
    }
}

fn takes(path: &[(Step, usize)]) -> Vec<TransitionId> {
    path.iter()
        .filter_map(|e| match e.0 {
            Step::Take(t) => Some(t),
            Step::Leave => None,
        })
        .collect()
}

impl Found {
    pub fn into_witness(self, start: StateId) -> super::Witness {
        match self {
            Found::Finite(steps) => super::Witness::FinitePath(LtsPath { start, steps }),
            Found::Lasso { prefix, cycle } => super::Witness::Lasso(Lasso {
                prefix: LtsPath { start, steps: prefix },
                cycle,
            }),
        }
    }
}
