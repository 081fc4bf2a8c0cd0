//! Labelled place/transition nets and their interleaving LTSCs.
//!
//! Net JSON:
//!
//! ```json
//! {"places": ["idle", "paid"], "initial": {"idle": 1},
//!  "transitions": [
//!    {"name": "t_c", "label": "c", "pre": {"idle": 1}, "post": {"paid": 1}},
//!    {"name": "t_p", "label": "p", "pre": {"paid": 1}, "post": {"idle": 1}}]}
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lts::{ActionLabel, Concurrency, LtsError, Ltsc, ResourceInterner, StateId, Transition};

/// Finite multiset; zero multiplicities are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T: Ord>(BTreeMap<T, u32>);

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset(BTreeMap::new())
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (T, u32)>) -> Self {
        let mut m = Self::new();
        for (x, k) in counts {
            m.insert(x, k);
        }
        m
    }

    pub fn insert(&mut self, x: T, k: u32) {
        if k > 0 {
            *self.0.entry(x).or_insert(0) += k;
        }
    }

    pub fn count(&self, x: &T) -> u32 {
        self.0.get(x).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of elements, with multiplicity.
    pub fn size(&self) -> u64 {
        self.0.values().map(|&k| u64::from(k)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u32)> {
        self.0.iter().map(|(x, &k)| (x, k))
    }

    /// Elements with nonzero multiplicity.
    pub fn support(&self) -> BTreeSet<T> {
        self.0.keys().cloned().collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, k) in other.iter() {
            out.insert(x.clone(), k);
        }
        out
    }

    /// `(A − B)(x) = A(x) ∸ B(x)`.
    pub fn monus(&self, other: &Self) -> Self {
        Multiset(
            self.0
                .iter()
                .filter_map(|(x, &k)| {
                    let left = k.saturating_sub(other.count(x));
                    (left > 0).then(|| (x.clone(), left))
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: u32) -> Self {
        Multiset::from_counts(self.iter().map(|(x, n)| (x.clone(), n * k)))
    }

    /// Pointwise `≤`.
    pub fn le(&self, other: &Self) -> bool {
        self.iter().all(|(x, k)| k <= other.count(x))
    }
}

impl<T: Ord + fmt::Display> fmt::Display for Multiset<T> {
    /// Lists elements with repetition: `{p,p,q}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (x, &k) in &self.0 {
            for _ in 0..k {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{x}")?;
            }
        }
        f.write_str("}")
    }
}

pub type Marking = Multiset<String>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PetriError {
    #[error("malformed net: {0}")]
    Malformed(String),
    #[error("unknown place {0:?}")]
    UnknownPlace(String),
    #[error("unknown transition {0:?}")]
    UnknownTransition(String),
    #[error("step {0} is not enabled")]
    NotEnabled(String),
    #[error("state space exceeds {0} markings")]
    StateSpaceExceeded(usize),
    #[error("not a structural conflict net: {0}")]
    NotStructuralConflictNet(ConflictViolation),
    #[error(transparent)]
    Lts(#[from] LtsError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetTransition {
    pub name: String,
    pub label: ActionLabel,
    pub pre: Marking,
    pub post: Marking,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PetriNet {
    places: Vec<String>,
    transitions: Vec<NetTransition>,
    initial: Marking,
}

impl PetriNet {
    pub fn new(
        places: Vec<String>,
        transitions: Vec<NetTransition>,
        initial: Marking,
    ) -> Result<Self, PetriError> {
        let place_set: BTreeSet<&str> = places.iter().map(String::as_str).collect();
        if place_set.len() != places.len() {
            return Err(PetriError::Malformed("duplicate place name".into()));
        }
        let check = |m: &Marking| {
            m.iter()
                .find(|(p, _)| !place_set.contains(p.as_str()))
                .map_or(Ok(()), |(p, _)| Err(PetriError::UnknownPlace(p.clone())))
        };
        check(&initial)?;
        let mut names = BTreeSet::new();
        for t in &transitions {
            if place_set.contains(t.name.as_str()) || !names.insert(t.name.as_str()) {
                return Err(PetriError::Malformed(format!(
                    "transition name {:?} is not unique",
                    t.name
                )));
            }
            if t.pre.is_empty() {
                return Err(PetriError::Malformed(format!(
                    "transition {:?} has an empty preset",
                    t.name
                )));
            }
            check(&t.pre)?;
            check(&t.post)?;
        }
        Ok(PetriNet {
            places,
            transitions,
            initial,
        })
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[NetTransition] {
        &self.transitions
    }

    pub fn initial(&self) -> &Marking {
        &self.initial
    }

    fn index(&self, name: &str) -> Result<usize, PetriError> {
        self.transitions
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| PetriError::UnknownTransition(name.to_owned()))
    }

    /// Single-transition successor, if `t` is enabled at `m`.
    fn fire(&self, m: &Marking, t: usize) -> Option<Marking> {
        let t = &self.transitions[t];
        t.pre.le(m).then(|| m.monus(&t.pre).sum(&t.post))
    }
}

/// Fires the multiset step `g` (transition names): `M′ = (M − •G) + G•`.
pub fn fire_step(net: &PetriNet, m: &Marking, g: &Multiset<String>) -> Result<Marking, PetriError> {
    if g.is_empty() {
        return Err(PetriError::NotEnabled("{}".into()));
    }
    let mut pre = Marking::new();
    let mut post = Marking::new();
    for (name, k) in g.iter() {
        let t = &net.transitions[net.index(name)?];
        pre = pre.sum(&t.pre.scale(k));
        post = post.sum(&t.post.scale(k));
    }
    if !pre.le(m) {
        return Err(PetriError::NotEnabled(g.to_string()));
    }
    Ok(m.monus(&pre).sum(&post))
}

/// Two transitions sharing a preplace that are enabled together as a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictViolation {
    pub marking: Marking,
    pub t: String,
    pub u: String,
}

impl fmt::Display for ConflictViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {{{},{}}} is enabled at {} but the presets overlap",
            self.t, self.u, self.marking
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictReport {
    pub violations: Vec<ConflictViolation>,
    /// Number of reachable markings examined.
    pub markings: usize,
}

impl ConflictReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn conflicts_at(net: &PetriNet, m: &Marking, out: &mut Vec<ConflictViolation>) {
    let ts = &net.transitions;
    for i in 0..ts.len() {
        for j in i..ts.len() {
            let shared = ts[i].pre.iter().any(|(p, _)| ts[j].pre.count(p) > 0);
            if shared && ts[i].pre.sum(&ts[j].pre).le(m) {
                out.push(ConflictViolation {
                    marking: m.clone(),
                    t: ts[i].name.clone(),
                    u: ts[j].name.clone(),
                });
            }
        }
    }
}

struct Reachability {
    markings: Vec<Marking>,
    /// `(source, net transition, target)` in exploration order.
    edges: Vec<(usize, usize, usize)>,
    violations: Vec<ConflictViolation>,
}

fn reach(net: &PetriNet, max_states: usize) -> Result<Reachability, PetriError> {
    if max_states == 0 {
        return Err(PetriError::StateSpaceExceeded(0));
    }
    let mut index = HashMap::from([(net.initial.clone(), 0)]);
    let mut markings = vec![net.initial.clone()];
    let mut queue = VecDeque::from([0]);
    let mut edges = Vec::new();
    let mut violations = Vec::new();
    while let Some(s) = queue.pop_front() {
        let m = markings[s].clone();
        conflicts_at(net, &m, &mut violations);
        for t in 0..net.transitions.len() {
            let Some(next) = net.fire(&m, t) else {
                continue;
            };
            let target = match index.get(&next) {
                Some(&k) => k,
                None => {
                    if markings.len() == max_states {
                        return Err(PetriError::StateSpaceExceeded(max_states));
                    }
                    index.insert(next.clone(), markings.len());
                    markings.push(next);
                    queue.push_back(markings.len() - 1);
                    markings.len() - 1
                }
            };
            edges.push((s, t, target));
        }
    }
    Ok(Reachability {
        markings,
        edges,
        violations,
    })
}

/// Checks every marking reachable by single-transition firings for an enabled
/// step `{t, u}` (including `t = u`) whose presets overlap.
pub fn validate_structural_conflict(net: &PetriNet, max_states: usize) -> Result<ConflictReport, PetriError> {
    let r = reach(net, max_states)?;
    Ok(ConflictReport {
        violations: r.violations,
        markings: r.markings.len(),
    })
}

/// An explored net. State `i` is `markings[i]`; LTS transition `k` is an
/// occurrence of net transition `net_transition[k]`.
#[derive(Clone, Debug)]
pub struct NetLtsc {
    pub ltsc: Ltsc,
    pub markings: Vec<Marking>,
    pub net_transition: Vec<usize>,
}

/// Reachability graph with `(M,t) ⌣ (M′,u)` iff `•t` and `•u` share no place.
pub fn explore_net(net: &PetriNet, max_states: usize) -> Result<NetLtsc, PetriError> {
    let r = reach(net, max_states)?;
    if let Some(v) = r.violations.into_iter().next() {
        return Err(PetriError::NotStructuralConflictNet(v));
    }
    let mut interner = ResourceInterner::default();
    let presets: Vec<Vec<u32>> = net
        .transitions
        .iter()
        .map(|t| interner.intern(t.pre.iter().map(|(p, _)| p.as_str())))
        .collect();
    let transitions = r
        .edges
        .iter()
        .map(|&(s, t, u)| Transition {
            source: StateId(s),
            target: StateId(u),
            label: net.transitions[t].label.clone(),
        })
        .collect();
    let resources = r.edges.iter().map(|&(_, t, _)| presets[t].clone()).collect();
    let names = r.markings.iter().map(ToString::to_string).collect();
    let ltsc = Ltsc::new(names, StateId(0), transitions, Concurrency::Resources(resources))?;
    Ok(NetLtsc {
        ltsc,
        markings: r.markings,
        net_transition: r.edges.iter().map(|&(_, t, _)| t).collect(),
    })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NetFile {
    pub places: Vec<String>,
    #[serde(default)]
    pub initial: BTreeMap<String, u32>,
    pub transitions: Vec<NetTransitionRecord>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NetTransitionRecord {
    pub name: String,
    pub label: String,
    pub pre: BTreeMap<String, u32>,
    #[serde(default)]
    pub post: BTreeMap<String, u32>,
}

#[derive(Debug, Error)]
pub enum NetLoadError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Net(#[from] PetriError),
}

pub fn net_from_json(text: &str) -> Result<PetriNet, NetLoadError> {
    let file: NetFile = serde_json::from_str(text)?;
    let transitions = file
        .transitions
        .into_iter()
        .map(|t| {
            Ok(NetTransition {
                label: ActionLabel::parse(&t.label)?,
                name: t.name,
                pre: Multiset::from_counts(t.pre),
                post: Multiset::from_counts(t.post),
            })
        })
        .collect::<Result<Vec<_>, PetriError>>()?;
    Ok(PetriNet::new(
        file.places,
        transitions,
        Multiset::from_counts(file.initial),
    )?)
}
