//! Completeness criteria: which paths of an LTSC count as complete runs.
//!
//! A finite path is complete when it ends in a B-deadlock state (under ⊤:
//! always). An infinite path is complete under progress always, under
//! justness when every non-blockable transition enabled at some position is
//! eventually interfered with, and under weak/strong fairness when every task
//! that is perpetually/relentlessly B-enabled on a suffix occurs in it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::lts::{ActionLabel, Lasso, LtsPath, Ltsc, StateId, TransitionId, TAU};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("the hidden action tau cannot be blocked")]
    TauBlocked,
    #[error("task {task:?} refers to transition {id}, but the model has {count} transitions")]
    TaskSetMismatch { task: String, id: usize, count: usize },
    #[error("duplicate task name {0:?}")]
    DuplicateTask(String),
    #[error("malformed task file: {0}")]
    Malformed(String),
    #[error("unknown criterion {0:?} (expected top, progress, justness, wf or sf)")]
    UnknownCriterion(String),
}

/// Blockable actions `B`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BlockSet(BTreeSet<String>);

impl BlockSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, CriteriaError> {
        let mut set = BTreeSet::new();
        for n in names {
            let n = n.into();
            if n == TAU {
                return Err(CriteriaError::TauBlocked);
            }
            set.insert(n);
        }
        Ok(BlockSet(set))
    }

    pub fn empty() -> Self {
        BlockSet::default()
    }

    /// Whether transitions with this label are blockable (never true for τ).
    pub fn blocks(&self, label: &ActionLabel) -> bool {
        label.name().is_some_and(|n| self.0.contains(n))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().cloned().collect::<Vec<_>>().join(","))
    }
}

/// Named sets of transitions of one particular LTSC.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaskSet {
    names: Vec<String>,
    tasks: Vec<BTreeSet<TransitionId>>,
}

#[derive(Deserialize)]
struct TaskFile {
    tasks: BTreeMap<String, TaskSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TaskSpec {
    Ids(Vec<usize>),
    ByLabel { by_label: String },
}

impl TaskSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, task: BTreeSet<TransitionId>) -> Result<(), CriteriaError> {
        let name = name.into();
        if self.names.contains(&name) {
            return Err(CriteriaError::DuplicateTask(name));
        }
        self.names.push(name);
        self.tasks.push(task);
        Ok(())
    }

    /// One task per visible label, holding every transition with that label.
    pub fn by_label(ltsc: &Ltsc) -> Self {
        let mut out = TaskSet::new();
        for label in ltsc.visible_labels() {
            let task = ltsc
                .transition_ids()
                .filter(|&t| ltsc.label(t).name() == Some(label))
                .collect();
            out.add(label, task).expect("labels are distinct");
        }
        out
    }

    /// A single task containing every transition.
    pub fn all_transitions(ltsc: &Ltsc) -> Self {
        let mut out = TaskSet::new();
        out.add("all", ltsc.transition_ids().collect()).expect("fresh set");
        out
    }

    /// Task file: `{"tasks": {"name": [ids...] | {"by_label": "a"}}}`.
    pub fn from_json(text: &str, ltsc: &Ltsc) -> Result<Self, CriteriaError> {
        let file: TaskFile =
            serde_json::from_str(text).map_err(|e| CriteriaError::Malformed(e.to_string()))?;
        let mut out = TaskSet::new();
        for (name, spec) in file.tasks {
            let task = match spec {
                TaskSpec::Ids(ids) => ids.into_iter().map(TransitionId).collect(),
                TaskSpec::ByLabel { by_label } => ltsc
                    .transition_ids()
                    .filter(|&t| ltsc.label(t).to_string() == by_label)
                    .collect(),
            };
            out.add(name, task)?;
        }
        out.validate(ltsc)?;
        Ok(out)
    }

    pub fn validate(&self, ltsc: &Ltsc) -> Result<(), CriteriaError> {
        for (name, task) in self.iter() {
            if let Some(t) = task.iter().find(|t| t.0 >= ltsc.num_transitions()) {
                return Err(CriteriaError::TaskSetMismatch {
                    task: name.to_owned(),
                    id: t.0,
                    count: ltsc.num_transitions(),
                });
            }
        }
        Ok(())
    }

    /// The union of two task sets; names of `other` that clash get a `'` suffix.
    pub fn union(mut self, other: &TaskSet) -> Self {
        for (name, task) in other.iter() {
            let mut name = name.to_owned();
            while self.names.contains(&name) {
                name.push('\'');
            }
            self.names.push(name);
            self.tasks.push(task.clone());
        }
        self
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<TransitionId>)> {
        self.names.iter().map(String::as_str).zip(&self.tasks)
    }

    pub fn tasks(&self) -> &[BTreeSet<TransitionId>] {
        &self.tasks
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessCriterion {
    Top,
    Progress,
    Justness,
    WeakFairness(TaskSet),
    StrongFairness(TaskSet),
}

impl CompletenessCriterion {
    pub fn name(&self) -> &'static str {
        match self {
            CompletenessCriterion::Top => "top",
            CompletenessCriterion::Progress => "progress",
            CompletenessCriterion::Justness => "justness",
            CompletenessCriterion::WeakFairness(_) => "wf",
            CompletenessCriterion::StrongFairness(_) => "sf",
        }
    }

    /// Builds a criterion from its CLI name; `tasks` is used by `wf`/`sf` only.
    pub fn from_name(name: &str, tasks: Option<TaskSet>) -> Result<Self, CriteriaError> {
        let need = |tasks: Option<TaskSet>| {
            tasks.ok_or_else(|| CriteriaError::Malformed(format!("criterion {name} needs a task set")))
        };
        Ok(match name {
            "top" => CompletenessCriterion::Top,
            "progress" | "pr" => CompletenessCriterion::Progress,
            "justness" | "j" => CompletenessCriterion::Justness,
            "wf" => CompletenessCriterion::WeakFairness(need(tasks)?),
            "sf" => CompletenessCriterion::StrongFairness(need(tasks)?),
            other => return Err(CriteriaError::UnknownCriterion(other.to_owned())),
        })
    }

    pub fn tasks(&self) -> Option<&TaskSet> {
        match self {
            CompletenessCriterion::WeakFairness(t) | CompletenessCriterion::StrongFairness(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for CompletenessCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pending justness obligations: non-blockable transitions seen enabled and
/// not yet interfered with.
pub type ObligationSet = BTreeSet<TransitionId>;

pub fn is_b_deadlock(ltsc: &Ltsc, b: &BlockSet, s: StateId) -> bool {
    ltsc.outgoing(s).iter().all(|&t| b.blocks(ltsc.label(t)))
}

/// States all of whose outgoing transitions are blockable.
pub fn b_deadlock_states(ltsc: &Ltsc, b: &BlockSet) -> BTreeSet<StateId> {
    ltsc.states().filter(|&s| is_b_deadlock(ltsc, b, s)).collect()
}

/// Non-blockable transitions leaving `s`.
pub fn non_blocking_outgoing<'a>(
    ltsc: &'a Ltsc,
    b: &'a BlockSet,
    s: StateId,
) -> impl Iterator<Item = TransitionId> + 'a {
    ltsc.outgoing(s)
        .iter()
        .copied()
        .filter(move |&t| !b.blocks(ltsc.label(t)))
}

/// `O' = (O ∪ {t : source(t) = s, ℓ(t) ∉ B}) \ {t : t ⌣̸ taken}`.
pub fn obligations_update(
    ltsc: &Ltsc,
    b: &BlockSet,
    o: &ObligationSet,
    at_state: StateId,
    taken: TransitionId,
) -> ObligationSet {
    o.iter()
        .copied()
        .chain(non_blocking_outgoing(ltsc, b, at_state))
        .filter(|&t| ltsc.concurrent(t, taken))
        .collect()
}

/// Whether some state B-enables the task.
fn b_enables(ltsc: &Ltsc, b: &BlockSet, s: StateId, task: &BTreeSet<TransitionId>) -> bool {
    non_blocking_outgoing(ltsc, b, s).any(|t| task.contains(&t))
}

/// Completeness of `ρ · cycle^ω` given the obligations `entry` pending when
/// the cycle is entered.
pub fn cycle_complete(
    ltsc: &Ltsc,
    cc: &CompletenessCriterion,
    b: &BlockSet,
    entry: &ObligationSet,
    cycle_states: &BTreeSet<StateId>,
    cycle_transitions: &BTreeSet<TransitionId>,
) -> bool {
    match cc {
        CompletenessCriterion::Top | CompletenessCriterion::Progress => true,
        CompletenessCriterion::Justness => {
            let discharged = |t: TransitionId| cycle_transitions.iter().any(|&u| ltsc.interferes(t, u));
            entry.iter().all(|&t| discharged(t))
                && cycle_states
                    .iter()
                    .all(|&s| non_blocking_outgoing(ltsc, b, s).all(discharged))
        }
        CompletenessCriterion::WeakFairness(tasks) => tasks.tasks().iter().all(|task| {
            cycle_states.iter().any(|&s| !b_enables(ltsc, b, s, task))
                || !task.is_disjoint(cycle_transitions)
        }),
        CompletenessCriterion::StrongFairness(tasks) => tasks.tasks().iter().all(|task| {
            cycle_states.iter().all(|&s| !b_enables(ltsc, b, s, task))
                || !task.is_disjoint(cycle_transitions)
        }),
    }
}

/// Completeness of a finite path.
pub fn finite_complete(ltsc: &Ltsc, cc: &CompletenessCriterion, b: &BlockSet, path: &LtsPath) -> bool {
    matches!(cc, CompletenessCriterion::Top) || is_b_deadlock(ltsc, b, path.end(ltsc))
}

/// Completeness of a lasso, checked position by position against the
/// definitions rather than through obligation sets.
pub fn lasso_complete(ltsc: &Ltsc, cc: &CompletenessCriterion, b: &BlockSet, lasso: &Lasso) -> bool {
    // One unfolding: positions 0..n where the steps after position i are
    // steps[i..] followed by the whole cycle again.
    let steps: Vec<TransitionId> = lasso.prefix.steps.iter().chain(&lasso.cycle).copied().collect();
    let states: Vec<StateId> = steps.iter().map(|&t| ltsc.source(t)).collect();
    let first_cycle = lasso.prefix.len();
    // Transitions occurring in the suffix from position i.
    let occurs_after = |i: usize| -> BTreeSet<TransitionId> {
        steps[i..].iter().chain(&steps[first_cycle..]).copied().collect()
    };
    match cc {
        CompletenessCriterion::Top | CompletenessCriterion::Progress => true,
        CompletenessCriterion::Justness => (0..steps.len()).all(|i| {
            let later = occurs_after(i);
            non_blocking_outgoing(ltsc, b, states[i])
                .all(|t| later.iter().any(|&u| ltsc.interferes(t, u)))
        }),
        CompletenessCriterion::WeakFairness(tasks) => (0..steps.len()).all(|i| {
            let later = occurs_after(i);
            // States of the suffix from i: the rest of the unfolding plus the cycle.
            let perpetual = |task: &BTreeSet<TransitionId>| {
                states[i..]
                    .iter()
                    .chain(&states[first_cycle..])
                    .all(|&s| b_enables(ltsc, b, s, task))
            };
            tasks
                .tasks()
                .iter()
                .all(|task| !perpetual(task) || !task.is_disjoint(&later))
        }),
        CompletenessCriterion::StrongFairness(tasks) => (0..steps.len()).all(|i| {
            let later = occurs_after(i);
            // Relentless enabledness on an infinite suffix means enabled
            // somewhere on the cycle.
            let relentless = |task: &BTreeSet<TransitionId>| {
                states[first_cycle..].iter().any(|&s| b_enables(ltsc, b, s, task))
            };
            tasks
                .tasks()
                .iter()
                .all(|task| !relentless(task) || !task.is_disjoint(&later))
        }),
    }
}
