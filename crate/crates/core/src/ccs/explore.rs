use std::collections::{BTreeSet, HashMap, VecDeque};

use super::ast::{CcsAction, Definitions, Proc};
use super::sos::sos_step;
use super::CcsError;
use crate::lts::{Concurrency, Ltsc, ResourceInterner, StateId, Transition};

/// An explored CCS term together with the per-index syntax it came from.
#[derive(Clone, Debug)]
pub struct CcsLtsc {
    pub ltsc: Ltsc,
    /// Expression of each state.
    pub processes: Vec<Proc>,
    /// Component set of each transition.
    pub components: Vec<BTreeSet<String>>,
    /// CCS action of each transition.
    pub actions: Vec<CcsAction>,
}

/// Breadth-first exploration of `p`. States are numbered in discovery order
/// and transitions in the order their source is expanded, so the result is
/// deterministic. Two transitions are concurrent iff their component sets are
/// disjoint.
pub fn explore_ccs(p: &Proc, defs: &Definitions, max_states: usize) -> Result<CcsLtsc, CcsError> {
    let mut index: HashMap<Proc, StateId> = HashMap::new();
    let mut processes = vec![p.clone()];
    index.insert(p.clone(), StateId(0));
    if max_states == 0 {
        return Err(CcsError::StateSpaceExceeded(max_states));
    }
    let mut queue = VecDeque::from([StateId(0)]);
    let mut transitions = Vec::new();
    let mut components = Vec::new();
    let mut actions = Vec::new();
    while let Some(s) = queue.pop_front() {
        for step in sos_step(&processes[s.0].clone(), defs)? {
            let target = match index.get(&step.target) {
                Some(&t) => t,
                None => {
                    if processes.len() == max_states {
                        return Err(CcsError::StateSpaceExceeded(max_states));
                    }
                    let t = StateId(processes.len());
                    index.insert(step.target.clone(), t);
                    processes.push(step.target.clone());
                    queue.push_back(t);
                    t
                }
            };
            transitions.push(Transition {
                source: s,
                target,
                label: step.action.to_label(),
            });
            actions.push(step.action);
            components.push(step.components);
        }
    }
    let mut interner = ResourceInterner::default();
    let resources = components
        .iter()
        .map(|c| interner.intern(c.iter().map(String::as_str)))
        .collect();
    let names = processes.iter().map(|p| p.to_string()).collect();
    let ltsc = Ltsc::new(names, StateId(0), transitions, Concurrency::Resources(resources))
        .expect("exploration produces consistent indices");
    Ok(CcsLtsc {
        ltsc,
        processes,
        components,
        actions,
    })
}
