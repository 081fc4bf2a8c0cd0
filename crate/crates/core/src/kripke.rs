//! Translation of an LTS into a Kripke structure whose atoms are action names.
//!
//! Every visible transition gets a state of its own halfway between its source
//! and target, labelled with the action; τ-transitions become plain edges.
//! Positions are numbered with the LTS states first, then one position per
//! visible transition in transition order. The checker uses the same numbering.

use std::collections::BTreeSet;

use crate::lts::{Ltsc, StateId, TransitionId};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    State(StateId),
    Transition(TransitionId),
}

/// Position numbering shared by the Kripke structure and the checker.
#[derive(Clone, Debug)]
pub struct Positions {
    origins: Vec<Origin>,
    midpoint: Vec<Option<usize>>,
}

impl Positions {
    pub fn new(ltsc: &Ltsc) -> Self {
        let mut origins: Vec<Origin> = ltsc.states().map(Origin::State).collect();
        let mut midpoint = vec![None; ltsc.num_transitions()];
        for t in ltsc.transition_ids() {
            if !ltsc.label(t).is_tau() {
                midpoint[t.0] = Some(origins.len());
                origins.push(Origin::Transition(t));
            }
        }
        Positions { origins, midpoint }
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    pub fn origin(&self, pos: usize) -> Origin {
        self.origins[pos]
    }

    pub fn of_state(&self, s: StateId) -> usize {
        s.0
    }

    pub fn midpoint(&self, t: TransitionId) -> Option<usize> {
        self.midpoint[t.0]
    }
}

/// Kripke structure without the totality requirement.
#[derive(Clone, Debug)]
pub struct KripkeStructure {
    pub positions: Positions,
    /// Sorted, deduplicated successor lists.
    pub successors: Vec<Vec<usize>>,
    pub labels: Vec<BTreeSet<String>>,
}

impl KripkeStructure {
    pub fn len(&self) -> usize {
        self.successors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successors.is_empty()
    }

    pub fn origin(&self, k: usize) -> Origin {
        self.positions.origin(k)
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors[from].binary_search(&to).is_ok()
    }
}

pub fn dv_translate(ltsc: &Ltsc) -> KripkeStructure {
    let positions = Positions::new(ltsc);
    let mut successors = vec![BTreeSet::new(); positions.len()];
    let mut labels = vec![BTreeSet::new(); positions.len()];
    for t in ltsc.transition_ids() {
        let src = positions.of_state(ltsc.source(t));
        let tgt = positions.of_state(ltsc.target(t));
        match positions.midpoint(t) {
            Some(mid) => {
                successors[src].insert(mid);
                successors[mid].insert(tgt);
                labels[mid].insert(ltsc.label(t).to_string());
            }
            None => {
                successors[src].insert(tgt);
            }
        }
    }
    KripkeStructure {
        positions,
        successors: successors.into_iter().map(|s| s.into_iter().collect()).collect(),
        labels,
    }
}
