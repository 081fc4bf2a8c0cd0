//! The explicit-LTS JSON format.
//!
//! ```json
//! {"states": ["s0", "s1"], "initial": "s0",
//!  "transitions": [{"id": 0, "from": "s0", "to": "s1", "label": "a"}],
//!  "concurrency": [[0, 1]]}
//! ```
//!
//! Transition ids must be `0..n`, each used once; the transition with id `i`
//! becomes transition `i` of the loaded system. Concurrency pairs are
//! unordered; a reflexive pair is rejected.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lts::{ActionLabel, Concurrency, LtsError, Ltsc, StateId, Transition, TransitionId};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lts(#[from] LtsError),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LtsFile {
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<TransitionRecord>,
    #[serde(default)]
    pub concurrency: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TransitionRecord {
    pub id: usize,
    pub from: String,
    pub to: String,
    pub label: String,
}

impl LtsFile {
    pub fn from_ltsc(ltsc: &Ltsc) -> Self {
        LtsFile {
            states: ltsc.state_names().to_vec(),
            initial: ltsc.state_name(ltsc.initial()).to_owned(),
            transitions: ltsc
                .transition_ids()
                .map(|t| TransitionRecord {
                    id: t.0,
                    from: ltsc.state_name(ltsc.source(t)).to_owned(),
                    to: ltsc.state_name(ltsc.target(t)).to_owned(),
                    label: ltsc.label(t).to_string(),
                })
                .collect(),
            concurrency: ltsc
                .concurrency_pairs()
                .into_iter()
                .map(|(a, b)| [a.0, b.0])
                .collect(),
        }
    }

    pub fn into_ltsc(self) -> Result<Ltsc, LtsError> {
        let mut index = HashMap::new();
        for (i, name) in self.states.iter().enumerate() {
            if index.insert(name.clone(), StateId(i)).is_some() {
                return Err(LtsError::DuplicateState(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| LtsError::UnknownState(name.to_owned()))
        };
        let n = self.transitions.len();
        let mut slots: Vec<Option<Transition>> = vec![None; n];
        for rec in &self.transitions {
            let slot = slots
                .get_mut(rec.id)
                .filter(|s| s.is_none())
                .ok_or(LtsError::BadTransitionIds(n))?;
            *slot = Some(Transition {
                source: lookup(&rec.from)?,
                target: lookup(&rec.to)?,
                label: ActionLabel::parse(&rec.label)?,
            });
        }
        let transitions: Vec<Transition> = slots.into_iter().map(Option::unwrap).collect();
        for &[a, b] in &self.concurrency {
            if a == b {
                return Err(LtsError::ReflexiveConcurrency(a));
            }
        }
        let concurrency = Concurrency::from_pairs(
            self.concurrency
                .iter()
                .map(|&[a, b]| (TransitionId(a), TransitionId(b))),
        );
        Ltsc::new(self.states, lookup(&self.initial)?, transitions, concurrency)
    }
}

pub fn ltsc_from_json(text: &str) -> Result<Ltsc, LoadError> {
    let file: LtsFile = serde_json::from_str(text)?;
    Ok(file.into_ltsc()?)
}

pub fn ltsc_to_json(ltsc: &Ltsc) -> String {
    serde_json::to_string_pretty(&LtsFile::from_ltsc(ltsc)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const BEER_F: &str = r#"{
        "states": ["s0", "s1"], "initial": "s0",
        "transitions": [
            {"id": 0, "from": "s0", "to": "s0", "label": "A"},
            {"id": 2, "from": "s0", "to": "s1", "label": "B"},
            {"id": 1, "from": "s0", "to": "s0", "label": "C"},
            {"id": 3, "from": "s1", "to": "s1", "label": "tau"}
        ],
        "concurrency": [[2, 0], [1, 2]]
    }"#;

    #[test]
    fn load_orders_by_id_and_symmetrizes() {
        let l = ltsc_from_json(BEER_F).unwrap();
        assert_eq!(l.label(TransitionId(2)).to_string(), "B");
        assert!(l.label(TransitionId(3)).is_tau());
        assert!(l.concurrent(TransitionId(0), TransitionId(2)));
        assert!(l.concurrent(TransitionId(2), TransitionId(0)));
        assert!(!l.concurrent(TransitionId(0), TransitionId(1)));
    }

    #[test]
    fn reflexive_pair_is_a_load_error() {
        let text = BEER_F.replace("[1, 2]", "[1, 1]");
        assert!(matches!(
            ltsc_from_json(&text),
            Err(LoadError::Lts(LtsError::ReflexiveConcurrency(1)))
        ));
    }

    #[test]
    fn bad_ids_and_names() {
        let text = BEER_F.replace("\"id\": 3", "\"id\": 7");
        assert!(matches!(
            ltsc_from_json(&text),
            Err(LoadError::Lts(LtsError::BadTransitionIds(4)))
        ));
        let text = BEER_F.replace("\"to\": \"s1\"", "\"to\": \"nowhere\"");
        assert!(matches!(
            ltsc_from_json(&text),
            Err(LoadError::Lts(LtsError::UnknownState(_)))
        ));
    }

    #[test]
    fn round_trip() {
        let l = ltsc_from_json(BEER_F).unwrap();
        let again = ltsc_from_json(&ltsc_to_json(&l)).unwrap();
        assert_eq!(again.transitions(), l.transitions());
        assert_eq!(again.concurrency_pairs(), l.concurrency_pairs());
        assert_eq!(again.initial(), l.initial());
    }
}
