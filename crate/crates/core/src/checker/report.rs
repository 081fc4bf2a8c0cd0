//! Machine and human renderings of verdicts.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::criteria::{BlockSet, CompletenessCriterion};
use crate::lts::{Ltsc, StateId, TransitionId};

use super::{Verdict, Witness};

fn steps_json(ltsc: &Ltsc, steps: &[TransitionId]) -> Vec<Value> {
    steps
        .iter()
        .map(|&t| {
            json!({
                "state": ltsc.state_name(ltsc.source(t)),
                "action": ltsc.label(t).to_string(),
            })
        })
        .collect()
}

impl Witness {
    /// `{"kind", "prefix", "cycle"}`; a finite path ends with a
    /// `{"state": last, "action": null}` entry.
    pub fn to_json(&self, ltsc: &Ltsc) -> Value {
        match self {
            Witness::FinitePath(p) => {
                let mut prefix = steps_json(ltsc, &p.steps);
                prefix.push(json!({"state": ltsc.state_name(p.end(ltsc)), "action": null}));
                json!({"kind": "finite", "prefix": prefix, "cycle": []})
            }
            Witness::Lasso(l) => json!({
                "kind": "lasso",
                "prefix": steps_json(ltsc, &l.prefix.steps),
                "cycle": steps_json(ltsc, &l.cycle),
            }),
        }
    }

    /// `s0 --a--> s1 --b--> s2`, with the cycle on a second line for lassos.
    pub fn render(&self, ltsc: &Ltsc) -> String {
        fn chain(ltsc: &Ltsc, start: StateId, steps: &[TransitionId]) -> String {
            let mut s = ltsc.state_name(start).to_owned();
            for &t in steps {
                let _ = write!(s, " --{}--> {}", ltsc.label(t), ltsc.state_name(ltsc.target(t)));
            }
            s
        }
        match self {
            Witness::FinitePath(p) => format!("finite: {}", chain(ltsc, p.start, &p.steps)),
            Witness::Lasso(l) => format!(
                "prefix: {}\ncycle:  {}",
                chain(ltsc, l.prefix.start, &l.prefix.steps),
                chain(ltsc, l.prefix.end(ltsc), &l.cycle)
            ),
        }
    }
}

impl Verdict {
    pub fn to_json(&self, ltsc: &Ltsc, cc: &CompletenessCriterion, b: &BlockSet) -> Value {
        json!({
            "verdict": if self.holds { "holds" } else { "fails" },
            "criterion": cc.name(),
            "block": b.names().collect::<Vec<_>>(),
            "counterexample": self.counterexample.as_ref().map(|w| w.to_json(ltsc)),
            "stats": {
                "product_states": self.stats.product_states,
                "explored": self.stats.explored,
            },
        })
    }
}
