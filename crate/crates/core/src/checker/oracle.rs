//! Brute-force judgement by enumerating bounded paths and lassos.

use crate::criteria::{finite_complete, lasso_complete, BlockSet, CompletenessCriterion};
use std::collections::BTreeSet;

use crate::logic::eval::{eval_finite_refs, eval_lasso_refs};
use crate::logic::LtlFormula;
use crate::lts::{enumerate_lassos, Ltsc, Run, TransitionId};

use super::Witness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// No violating complete run within the bounds.
    pub holds_within_bound: bool,
    pub witness: Option<Witness>,
    /// Runs examined (complete or not).
    pub runs: usize,
}

/// Enumerates every finite path of length `<= prefix_bound` and every lasso
/// with such a prefix and a cycle of length `1..=cycle_bound`, keeps the
/// complete ones and evaluates `φ` on them directly. Reports the first
/// violation in enumeration order.
pub fn oracle_check(
    ltsc: &Ltsc,
    phi: &LtlFormula,
    cc: &CompletenessCriterion,
    b: &BlockSet,
    prefix_bound: usize,
    cycle_bound: usize,
) -> OracleResult {
    oracle_check_all(ltsc, phi, std::slice::from_ref(cc), b, prefix_bound, cycle_bound)
        .pop()
        .expect("one criterion")
}

/// [`oracle_check`] for several criteria sharing one enumeration.
pub fn oracle_check_all(
    ltsc: &Ltsc,
    phi: &LtlFormula,
    ccs: &[CompletenessCriterion],
    b: &BlockSet,
    prefix_bound: usize,
    cycle_bound: usize,
) -> Vec<OracleResult> {
    let mut out: Vec<OracleResult> = ccs
        .iter()
        .map(|_| OracleResult {
            holds_within_bound: true,
            witness: None,
            runs: 0,
        })
        .collect();
    let mut open = ccs.len();
    let mut runs = 0;
    // Same words as `Ltsc::path_word` / `lasso_word`, without rebuilding the sets.
    let empty = BTreeSet::new();
    let letters: Vec<Option<BTreeSet<String>>> = ltsc
        .transition_ids()
        .map(|t| ltsc.label(t).name().map(|a| BTreeSet::from([a.to_owned()])))
        .collect();
    let mut word: Vec<&BTreeSet<String>> = Vec::new();
    for run in enumerate_lassos(ltsc, prefix_bound, cycle_bound) {
        if open == 0 {
            break;
        }
        // `ρ·t·(c·t)^ω` is also enumerated as `ρ·(t·c)^ω`.
        if let Run::Lasso(l) = &run {
            if l.prefix.steps.last().is_some_and(|t| l.cycle.last() == Some(t)) {
                continue;
            }
        }
        runs += 1;
        // The formula is cheaper to evaluate than completeness.
        word.clear();
        let violates = match &run {
            Run::Finite(path) => {
                word.push(&empty);
                extend_word(&mut word, &letters, &empty, &path.steps, false);
                !eval_finite_refs(&word, phi)
            }
            Run::Lasso(lasso) => {
                extend_word(&mut word, &letters, &empty, &lasso.prefix.steps, true);
                let loop_start = word.len();
                extend_word(&mut word, &letters, &empty, &lasso.cycle, true);
                !eval_lasso_refs(&word, loop_start, phi)
            }
        };
        if !violates {
            continue;
        }
        for (cc, res) in ccs.iter().zip(&mut out) {
            if !res.holds_within_bound {
                continue;
            }
            let complete = match &run {
                Run::Finite(path) => finite_complete(ltsc, cc, b, path),
                Run::Lasso(lasso) => lasso_complete(ltsc, cc, b, lasso),
            };
            if complete {
                res.holds_within_bound = false;
                res.runs = runs;
                res.witness = Some(match &run {
                    Run::Finite(p) => Witness::FinitePath(p.clone()),
                    Run::Lasso(l) => Witness::Lasso(l.clone()),
                });
                open -= 1;
            }
        }
    }
    for res in &mut out {
        if res.holds_within_bound {
            res.runs = runs;
        }
    }
    out
}

/// Appends the positions of `steps`. With `state_first` each step contributes
/// its source state then its midpoint, otherwise its midpoint then its target.
fn extend_word<'a>(
    word: &mut Vec<&'a BTreeSet<String>>,
    letters: &'a [Option<BTreeSet<String>>],
    empty: &'a BTreeSet<String>,
    steps: &[TransitionId],
    state_first: bool,
) {
    for &t in steps {
        if !state_first {
            word.extend(&letters[t.0]);
        }
        word.push(empty);
        if state_first {
            word.extend(&letters[t.0]);
        }
    }
}
