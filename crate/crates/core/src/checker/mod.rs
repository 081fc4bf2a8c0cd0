//! Deciding `P ⊨^CC_B φ` for LTL without next and for CTL.

mod engine;
mod oracle;
mod report;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::criteria::{BlockSet, CompletenessCriterion, CriteriaError};
use crate::kripke::dv_translate;
use crate::logic::{ltl_to_gba, CtlFormula, LtlFormula};
use crate::lts::{Lasso, LtsPath, Ltsc, StateId};

use engine::{Flat, Product};
pub use engine::SearchStats;
pub use oracle::{oracle_check, oracle_check_all, OracleResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    TaskSetMismatch(#[from] CriteriaError),
}

/// A complete path violating the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Ends in a B-deadlock state (or anywhere under ⊤).
    FinitePath(LtsPath),
    Lasso(Lasso),
}

impl Witness {
    /// Re-checks the witness from scratch: it is a path of `ltsc` from the
    /// initial state, complete under `(cc, b)`, and violates `φ`.
    pub fn refutes(&self, ltsc: &Ltsc, phi: &LtlFormula, cc: &CompletenessCriterion, b: &BlockSet) -> bool {
        use crate::criteria::{finite_complete, lasso_complete};
        use crate::logic::{eval_ltl_finite, eval_ltl_lasso};
        match self {
            Witness::FinitePath(p) => {
                p.start == ltsc.initial()
                    && p.is_valid(ltsc)
                    && finite_complete(ltsc, cc, b, p)
                    && !eval_ltl_finite(&ltsc.path_word(p), phi)
            }
            Witness::Lasso(l) => {
                let (prefix, cycle) = ltsc.lasso_word(l);
                l.prefix.start == ltsc.initial()
                    && l.is_valid(ltsc)
                    && lasso_complete(ltsc, cc, b, l)
                    && !eval_ltl_lasso(&prefix, &cycle, phi)
            }
        }
    }

    /// Number of transitions (prefix plus cycle).
    pub fn len(&self) -> usize {
        match self {
            Witness::FinitePath(p) => p.len(),
            Witness::Lasso(l) => l.prefix.len() + l.cycle.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Present exactly when an LTL judgement fails.
    pub counterexample: Option<Witness>,
    pub stats: SearchStats,
}

fn validate(ltsc: &Ltsc, cc: &CompletenessCriterion) -> Result<(), CheckError> {
    if let Some(tasks) = cc.tasks() {
        tasks.validate(ltsc)?;
    }
    Ok(())
}

/// Decides whether every complete path from the initial state satisfies `φ`;
/// otherwise returns a shortest violating complete path.
pub fn check_ltl(
    ltsc: &Ltsc,
    phi: &LtlFormula,
    cc: &CompletenessCriterion,
    b: &BlockSet,
) -> Result<Verdict, CheckError> {
    validate(ltsc, cc)?;
    let gba = ltl_to_gba(&LtlFormula::Not(Box::new(phi.clone())));
    let flat = Flat::new(ltsc, cc, b);
    let labels = dv_translate(ltsc).labels;
    let start = flat.positions.of_state(ltsc.initial());
    let product = Product::build(&flat, &gba, &labels, &[start]);
    let (found, stats) = product.search(&product.starts_at(start), true);
    Ok(Verdict {
        holds: found.is_none(),
        counterexample: found.map(|f| f.into_witness(ltsc.initial())),
        stats,
    })
}

/// Path properties over marked positions for [`exists_complete_path_satisfying`].
/// Marks are indexed by position: LTS states first, then transition midpoints
/// (see [`crate::kripke::Positions`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathGoal {
    F(Vec<bool>),
    G(Vec<bool>),
    U(Vec<bool>, Vec<bool>),
}

/// For every position: does some complete path starting there satisfy `goal`?
fn exists_everywhere(flat: &Flat<'_>, goal: &PathGoal) -> Vec<bool> {
    use crate::logic::ltl;
    let n = flat.positions.len();
    let (formula, p, q) = match goal {
        PathGoal::F(p) => (ltl::f(ltl::atom("p")), p.clone(), vec![false; n]),
        PathGoal::G(p) => (ltl::g(ltl::atom("p")), p.clone(), vec![false; n]),
        PathGoal::U(p, q) => (ltl::u(ltl::atom("p"), ltl::atom("q")), p.clone(), q.clone()),
    };
    let labels: Vec<BTreeSet<String>> = (0..n)
        .map(|i| {
            let mut l = BTreeSet::new();
            if p[i] {
                l.insert("p".to_owned());
            }
            if q[i] {
                l.insert("q".to_owned());
            }
            l
        })
        .collect();
    let gba = ltl_to_gba(&formula);
    let all: Vec<usize> = (0..n).collect();
    let product = Product::build(flat, &gba, &labels, &all);
    (0..n)
        .map(|pos| product.search(&product.starts_at(pos), false).0.is_some())
        .collect()
}

/// Does some complete path from `start` satisfy the goal?
pub fn exists_complete_path_satisfying(
    ltsc: &Ltsc,
    start: StateId,
    goal: &PathGoal,
    cc: &CompletenessCriterion,
    b: &BlockSet,
) -> Result<bool, CheckError> {
    validate(ltsc, cc)?;
    let flat = Flat::new(ltsc, cc, b);
    Ok(exists_everywhere(&flat, goal)[flat.positions.of_state(start)])
}

/// Labels every position of the Kripke structure with the truth of `φ`.
pub fn ctl_labelling(
    ltsc: &Ltsc,
    phi: &CtlFormula,
    cc: &CompletenessCriterion,
    b: &BlockSet,
) -> Result<Vec<bool>, CheckError> {
    validate(ltsc, cc)?;
    let flat = Flat::new(ltsc, cc, b);
    let kripke = dv_translate(ltsc);
    Ok(label(&flat, &kripke, phi))
}

fn label(flat: &Flat<'_>, k: &crate::kripke::KripkeStructure, phi: &CtlFormula) -> Vec<bool> {
    use CtlFormula as C;
    let n = k.len();
    let not = |v: Vec<bool>| v.into_iter().map(|x| !x).collect::<Vec<_>>();
    let rec = |f: &CtlFormula| label(flat, k, f);
    match phi {
        C::True => vec![true; n],
        C::False => vec![false; n],
        C::Atom(a) => k.labels.iter().map(|l| l.contains(a)).collect(),
        C::Not(a) => not(rec(a)),
        C::And(a, b) => rec(a).into_iter().zip(rec(b)).map(|(x, y)| x && y).collect(),
        C::Or(a, b) => rec(a).into_iter().zip(rec(b)).map(|(x, y)| x || y).collect(),
        C::Implies(a, b) => rec(a).into_iter().zip(rec(b)).map(|(x, y)| !x || y).collect(),
        C::EX(a) => {
            let v = rec(a);
            (0..n).map(|i| k.successors[i].iter().any(|&j| v[j])).collect()
        }
        C::AX(a) => {
            let v = rec(a);
            (0..n).map(|i| k.successors[i].iter().all(|&j| v[j])).collect()
        }
        C::EF(a) => exists_everywhere(flat, &PathGoal::F(rec(a))),
        C::EG(a) => exists_everywhere(flat, &PathGoal::G(rec(a))),
        C::EU(a, b) => exists_everywhere(flat, &PathGoal::U(rec(a), rec(b))),
        C::AF(a) => not(exists_everywhere(flat, &PathGoal::G(not(rec(a))))),
        C::AG(a) => not(exists_everywhere(flat, &PathGoal::F(not(rec(a))))),
        C::AU(a, b) => {
            let (na, nb) = (not(rec(a)), not(rec(b)));
            let both: Vec<bool> = na.iter().zip(&nb).map(|(x, y)| *x && *y).collect();
            let until = exists_everywhere(flat, &PathGoal::U(nb.clone(), both));
            let never = exists_everywhere(flat, &PathGoal::G(nb));
            until.into_iter().zip(never).map(|(x, y)| !(x || y)).collect()
        }
    }
}

/// CTL judgement at the initial state. CTL verdicts carry no counterexample.
pub fn check_ctl(
    ltsc: &Ltsc,
    phi: &CtlFormula,
    cc: &CompletenessCriterion,
    b: &BlockSet,
) -> Result<Verdict, CheckError> {
    let labels = ctl_labelling(ltsc, phi, cc, b)?;
    Ok(Verdict {
        holds: labels[ltsc.initial().0],
        counterexample: None,
        stats: SearchStats::default(),
    })
}
