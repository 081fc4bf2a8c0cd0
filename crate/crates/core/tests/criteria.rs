//! Completeness criteria on explored and random models.

mod common;

use std::collections::BTreeSet;

use common::{defs, term};
use proptest::prelude::*;
use rtl_core::ccs::explore_ccs;
use rtl_core::criteria::{
    cycle_complete, is_b_deadlock, lasso_complete, BlockSet, CompletenessCriterion, TaskSet,
};
use rtl_core::lts::{enumerate_lassos, Lasso, LtsPath, Ltsc, LtscBuilder, Run, StateId, TransitionId};

/// Justness of a finite path, straight from the definition: whenever a
/// non-blockable transition is enabled, a later step interferes with it.
fn finite_just(l: &Ltsc, b: &BlockSet, p: &LtsPath) -> bool {
    let states: Vec<StateId> = std::iter::once(p.start).chain(p.steps.iter().map(|&t| l.target(t))).collect();
    states.iter().enumerate().all(|(i, &s)| {
        l.outgoing(s)
            .iter()
            .filter(|&&t| !b.blocks(l.label(t)))
            .all(|&t| p.steps[i..].iter().any(|&u| l.interferes(t, u)))
    })
}

/// Fairness of a finite path: no task is enabled at its last state.
fn finite_fair(l: &Ltsc, b: &BlockSet, tasks: &TaskSet, p: &LtsPath) -> bool {
    let end = p.end(l);
    tasks
        .tasks()
        .iter()
        .all(|task| !l.outgoing(end).iter().any(|t| task.contains(t) && !b.blocks(l.label(*t))))
}

fn blocks(l: &Ltsc, mask: u8) -> BlockSet {
    let labels: Vec<String> = l.visible_labels().into_iter().map(str::to_owned).collect();
    BlockSet::new(labels.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a)).unwrap()
}

fn random_ltsc() -> impl Strategy<Value = (Ltsc, Vec<bool>)> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n, prop::sample::select(vec!["a", "b", "tau"])), 1..=6),
                prop::collection::vec(any::<bool>(), 36),
                prop::collection::vec(any::<bool>(), 12),
            )
        })
        .prop_map(|(n, edges, conc, extra)| {
            let mut b = LtscBuilder::new();
            let ids: Vec<_> = (0..n).map(|i| b.state(format!("s{i}"))).collect();
            let ts: Vec<_> = edges.iter().map(|&(f, t, a)| b.transition(ids[f], ids[t], a)).collect();
            let mut k = 0;
            for i in 0..ts.len() {
                for j in i + 1..ts.len() {
                    if conc[k] {
                        b.concurrent(ts[i], ts[j]);
                    }
                    k += 1;
                }
            }
            (b.build(ids[0]).unwrap(), extra)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn paths_into_b_deadlocks_are_complete(p in term(), mask in 0u8..8) {
        let Ok(e) = explore_ccs(&p, &defs(), 200) else {
            return Ok(());
        };
        let l = &e.ltsc;
        let b = blocks(l, mask);
        let tasks = TaskSet::by_label(l).union(&TaskSet::all_transitions(l));
        for run in enumerate_lassos(l, 4, 1) {
            let Run::Finite(path) = run else { continue };
            if !is_b_deadlock(l, &b, path.end(l)) {
                continue;
            }
            prop_assert!(finite_just(l, &b, &path), "{:?} is not just", path);
            prop_assert!(finite_fair(l, &b, &tasks, &path));
        }
    }

    #[test]
    fn justness_of_cycles_is_monotone((l, pick) in random_ltsc(), mask in 0u8..4) {
        let b = blocks(&l, mask);
        let all: Vec<TransitionId> = l.transition_ids().collect();
        let states: BTreeSet<StateId> = l.states().filter(|s| pick[s.0 + 4]).collect();
        let entry: BTreeSet<TransitionId> = all.iter().copied().filter(|t| pick[t.0 % 4]).collect();
        let mut cycle = BTreeSet::new();
        let mut complete = cycle_complete(&l, &CompletenessCriterion::Justness, &b, &entry, &states, &cycle);
        for &t in &all {
            cycle.insert(t);
            let now = cycle_complete(&l, &CompletenessCriterion::Justness, &b, &entry, &states, &cycle);
            prop_assert!(!complete || now, "adding {:?} broke completeness", t);
            complete = now;
        }
    }

    #[test]
    fn lasso_completeness_does_not_depend_on_the_unfolding((l, _) in random_ltsc(), mask in 0u8..4) {
        // `ρ·c^ω` and `ρ·(c·c)^ω` are the same path.
        let b = blocks(&l, mask);
        let tasks = TaskSet::by_label(&l);
        let ccs = [
            CompletenessCriterion::Justness,
            CompletenessCriterion::from_name("wf", Some(tasks.clone())).unwrap(),
            CompletenessCriterion::from_name("sf", Some(tasks)).unwrap(),
        ];
        for run in enumerate_lassos(&l, 2, 3) {
            let Run::Lasso(lasso) = run else { continue };
            let doubled = Lasso { prefix: lasso.prefix.clone(), cycle: [lasso.cycle.clone(), lasso.cycle.clone()].concat() };
            for cc in &ccs {
                prop_assert_eq!(lasso_complete(&l, cc, &b, &lasso), lasso_complete(&l, cc, &b, &doubled), "{} {:?}", cc, lasso);
            }
        }
    }
}
