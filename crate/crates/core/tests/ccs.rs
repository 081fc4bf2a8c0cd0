//! CCS semantics on random small terms.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::{defs, term};
use proptest::prelude::*;
use rtl_core::ccs::{explore_ccs, sos_step, CcsAction, Definitions, Proc, Process};
use rtl_core::lts::validate_ltsc;

/// Textbook CCS transitions, without components.
fn plain_steps(p: &Proc, defs: &Definitions) -> BTreeSet<(CcsAction, Proc)> {
    match &**p {
        Process::Sum(s) => s.iter().cloned().collect(),
        Process::Par(l, r) => {
            let (ls, rs) = (plain_steps(l, defs), plain_steps(r, defs));
            let mut out = BTreeSet::new();
            for (a, l2) in &ls {
                out.insert((a.clone(), Process::par(l2.clone(), r.clone())));
                for (b, r2) in &rs {
                    if a.complement().as_ref() == Some(b) {
                        out.insert((CcsAction::Tau, Process::par(l2.clone(), r2.clone())));
                    }
                }
            }
            for (b, r2) in rs {
                out.insert((b, Process::par(l.clone(), r2)));
            }
            out
        }
        Process::Restrict(q, names) => plain_steps(q, defs)
            .into_iter()
            .filter(|(a, _)| a.channel().is_none_or(|c| !names.contains(c)))
            .map(|(a, q2)| (a, Arc::new(Process::Restrict(q2, names.clone()))))
            .collect(),
        Process::Relabel(q, map) => plain_steps(q, defs)
            .into_iter()
            .map(|(a, q2)| (a.relabel(map), Arc::new(Process::Relabel(q2, map.clone()))))
            .collect(),
        Process::Ident(x) => plain_steps(defs.get(x).unwrap(), defs),
    }
}

fn erased(p: &Proc, defs: &Definitions) -> BTreeSet<(CcsAction, Proc)> {
    sos_step(p, defs)
        .unwrap()
        .into_iter()
        .map(|s| (s.action, s.target))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn erasing_components_gives_plain_ccs(p in term()) {
        let defs = defs();
        prop_assert_eq!(erased(&p, &defs), plain_steps(&p, &defs));
    }

    #[test]
    fn relabelling_keeps_components(p in term()) {
        let defs = defs();
        let map = BTreeMap::from([("a".to_owned(), "b".to_owned())]);
        let relabelled = Arc::new(Process::Relabel(p.clone(), map.clone()));
        // Relabelling may merge two derivations into one.
        let before: BTreeSet<_> = sos_step(&p, &defs).unwrap().into_iter().map(|s| (s.action.relabel(&map), s.components)).collect();
        let after: BTreeSet<_> = sos_step(&relabelled, &defs).unwrap().into_iter().map(|s| (s.action, s.components)).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn restriction_keeps_tau(p in term(), name in prop::sample::select(vec!["a", "b"])) {
        let defs = defs();
        let restricted = Arc::new(Process::Restrict(p.clone(), BTreeSet::from([name.to_owned()])));
        let after: BTreeSet<_> = sos_step(&restricted, &defs).unwrap().into_iter().map(|s| (s.action, s.components)).collect();
        for s in sos_step(&p, &defs).unwrap() {
            if s.action == CcsAction::Tau {
                prop_assert!(after.contains(&(CcsAction::Tau, s.components)));
            }
        }
    }

    #[test]
    fn exploration_is_deterministic_and_an_ltsc(p in term()) {
        let defs = defs();
        let Ok(a) = explore_ccs(&p, &defs, 300) else {
            return Ok(());
        };
        let b = explore_ccs(&p, &defs, 300).unwrap();
        prop_assert_eq!(a.ltsc.state_names(), b.ltsc.state_names());
        prop_assert_eq!(a.ltsc.transitions(), b.ltsc.transitions());
        prop_assert_eq!(a.ltsc.concurrency_pairs(), b.ltsc.concurrency_pairs());
        let report = validate_ltsc(&a.ltsc, 3);
        prop_assert!(report.is_ok(), "{:?}", report);
    }
}
