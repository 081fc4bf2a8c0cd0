//! Generators shared by the integration tests.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use proptest::prelude::*;
use rtl_core::ccs::{parse_ccs, CcsAction, Definitions, Proc, Process};

const DEFS: &str = "X = a.X + 'b.0; Y = 'a.Y + tau.b.0;";

/// Definitions for the identifiers `term` may use.
pub fn defs() -> Definitions {
    parse_ccs(DEFS).unwrap().definitions
}

fn action() -> impl Strategy<Value = CcsAction> {
    prop_oneof![
        Just(CcsAction::Name("a".into())),
        Just(CcsAction::CoName("a".into())),
        Just(CcsAction::Name("b".into())),
        Just(CcsAction::CoName("b".into())),
        Just(CcsAction::Tau),
    ]
}

pub fn term() -> impl Strategy<Value = Proc> {
    let leaf = prop_oneof![
        Just(Process::nil()),
        Just(Process::ident("X")),
        Just(Process::ident("Y")),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec((action(), inner.clone()), 1..=3).prop_map(|s| Arc::new(Process::Sum(s))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Process::par(l, r)),
            (inner.clone(), prop::sample::select(vec!["a", "b"]))
                .prop_map(|(p, n)| Arc::new(Process::Restrict(p, BTreeSet::from([n.to_owned()])))),
            (inner, prop::sample::select(vec![("a", "b"), ("b", "a"), ("a", "c")])).prop_map(|(p, (from, to))| {
                Arc::new(Process::Relabel(p, BTreeMap::from([(from.to_owned(), to.to_owned())])))
            }),
        ]
    })
}

