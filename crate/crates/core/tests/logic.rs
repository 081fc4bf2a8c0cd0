//! Evaluator and automaton properties on random formulas and words.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rtl_core::logic::{eval_ltl_finite, eval_ltl_lasso, ltl, ltl_to_gba, parse_ltl, LtlFormula};

fn formula() -> impl Strategy<Value = LtlFormula> {
    let leaf = prop_oneof![
        Just(LtlFormula::True),
        Just(LtlFormula::False),
        Just(ltl::atom("p")),
        Just(ltl::atom("q")),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ltl::not),
            inner.clone().prop_map(ltl::f),
            inner.clone().prop_map(ltl::g),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ltl::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ltl::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ltl::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ltl::u(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| ltl::w(a, b)),
        ]
    })
}

fn word(min: usize, max: usize) -> impl Strategy<Value = Vec<BTreeSet<String>>> {
    prop::collection::vec(prop::sample::subsequence(vec!["p", "q"], 0..=2), min..=max)
        .prop_map(|w| w.into_iter().map(|s| s.into_iter().map(str::to_owned).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn desugaring_preserves_truth(phi in formula(), prefix in word(0, 4), cycle in word(1, 4)) {
        let d = phi.desugar();
        prop_assert_eq!(eval_ltl_lasso(&prefix, &cycle, &phi), eval_ltl_lasso(&prefix, &cycle, &d));
        let mut finite = prefix.clone();
        finite.extend(cycle.iter().cloned());
        prop_assert_eq!(eval_ltl_finite(&finite, &phi), eval_ltl_finite(&finite, &d));
    }

    #[test]
    fn finite_words_equal_their_stuttering_extension(phi in formula(), w in word(1, 6)) {
        let (last, rest) = w.split_last().unwrap();
        prop_assert_eq!(eval_ltl_finite(&w, &phi), eval_ltl_lasso(rest, std::slice::from_ref(last), &phi));
    }

    #[test]
    fn automaton_accepts_exactly_the_models(phi in formula(), prefix in word(0, 3), cycle in word(1, 3)) {
        prop_assert_eq!(ltl_to_gba(&phi).accepts_lasso(&prefix, &cycle), eval_ltl_lasso(&prefix, &cycle, &phi));
    }

    #[test]
    fn printing_round_trips(phi in formula()) {
        prop_assert_eq!(parse_ltl(&phi.to_string()).unwrap(), phi);
    }
}
