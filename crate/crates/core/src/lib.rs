//! Model checking of LTL (without next) and CTL over labelled transition
//! systems with concurrency, under a completeness criterion `CC` and a set of
//! blockable actions `B`.
//!
//! Models come from CCS terms ([`ccs`]), Petri nets ([`petri`]) or explicit
//! JSON ([`json`]); [`model`] picks one by file type. [`checker`] decides
//! judgements and produces counterexamples, and its `oracle_check` re-decides
//! them by bounded path enumeration. [`batch`] runs many judgements, in
//! parallel with the `parallel` feature.

pub mod batch;
pub mod ccs;
pub mod checker;
pub mod criteria;
pub mod dot;
pub mod graph;
pub mod json;
pub mod kripke;
pub mod logic;
pub mod model;
pub mod lts;
pub mod petri;
