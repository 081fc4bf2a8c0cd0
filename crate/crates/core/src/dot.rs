//! Graphviz output. Visible transitions are drawn as small labelled boxes
//! between their source and target, as in the Kripke structure the logics
//! are interpreted on; τ-transitions are plain edges.

use std::fmt::Write;

use crate::lts::Ltsc;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(ltsc: &Ltsc) -> String {
    let mut out = String::from("digraph lts {\n  rankdir=LR;\n  node [shape=ellipse];\n");
    out.push_str("  init [shape=point];\n");
    for s in ltsc.states() {
        let _ = writeln!(out, "  s{} [label={}];", s.0, quote(ltsc.state_name(s)));
    }
    let _ = writeln!(out, "  init -> s{};", ltsc.initial().0);
    for t in ltsc.transition_ids() {
        let (src, tgt) = (ltsc.source(t).0, ltsc.target(t).0);
        match ltsc.label(t).name() {
            None => {
                let _ = writeln!(out, "  s{src} -> s{tgt} [style=dashed, label=\"τ\"];");
            }
            Some(a) => {
                let _ = writeln!(out, "  t{} [shape=box, height=0.2, label={}];", t.0, quote(a));
                let _ = writeln!(out, "  s{src} -> t{};\n  t{} -> s{tgt};", t.0, t.0);
            }
        }
    }
    out.push_str("}\n");
    out
}
