//! LTL without next and CTL: syntax, parsing, direct evaluation on words and
//! translation of LTL into generalised Büchi automata.

pub(crate) mod eval;
mod gba;
mod parse;

use std::fmt;

pub use eval::{eval_ltl_finite, eval_ltl_lasso, Word};
pub use gba::{ltl_to_gba, Gba, GbaNode};
pub use parse::{parse_ctl, parse_ltl, read_formula_file, FormulaLine, Logic, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LtlFormula {
    True,
    False,
    Atom(String),
    Not(Box<LtlFormula>),
    And(Box<LtlFormula>, Box<LtlFormula>),
    Or(Box<LtlFormula>, Box<LtlFormula>),
    Implies(Box<LtlFormula>, Box<LtlFormula>),
    F(Box<LtlFormula>),
    G(Box<LtlFormula>),
    /// `ψ U φ`, fields in that order.
    U(Box<LtlFormula>, Box<LtlFormula>),
    /// `ψ W φ`, fields in that order.
    W(Box<LtlFormula>, Box<LtlFormula>),
}

pub mod ltl {
    //! Short constructors, handy in tests and generators.
    use super::LtlFormula as L;

    pub fn atom(a: &str) -> L {
        L::Atom(a.to_owned())
    }
    pub fn not(a: L) -> L {
        L::Not(Box::new(a))
    }
    pub fn and(a: L, b: L) -> L {
        L::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: L, b: L) -> L {
        L::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: L, b: L) -> L {
        L::Implies(Box::new(a), Box::new(b))
    }
    pub fn f(a: L) -> L {
        L::F(Box::new(a))
    }
    pub fn g(a: L) -> L {
        L::G(Box::new(a))
    }
    pub fn u(a: L, b: L) -> L {
        L::U(Box::new(a), Box::new(b))
    }
    pub fn w(a: L, b: L) -> L {
        L::W(Box::new(a), Box::new(b))
    }
}

impl LtlFormula {
    /// Operator nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        use LtlFormula::*;
        match self {
            True | False | Atom(_) => 0,
            Not(a) | F(a) | G(a) => 1 + a.depth(),
            And(a, b) | Or(a, b) | Implies(a, b) | U(a, b) | W(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn atoms(&self) -> std::collections::BTreeSet<&str> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut std::collections::BTreeSet<&'a str>) {
        use LtlFormula::*;
        match self {
            True | False => {}
            Atom(a) => {
                out.insert(a);
            }
            Not(a) | F(a) | G(a) => a.collect_atoms(out),
            And(a, b) | Or(a, b) | Implies(a, b) | U(a, b) | W(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Removes `W` and `->`: `ψ W φ = Gψ ∨ (ψ U φ)`, `ψ -> φ = ¬ψ ∨ φ`.
    pub fn desugar(&self) -> LtlFormula {
        use LtlFormula::*;
        let d = |x: &LtlFormula| Box::new(x.desugar());
        match self {
            True | False | Atom(_) => self.clone(),
            Not(a) => Not(d(a)),
            And(a, b) => And(d(a), d(b)),
            Or(a, b) => Or(d(a), d(b)),
            Implies(a, b) => Or(Box::new(Not(d(a))), d(b)),
            F(a) => F(d(a)),
            G(a) => G(d(a)),
            U(a, b) => U(d(a), d(b)),
            W(a, b) => Or(Box::new(G(d(a))), Box::new(U(d(a), d(b)))),
        }
    }

    fn level(&self) -> u8 {
        use LtlFormula::*;
        match self {
            Implies(..) => 0,
            Or(..) => 1,
            And(..) => 2,
            U(..) | W(..) => 3,
            _ => 4,
        }
    }
}

/// Shared printer: parenthesises a subformula whose level is below `min`.
fn paren(f: &mut fmt::Formatter<'_>, level: u8, min: u8, body: impl fmt::Display) -> fmt::Result {
    if level < min {
        write!(f, "({body})")
    } else {
        write!(f, "{body}")
    }
}

impl fmt::Display for LtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LtlFormula::*;
        let sub = |f: &mut fmt::Formatter<'_>, x: &LtlFormula, min: u8| paren(f, x.level(), min, x);
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(a) => f.write_str(a),
            Not(a) => {
                f.write_str("!")?;
                sub(f, a, 4)
            }
            F(a) => {
                f.write_str("F ")?;
                sub(f, a, 4)
            }
            G(a) => {
                f.write_str("G ")?;
                sub(f, a, 4)
            }
            And(a, b) => {
                sub(f, a, 2)?;
                f.write_str(" & ")?;
                sub(f, b, 3)
            }
            Or(a, b) => {
                sub(f, a, 1)?;
                f.write_str(" | ")?;
                sub(f, b, 2)
            }
            Implies(a, b) => {
                sub(f, a, 1)?;
                f.write_str(" -> ")?;
                sub(f, b, 0)
            }
            U(a, b) | W(a, b) => {
                sub(f, a, 4)?;
                f.write_str(if matches!(self, U(..)) { " U " } else { " W " })?;
                sub(f, b, 3)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CtlFormula {
    True,
    False,
    Atom(String),
    Not(Box<CtlFormula>),
    And(Box<CtlFormula>, Box<CtlFormula>),
    Or(Box<CtlFormula>, Box<CtlFormula>),
    Implies(Box<CtlFormula>, Box<CtlFormula>),
    EX(Box<CtlFormula>),
    AX(Box<CtlFormula>),
    EF(Box<CtlFormula>),
    AF(Box<CtlFormula>),
    EG(Box<CtlFormula>),
    AG(Box<CtlFormula>),
    /// `E[ψ U φ]`.
    EU(Box<CtlFormula>, Box<CtlFormula>),
    /// `A[ψ U φ]`.
    AU(Box<CtlFormula>, Box<CtlFormula>),
}

impl CtlFormula {
    fn level(&self) -> u8 {
        use CtlFormula::*;
        match self {
            Implies(..) => 0,
            Or(..) => 1,
            And(..) => 2,
            _ => 4,
        }
    }
}

impl fmt::Display for CtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CtlFormula::*;
        let sub = |f: &mut fmt::Formatter<'_>, x: &CtlFormula, min: u8| paren(f, x.level(), min, x);
        let unary = |f: &mut fmt::Formatter<'_>, op: &str, x: &CtlFormula| {
            f.write_str(op)?;
            sub(f, x, 4)
        };
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(a) => f.write_str(a),
            Not(a) => unary(f, "!", a),
            EX(a) => unary(f, "EX ", a),
            AX(a) => unary(f, "AX ", a),
            EF(a) => unary(f, "EF ", a),
            AF(a) => unary(f, "AF ", a),
            EG(a) => unary(f, "EG ", a),
            AG(a) => unary(f, "AG ", a),
            And(a, b) => {
                sub(f, a, 2)?;
                f.write_str(" & ")?;
                sub(f, b, 3)
            }
            Or(a, b) => {
                sub(f, a, 1)?;
                f.write_str(" | ")?;
                sub(f, b, 2)
            }
            Implies(a, b) => {
                sub(f, a, 1)?;
                f.write_str(" -> ")?;
                sub(f, b, 0)
            }
            EU(a, b) => write!(f, "E[{a} U {b}]"),
            AU(a, b) => write!(f, "A[{a} U {b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::ltl::*;
    use super::*;

    #[test]
    fn desugaring() {
        let (p, q) = (atom("p"), atom("q"));
        assert_eq!(w(p.clone(), q.clone()).desugar(), or(g(p.clone()), u(p.clone(), q.clone())));
        assert_eq!(implies(p.clone(), q.clone()).desugar(), or(not(p.clone()), q.clone()));
        assert_eq!(
            f(w(p.clone(), q.clone())).desugar(),
            f(or(g(p.clone()), u(p, q)))
        );
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "G (c -> F p)",
            "!t1 W r1",
            "(!t1 W r1) & G (t1 -> t1 U (!t1 & !t2) W e)",
            "a U b U c",
            "(a U b) U c",
            "a -> b -> c",
            "(a -> b) -> c",
            "a | b & c",
            "(a | b) & c",
            "F (a U b)",
            "true & !false",
            "'a | tau2",
        ] {
            let f = parse_ltl(text).unwrap();
            assert_eq!(parse_ltl(&f.to_string()).unwrap(), f, "{text} vs {f}");
        }
        for text in ["AG (p -> AF q)", "E[a U b] & A[!a U EX b]", "EG !A", "A & E"] {
            let f = parse_ctl(text).unwrap();
            assert_eq!(parse_ctl(&f.to_string()).unwrap(), f, "{text} vs {f}");
        }
    }

    #[test]
    fn depth() {
        assert_eq!(parse_ltl("G (c -> F p)").unwrap().depth(), 3);
        assert_eq!(atom("p").depth(), 0);
    }
}
