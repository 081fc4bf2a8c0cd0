//! LTL to generalised Büchi automata by on-the-fly tableau expansion.
//!
//! The formula is put in negation normal form with `R` (release) as the dual
//! of `U`; `R` never leaves this module. Automaton nodes carry the literals
//! that must hold at the position they read; there is one acceptance set per
//! until-subformula.

use std::collections::{BTreeSet, HashMap};

use super::LtlFormula;
use crate::graph::{is_nontrivial, tarjan};

/// Subformula in negation normal form; children are indices into [`Table`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Nnf {
    True,
    False,
    Lit(String, bool),
    And(usize, usize),
    Or(usize, usize),
    U(usize, usize),
    R(usize, usize),
}

/// Hash-consed subformulas.
#[derive(Default)]
struct Table {
    nodes: Vec<Nnf>,
    ids: HashMap<Nnf, usize>,
}

impl Table {
    fn intern(&mut self, f: Nnf) -> usize {
        if let Some(&k) = self.ids.get(&f) {
            return k;
        }
        self.nodes.push(f.clone());
        self.ids.insert(f, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn nnf(&mut self, phi: &LtlFormula, positive: bool) -> usize {
        use LtlFormula as L;
        let f = match (phi, positive) {
            (L::True, true) | (L::False, false) => Nnf::True,
            (L::True, false) | (L::False, true) => Nnf::False,
            (L::Atom(a), p) => Nnf::Lit(a.clone(), p),
            (L::Not(a), p) => return self.nnf(a, !p),
            (L::And(a, c), true) | (L::Or(a, c), false) => Nnf::And(self.nnf(a, positive), self.nnf(c, positive)),
            (L::Or(a, c), true) | (L::And(a, c), false) => Nnf::Or(self.nnf(a, positive), self.nnf(c, positive)),
            (L::Implies(a, c), true) => Nnf::Or(self.nnf(a, false), self.nnf(c, true)),
            (L::Implies(a, c), false) => Nnf::And(self.nnf(a, true), self.nnf(c, false)),
            (L::F(a), true) => Nnf::U(self.intern(Nnf::True), self.nnf(a, true)),
            (L::F(a), false) => Nnf::R(self.intern(Nnf::False), self.nnf(a, false)),
            (L::G(a), true) => Nnf::R(self.intern(Nnf::False), self.nnf(a, true)),
            (L::G(a), false) => Nnf::U(self.intern(Nnf::True), self.nnf(a, false)),
            (L::U(a, c), true) => Nnf::U(self.nnf(a, true), self.nnf(c, true)),
            (L::U(a, c), false) => Nnf::R(self.nnf(a, false), self.nnf(c, false)),
            (L::W(a, c), p) => return self.nnf(&phi_w(a, c), p),
        };
        self.intern(f)
    }
}

fn phi_w(a: &LtlFormula, c: &LtlFormula) -> LtlFormula {
    LtlFormula::Or(
        Box::new(LtlFormula::G(Box::new(a.clone()))),
        Box::new(LtlFormula::U(Box::new(a.clone()), Box::new(c.clone()))),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbaNode {
    /// Atoms required present at the position read by this node.
    pub positive: Vec<String>,
    /// Atoms required absent.
    pub negative: Vec<String>,
    pub successors: Vec<usize>,
}

impl GbaNode {
    pub fn admits(&self, atoms: &BTreeSet<String>) -> bool {
        self.positive.iter().all(|a| atoms.contains(a))
            && self.negative.iter().all(|a| !atoms.contains(a))
    }
}

/// A run is a sequence of nodes starting in `initial`, each admitting the
/// position it reads and followed by one of its successors. It accepts if it
/// visits every acceptance set infinitely often.
#[derive(Clone, Debug)]
pub struct Gba {
    pub nodes: Vec<GbaNode>,
    pub initial: Vec<usize>,
    /// `acceptance[k][n]`: node `n` belongs to acceptance set `k`.
    pub acceptance: Vec<Vec<bool>>,
}

#[derive(Clone)]
struct Pending {
    incoming: BTreeSet<usize>,
    new: BTreeSet<usize>,
    old: BTreeSet<usize>,
    next: BTreeSet<usize>,
}

const INIT: usize = usize::MAX;

struct Builder<'a> {
    table: &'a Table,
    /// Finished nodes: incoming, old, next.
    done: Vec<(BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>)>,
    index: HashMap<(BTreeSet<usize>, BTreeSet<usize>), usize>,
}

impl Builder<'_> {
    fn expand(&mut self, mut node: Pending) {
        loop {
            let Some(eta) = node.new.pop_first() else {
                let key = (node.old, node.next);
                if let Some(&k) = self.index.get(&key) {
                    self.done[k].0.extend(node.incoming);
                    return;
                }
                let k = self.done.len();
                self.index.insert(key.clone(), k);
                self.done.push((node.incoming, key.0, key.1.clone()));
                node = Pending {
                    incoming: BTreeSet::from([k]),
                    new: key.1,
                    old: BTreeSet::new(),
                    next: BTreeSet::new(),
                };
                continue;
            };
            if node.old.contains(&eta) {
                continue;
            }
            match &self.table.nodes[eta] {
                Nnf::True => {}
                Nnf::False => return,
                Nnf::Lit(a, p) => {
                    let opposite = self.table.ids.get(&Nnf::Lit(a.clone(), !p));
                    if opposite.is_some_and(|o| node.old.contains(o)) {
                        return;
                    }
                    node.old.insert(eta);
                }
                &Nnf::And(a, b) => {
                    for x in [a, b] {
                        if !node.old.contains(&x) {
                            node.new.insert(x);
                        }
                    }
                    node.old.insert(eta);
                }
                &Nnf::Or(a, b) | &Nnf::U(a, b) | &Nnf::R(a, b) => {
                    let (new1, next1, new2): (&[usize], bool, &[usize]) = match &self.table.nodes[eta] {
                        Nnf::Or(..) => (&[a], false, &[b]),
                        Nnf::U(..) => (&[a], true, &[b]),
                        _ => (&[b], true, &[a, b]),
                    };
                    let mut left = node.clone();
                    for &x in new1 {
                        if !left.old.contains(&x) {
                            left.new.insert(x);
                        }
                    }
                    if next1 {
                        left.next.insert(eta);
                    }
                    left.old.insert(eta);
                    for &x in new2 {
                        if !node.old.contains(&x) {
                            node.new.insert(x);
                        }
                    }
                    node.old.insert(eta);
                    self.expand(left);
                }
            }
        }
    }
}

pub fn ltl_to_gba(phi: &LtlFormula) -> Gba {
    let mut table = Table::default();
    let root = table.nnf(phi, true);
    let mut b = Builder {
        table: &table,
        done: Vec::new(),
        index: HashMap::new(),
    };
    b.expand(Pending {
        incoming: BTreeSet::from([INIT]),
        new: BTreeSet::from([root]),
        old: BTreeSet::new(),
        next: BTreeSet::new(),
    });
    let done = b.done;
    let mut nodes: Vec<GbaNode> = done
        .iter()
        .map(|(_, old, _)| {
            let lits = |want: bool| {
                let mut v: Vec<String> = old
                    .iter()
                    .filter_map(|&f| match &table.nodes[f] {
                        Nnf::Lit(a, p) if *p == want => Some(a.clone()),
                        _ => None,
                    })
                    .collect();
                v.sort();
                v
            };
            GbaNode {
                positive: lits(true),
                negative: lits(false),
                successors: Vec::new(),
            }
        })
        .collect();
    let mut initial = Vec::new();
    for (k, (incoming, _, _)) in done.iter().enumerate() {
        for &from in incoming {
            if from == INIT {
                initial.push(k);
            } else {
                nodes[from].successors.push(k);
            }
        }
    }
    for n in &mut nodes {
        n.successors.sort_unstable();
        n.successors.dedup();
    }
    // Only untils reachable from the root occur in the table.
    let acceptance = table
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(u, f)| match *f {
            // `true` is never recorded in `old`.
            Nnf::U(_, target) => Some(
                done.iter()
                    .map(|(_, old, _)| {
                        !old.contains(&u) || table.nodes[target] == Nnf::True || old.contains(&target)
                    })
                    .collect(),
            ),
            _ => None,
        })
        .collect();
    Gba {
        nodes,
        initial,
        acceptance,
    }
}

impl Gba {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Whether every acceptance set meets `nodes`.
    pub fn fair(&self, nodes: impl Iterator<Item = usize> + Clone) -> bool {
        self.acceptance
            .iter()
            .all(|set| nodes.clone().any(|n| set[n]))
    }

    /// Decides acceptance of `prefix · cycle^ω` through the product with the
    /// word's own lasso shape.
    pub fn accepts_lasso(&self, prefix: &[BTreeSet<String>], cycle: &[BTreeSet<String>]) -> bool {
        assert!(!cycle.is_empty());
        let len = prefix.len() + cycle.len();
        let at = |i: usize| if i < prefix.len() { &prefix[i] } else { &cycle[i - prefix.len()] };
        let next = |i: usize| if i + 1 < len { i + 1 } else { prefix.len() };
        let g = self.nodes.len();
        let id = |pos: usize, node: usize| pos * g + node;
        let mut reachable = vec![false; len * g];
        let mut stack: Vec<usize> = self
            .initial
            .iter()
            .filter(|&&q| self.nodes[q].admits(at(0)))
            .map(|&q| id(0, q))
            .collect();
        for &s in &stack {
            reachable[s] = true;
        }
        let succ = |v: usize| {
            let (pos, q) = (v / g, v % g);
            let p2 = next(pos);
            self.nodes[q]
                .successors
                .iter()
                .filter(move |&&q2| self.nodes[q2].admits(at(p2)))
                .map(move |&q2| id(p2, q2))
                .collect::<Vec<_>>()
        };
        while let Some(v) = stack.pop() {
            for w in succ(v) {
                if !reachable[w] {
                    reachable[w] = true;
                    stack.push(w);
                }
            }
        }
        tarjan(len * g, Some(&reachable), succ)
            .iter()
            .any(|c| is_nontrivial(c, succ) && self.fair(c.iter().map(|&v| v % g)))
    }
}
