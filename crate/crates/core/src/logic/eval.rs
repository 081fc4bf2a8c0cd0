//! Direct evaluation of LTL on finite and ultimately periodic words.
//!
//! Both evaluators compute, for every subformula, its truth value at every
//! suffix position. A position's successor is the next element, except that
//! the last element of a finite word has none and the last element of a
//! lasso wraps to the first cycle element. `F`, `U` are least and `G` greatest
//! fixpoints over that successor function.

use std::collections::BTreeSet;

use super::LtlFormula;

/// A sequence of atom sets.
pub type Word = [BTreeSet<String>];

/// Truth of `φ` on the finite word `w` (from its first position).
///
/// # Panics
/// If `w` is empty.
pub fn eval_ltl_finite(w: &Word, phi: &LtlFormula) -> bool {
    eval_finite_refs(&w.iter().collect::<Vec<_>>(), phi)
}

pub(crate) fn eval_finite_refs(w: &[&BTreeSet<String>], phi: &LtlFormula) -> bool {
    assert!(!w.is_empty(), "finite paths have at least one position");
    eval(w, None, phi)
}

/// Truth of `φ` on `prefix · cycle^ω`.
///
/// # Panics
/// If `cycle` is empty.
pub fn eval_ltl_lasso(prefix: &Word, cycle: &Word, phi: &LtlFormula) -> bool {
    assert!(!cycle.is_empty(), "lasso cycles are nonempty");
    let refs: Vec<&BTreeSet<String>> = prefix.iter().chain(cycle).collect();
    eval_lasso_refs(&refs, prefix.len(), phi)
}

/// `w[..loop_start] · w[loop_start..]^ω`.
pub(crate) fn eval_lasso_refs(w: &[&BTreeSet<String>], loop_start: usize, phi: &LtlFormula) -> bool {
    assert!(loop_start < w.len(), "lasso cycles are nonempty");
    eval(w, Some(loop_start), phi)
}

/// Truth values of one subformula at every position.
trait Truth: Clone + PartialEq {
    fn filled(n: usize, v: bool) -> Self;
    fn get(&self, i: usize) -> bool;
    fn set(&mut self, i: usize, v: bool);
    fn not(self, n: usize) -> Self;
    fn and(self, other: &Self) -> Self;
    fn or(self, other: &Self) -> Self;
    /// Value at each position's successor; the last position's successor is
    /// `wrap`, or the constant `fill` when there is none.
    fn next(&self, n: usize, wrap: Option<usize>, fill: bool) -> Self;
}

/// Words of at most 64 positions, bit `i` for position `i`.
impl Truth for u64 {
    fn filled(n: usize, v: bool) -> Self {
        if v {
            u64::MAX >> (64 - n)
        } else {
            0
        }
    }
    fn get(&self, i: usize) -> bool {
        self >> i & 1 == 1
    }
    fn set(&mut self, i: usize, v: bool) {
        if v {
            *self |= 1 << i;
        } else {
            *self &= !(1 << i);
        }
    }
    fn not(self, n: usize) -> Self {
        !self & u64::filled(n, true)
    }
    fn and(self, other: &Self) -> Self {
        self & other
    }
    fn or(self, other: &Self) -> Self {
        self | other
    }
    fn next(&self, n: usize, wrap: Option<usize>, fill: bool) -> Self {
        let last = wrap.map_or(fill, |j| self.get(j));
        self >> 1 | (last as u64) << (n - 1)
    }
}

impl Truth for Vec<bool> {
    fn filled(n: usize, v: bool) -> Self {
        vec![v; n]
    }
    fn get(&self, i: usize) -> bool {
        self[i]
    }
    fn set(&mut self, i: usize, v: bool) {
        self[i] = v;
    }
    fn not(self, _: usize) -> Self {
        self.into_iter().map(|x| !x).collect()
    }
    fn and(self, other: &Self) -> Self {
        self.into_iter().zip(other).map(|(x, y)| x && *y).collect()
    }
    fn or(self, other: &Self) -> Self {
        self.into_iter().zip(other).map(|(x, y)| x || *y).collect()
    }
    fn next(&self, n: usize, wrap: Option<usize>, fill: bool) -> Self {
        let mut v = self[1..].to_vec();
        v.push(wrap.map_or(fill, |j| self[j]));
        debug_assert_eq!(v.len(), n);
        v
    }
}

/// `wrap` is the loop start of a lasso, `None` for a finite word.
fn eval(w: &[&BTreeSet<String>], wrap: Option<usize>, phi: &LtlFormula) -> bool {
    if w.len() <= 64 {
        Eval { w, wrap }.at::<u64>(phi).get(0)
    } else {
        Eval { w, wrap }.at::<Vec<bool>>(phi).get(0)
    }
}

struct Eval<'a, 'w> {
    w: &'a [&'w BTreeSet<String>],
    wrap: Option<usize>,
}

impl Eval<'_, '_> {
    fn at<T: Truth>(&self, phi: &LtlFormula) -> T {
        use LtlFormula::*;
        let n = self.w.len();
        match phi {
            True => T::filled(n, true),
            False => T::filled(n, false),
            Atom(a) => {
                let mut v = T::filled(n, false);
                for (i, s) in self.w.iter().enumerate() {
                    if s.contains(a) {
                        v.set(i, true);
                    }
                }
                v
            }
            Not(a) => self.at::<T>(a).not(n),
            And(a, b) => self.at::<T>(a).and(&self.at(b)),
            Or(a, b) => self.at::<T>(a).or(&self.at(b)),
            Implies(a, b) => self.at::<T>(a).not(n).or(&self.at(b)),
            F(a) => self.until(&T::filled(n, true), self.at(a)),
            U(a, b) => self.until(&self.at(a), self.at(b)),
            G(a) => self.globally(self.at(a)),
            W(a, b) => {
                let left: T = self.at(a);
                self.globally(left.clone()).or(&self.until(&left, self.at(b)))
            }
        }
    }

    /// Least fixpoint of `X = φ ∨ (ψ ∧ next X)`, iterated upwards from `φ`.
    fn until<T: Truth>(&self, psi: &T, phi: T) -> T {
        let n = self.w.len();
        let mut val = phi;
        loop {
            let step = val.next(n, self.wrap, false).and(psi).or(&val);
            if step == val {
                return val;
            }
            val = step;
        }
    }

    /// Greatest fixpoint of `X = φ ∧ next X`, iterated downwards from `φ`.
    /// A missing successor counts as true.
    fn globally<T: Truth>(&self, phi: T) -> T {
        let n = self.w.len();
        let mut val = phi;
        loop {
            let step = val.next(n, self.wrap, true).and(&val);
            if step == val {
                return val;
            }
            val = step;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_ltl;
    use super::*;

    fn word(sets: &[&[&str]]) -> Vec<BTreeSet<String>> {
        sets.iter()
            .map(|s| s.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    fn fin(sets: &[&[&str]], f: &str) -> bool {
        eval_ltl_finite(&word(sets), &parse_ltl(f).unwrap())
    }

    fn lasso(p: &[&[&str]], c: &[&[&str]], f: &str) -> bool {
        eval_ltl_lasso(&word(p), &word(c), &parse_ltl(f).unwrap())
    }

    #[test]
    fn finite_examples() {
        assert!(!fin(&[&[], &["r1"], &[]], "G(r1 -> F t1)"));
        assert!(fin(&[&[]], "G !p"));
        assert!(fin(&[&["a"], &["b"]], "a U b"));
        assert!(!fin(&[&["a"], &["a"]], "a U b"));
        assert!(fin(&[&["a"], &["a"]], "a W b"));
        assert!(fin(&[&["a"]], "G a & F a"));
    }

    #[test]
    fn lasso_examples() {
        assert!(lasso(&[], &[&["c"], &["p"]], "G(c -> F p)"));
        assert!(lasso(&[], &[&["c"], &["p"]], "G(p -> F c)"));
        assert!(!lasso(&[], &[&["A"], &[], &["C"], &[]], "F B"));
        assert!(lasso(&[], &[&["A"], &[], &["C"], &[]], "G F A & G F C"));
        assert!(lasso(&[&["x"]], &[&[]], "x & F G !x"));
        assert!(!lasso(&[&["x"]], &[&[]], "G F x"));
        assert!(lasso(&[&["a"], &["a"]], &[&["a"]], "a W b"));
        assert!(!lasso(&[&["a"], &["a"]], &[&["a"]], "a U b"));
        assert!(lasso(&[&["a"]], &[&["a"], &["b"]], "a U b"));
    }

    #[test]
    fn bit_and_vector_truths_agree() {
        let sets = word(&[&["a"], &[], &["b"], &["a", "b"], &[], &["a"], &["b"]]);
        let w: Vec<&BTreeSet<String>> = sets.iter().collect();
        for f in ["a U b", "G(a -> F b)", "F G a", "a W !b", "G F (a & b)", "!(F a) | G b"] {
            let phi = parse_ltl(f).unwrap();
            for wrap in [None, Some(0), Some(3), Some(6)] {
                let e = Eval { w: &w, wrap };
                let bits: u64 = e.at(&phi);
                let vec: Vec<bool> = e.at(&phi);
                assert_eq!((0..w.len()).map(|i| bits.get(i)).collect::<Vec<_>>(), vec, "{f} {wrap:?}");
            }
        }
    }

    #[test]
    fn long_words() {
        let prefix = word(&[&["a"], &[]]);
        let cycle = word(&[&["b"], &[], &["a"]]);
        let mut unrolled = prefix.clone();
        for _ in 0..30 {
            unrolled.extend(cycle.iter().cloned());
        }
        assert!(unrolled.len() > 64);
        for f in ["G(a -> F b)", "F G a", "a U b", "G F b & !F G b"] {
            let phi = parse_ltl(f).unwrap();
            assert_eq!(eval_ltl_lasso(&prefix, &cycle, &phi), eval_ltl_lasso(&unrolled, &cycle, &phi), "{f}");
        }
        let finite: Vec<BTreeSet<String>> = (0..100).map(|i| word(&[&[if i == 99 { "b" } else { "a" }]]).remove(0)).collect();
        assert!(eval_ltl_finite(&finite, &parse_ltl("a U b").unwrap()));
        assert!(!eval_ltl_finite(&finite[..99], &parse_ltl("F b").unwrap()));
    }
}
