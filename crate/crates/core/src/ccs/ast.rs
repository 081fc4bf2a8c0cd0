use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::lts::ActionLabel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CcsAction {
    Name(String),
    CoName(String),
    Tau,
}

impl CcsAction {
    pub fn complement(&self) -> Option<CcsAction> {
        match self {
            CcsAction::Name(a) => Some(CcsAction::CoName(a.clone())),
            CcsAction::CoName(a) => Some(CcsAction::Name(a.clone())),
            CcsAction::Tau => None,
        }
    }

    /// The underlying name of `a` or `ā`.
    pub fn channel(&self) -> Option<&str> {
        match self {
            CcsAction::Name(a) | CcsAction::CoName(a) => Some(a),
            CcsAction::Tau => None,
        }
    }

    /// Applies a relabelling given as `old -> new`; unmapped names are kept.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> CcsAction {
        let f = |a: &String| map.get(a).cloned().unwrap_or_else(|| a.clone());
        match self {
            CcsAction::Name(a) => CcsAction::Name(f(a)),
            CcsAction::CoName(a) => CcsAction::CoName(f(a)),
            CcsAction::Tau => CcsAction::Tau,
        }
    }

    pub fn to_label(&self) -> ActionLabel {
        match self {
            CcsAction::Tau => ActionLabel::Tau,
            other => ActionLabel::Visible(other.to_string()),
        }
    }
}

impl fmt::Display for CcsAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CcsAction::Name(a) => f.write_str(a),
            CcsAction::CoName(a) => write!(f, "'{a}"),
            CcsAction::Tau => f.write_str("tau"),
        }
    }
}

pub type Proc = Arc<Process>;

/// CCS expressions of the guarded-choice fragment. `Sum(vec![])` is `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    Sum(Vec<(CcsAction, Proc)>),
    Par(Proc, Proc),
    Restrict(Proc, BTreeSet<String>),
    /// Relabelling as a map `old -> new`.
    Relabel(Proc, BTreeMap<String, String>),
    Ident(String),
}

impl Process {
    pub fn nil() -> Proc {
        Arc::new(Process::Sum(Vec::new()))
    }

    pub fn prefix(action: CcsAction, body: Proc) -> Proc {
        Arc::new(Process::Sum(vec![(action, body)]))
    }

    pub fn par(left: Proc, right: Proc) -> Proc {
        Arc::new(Process::Par(left, right))
    }

    pub fn ident(name: impl Into<String>) -> Proc {
        Arc::new(Process::Ident(name.into()))
    }

    fn level(&self) -> u8 {
        match self {
            Process::Sum(s) if s.len() > 1 => 0,
            Process::Par(..) => 1,
            Process::Sum(s) if s.len() == 1 => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Process::Sum(s) if s.is_empty() => f.write_str("0"),
            Process::Sum(s) => {
                for (i, (a, p)) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{a}.")?;
                    p.write_at(f, 2)?;
                }
                Ok(())
            }
            Process::Par(l, r) => {
                l.write_at(f, 2)?;
                f.write_str("|")?;
                r.write_at(f, 2)
            }
            Process::Restrict(p, names) => {
                p.write_at(f, 3)?;
                f.write_str("\\{")?;
                for (i, n) in names.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(n)?;
                }
                f.write_str("}")
            }
            Process::Relabel(p, map) => {
                p.write_at(f, 3)?;
                f.write_str("[")?;
                for (i, (old, new)) in map.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{new}/{old}")?;
                }
                f.write_str("]")
            }
            Process::Ident(x) => f.write_str(x),
        }
    }

    pub(crate) fn idents<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Process::Sum(s) => s.iter().for_each(|(_, p)| p.idents(out)),
            Process::Par(l, r) => {
                l.idents(out);
                r.idents(out);
            }
            Process::Restrict(p, _) | Process::Relabel(p, _) => p.idents(out),
            Process::Ident(x) => {
                out.insert(x);
            }
        }
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Defining equations `X = P`, in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Definitions {
    bodies: BTreeMap<String, Proc>,
    order: Vec<String>,
}

impl Definitions {
    pub fn get(&self, name: &str) -> Option<&Proc> {
        self.bodies.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    /// Returns `false` if `name` was already defined.
    pub fn insert(&mut self, name: String, body: Proc) -> bool {
        if self.bodies.contains_key(&name) {
            return false;
        }
        self.order.push(name.clone());
        self.bodies.insert(name, body);
        true
    }
}

/// Name of the definition that designates the process to check.
pub const MAIN: &str = "main";
