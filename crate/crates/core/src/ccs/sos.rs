use std::collections::BTreeSet;
use std::sync::Arc;

use super::ast::{CcsAction, Definitions, Proc, Process};
use super::CcsError;

/// One derivable transition `P --α,C--> Q`. Components are strings over
/// `{L, R}`; the empty string is the component of a top-level sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CcsStep {
    pub action: CcsAction,
    pub components: BTreeSet<String>,
    pub target: Proc,
}

/// All transitions of `p`, in rule order: summands, then for `P|Q` the moves
/// of `P`, the synchronisations, the moves of `Q`. Duplicate derivations of
/// the same transition are reported once.
pub fn sos_step(p: &Proc, defs: &Definitions) -> Result<Vec<CcsStep>, CcsError> {
    let mut unfolding = Vec::new();
    let steps = derive(p, defs, &mut unfolding)?;
    let mut seen = BTreeSet::new();
    Ok(steps
        .into_iter()
        .filter(|s| seen.insert(s.clone()))
        .collect())
}

fn derive<'a>(
    p: &'a Proc,
    defs: &'a Definitions,
    unfolding: &mut Vec<&'a str>,
) -> Result<Vec<CcsStep>, CcsError> {
    match &**p {
        Process::Sum(summands) => Ok(summands
            .iter()
            .map(|(a, q)| CcsStep {
                action: a.clone(),
                components: BTreeSet::from([String::new()]),
                target: q.clone(),
            })
            .collect()),
        Process::Par(l, r) => {
            let left = derive(l, defs, unfolding)?;
            let right = derive(r, defs, unfolding)?;
            let mut out = Vec::with_capacity(left.len() + right.len());
            for s in &left {
                out.push(CcsStep {
                    action: s.action.clone(),
                    components: prefixed('L', &s.components),
                    target: Process::par(s.target.clone(), r.clone()),
                });
            }
            for s in &left {
                let Some(co) = s.action.complement() else {
                    continue;
                };
                for u in right.iter().filter(|u| u.action == co) {
                    let mut components = prefixed('L', &s.components);
                    components.extend(prefixed('R', &u.components));
                    out.push(CcsStep {
                        action: CcsAction::Tau,
                        components,
                        target: Process::par(s.target.clone(), u.target.clone()),
                    });
                }
            }
            for u in right {
                out.push(CcsStep {
                    action: u.action,
                    components: prefixed('R', &u.components),
                    target: Process::par(l.clone(), u.target),
                });
            }
            Ok(out)
        }
        Process::Restrict(body, names) => Ok(derive(body, defs, unfolding)?
            .into_iter()
            .filter(|s| s.action.channel().is_none_or(|c| !names.contains(c)))
            .map(|s| CcsStep {
                target: Arc::new(Process::Restrict(s.target, names.clone())),
                ..s
            })
            .collect()),
        Process::Relabel(body, map) => Ok(derive(body, defs, unfolding)?
            .into_iter()
            .map(|s| CcsStep {
                action: s.action.relabel(map),
                components: s.components,
                target: Arc::new(Process::Relabel(s.target, map.clone())),
            })
            .collect()),
        Process::Ident(x) => {
            if unfolding.contains(&x.as_str()) {
                return Err(CcsError::UnguardedRecursion(x.clone()));
            }
            let body = defs
                .get(x)
                .ok_or_else(|| CcsError::UndefinedIdentifier(x.clone()))?;
            unfolding.push(x);
            let steps = derive(body, defs, unfolding);
            unfolding.pop();
            steps
        }
    }
}

fn prefixed(side: char, components: &BTreeSet<String>) -> BTreeSet<String> {
    components
        .iter()
        .map(|c| {
            let mut s = String::with_capacity(c.len() + 1);
            s.push(side);
            s.push_str(c);
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::parser::{parse_ccs, parse_process};

    fn render(steps: &[CcsStep]) -> Vec<(String, Vec<String>, String)> {
        steps
            .iter()
            .map(|s| {
                (
                    s.action.to_string(),
                    s.components.iter().cloned().collect(),
                    s.target.to_string(),
                )
            })
            .collect()
    }

    #[test]
    fn five_transitions_in_rule_order() {
        let spec = parse_ccs("X = a.X; main = (X | 'a.0) | 'a.b.0;").unwrap();
        let p = spec.main.clone().unwrap();
        let steps = sos_step(&p, &spec.definitions).unwrap();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            render(&steps),
            vec![
                ("a".into(), s(&["LL"]), p.to_string()),
                ("tau".into(), s(&["LL", "LR"]), "(X|0)|'a.b.0".into()),
                ("'a".into(), s(&["LR"]), "(X|0)|'a.b.0".into()),
                ("tau".into(), s(&["LL", "R"]), "(X|'a.0)|b.0".into()),
                ("'a".into(), s(&["R"]), "(X|'a.0)|b.0".into()),
            ]
        );
        assert_eq!(steps[0].target, p);
    }

    #[test]
    fn nil_has_no_moves() {
        let defs = Definitions::default();
        assert!(sos_step(&Process::nil(), &defs).unwrap().is_empty());
    }

    #[test]
    fn handshake() {
        let p = parse_process("a.0 | 'a.0").unwrap();
        let steps = sos_step(&p, &Definitions::default()).unwrap();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            render(&steps),
            vec![
                ("a".into(), s(&["L"]), "0|'a.0".into()),
                ("tau".into(), s(&["L", "R"]), "0|0".into()),
                ("'a".into(), s(&["R"]), "a.0|0".into()),
            ]
        );
    }

    #[test]
    fn restriction_and_relabelling() {
        let p = parse_process("(a.0 | 'a.0 | b.0)\\{a}").unwrap();
        let steps = sos_step(&p, &Definitions::default()).unwrap();
        let actions: Vec<String> = steps.iter().map(|s| s.action.to_string()).collect();
        assert_eq!(actions, vec!["tau", "b"]);

        let p = parse_process("(a.0 + 'a.0 + tau.0)[c/a]").unwrap();
        let steps = sos_step(&p, &Definitions::default()).unwrap();
        let actions: Vec<String> = steps.iter().map(|s| s.action.to_string()).collect();
        assert_eq!(actions, vec!["c", "'c", "tau"]);
        assert!(steps.iter().all(|s| s.components == BTreeSet::from([String::new()])));
    }

    #[test]
    fn duplicate_derivations_collapse() {
        let p = parse_process("a.0 + a.0").unwrap();
        assert_eq!(sos_step(&p, &Definitions::default()).unwrap().len(), 1);
    }

    #[test]
    fn unguarded_recursion_is_reported() {
        let spec = parse_ccs("X = X | a.0; main = X;").unwrap();
        assert_eq!(
            sos_step(&spec.main.unwrap(), &spec.definitions),
            Err(CcsError::UnguardedRecursion("X".into()))
        );
        // Guarded recursion through the same identifier twice in parallel is fine.
        let spec = parse_ccs("X = a.X; main = X | X;").unwrap();
        assert_eq!(sos_step(&spec.main.unwrap(), &spec.definitions).unwrap().len(), 2);
    }
}
