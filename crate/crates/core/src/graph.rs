//! Strongly connected components (iterative Tarjan) over adjacency lists.

/// SCCs of the subgraph induced by `alive` (all nodes when `None`), listed in
/// reverse topological order. Each component lists its nodes.
pub fn tarjan<F, I>(n: usize, alive: Option<&[bool]>, mut succ: F) -> Vec<Vec<usize>>
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    const NONE: usize = usize::MAX;
    let live = |v: usize| alive.is_none_or(|a| a[v]);
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    // Call stack of (node, its successor list, next position in that list).
    let mut calls: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != NONE || !live(root) {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        let s: Vec<usize> = succ(root).into_iter().filter(|&w| live(w)).collect();
        calls.push((root, s, 0));
        while let Some(frame) = calls.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    let s: Vec<usize> = succ(w).into_iter().filter(|&x| live(x)).collect();
                    calls.push((w, s, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(parent) = calls.last() {
                let p = parent.0;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

/// Whether a component contains a cycle: more than one node, or a self-loop.
pub fn is_nontrivial<F, I>(comp: &[usize], mut succ: F) -> bool
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    comp.len() > 1 || succ(comp[0]).into_iter().any(|w| w == comp[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        let adj = [vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let mut sccs = tarjan(adj.len(), None, |v| adj[v].clone());
        for c in &mut sccs {
            c.sort();
        }
        assert_eq!(sccs, vec![vec![3], vec![0, 1, 2], vec![4]]);
        assert!(is_nontrivial(&[3], |v| adj[v].clone()));
        assert!(!is_nontrivial(&[4], |v| adj[v].clone()));
    }

    #[test]
    fn restricted() {
        let adj = [vec![1], vec![2], vec![0]];
        let alive = [true, false, true];
        let sccs = tarjan(3, Some(&alive), |v| adj[v].clone());
        assert_eq!(sccs.len(), 2);
        assert!(sccs.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let sccs = tarjan(n, None, |v| if v + 1 < n { vec![v + 1] } else { vec![0] });
        assert_eq!(sccs.len(), 1);
    }
}
